# pprtopk/services/disambiguation_service.py
"""
Разрешение неоднозначности имен: страницы с одинаковым именем группируются
по разным людям.

1. Связанные страницы каждой персональной страницы: MC End Point PPR
   с переходами только на другие хосты.
2. Структурная кластеризация: страницы с общими связанными страницами объединяются.
3. Профили: tf персональной страницы, усиленный tf связанных страниц,
   топ PROFILE_SIZE терминов, L2-нормировка.
4. HAC (average linkage, косинус) поверх структурных кластеров.
"""
import logging
import math
from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np
from scipy import sparse

from pprtopk.config import (
    DISAMBIG_DAMPING,
    DISAMBIG_MIN_OVERLAP,
    DISAMBIG_RELATED_K,
    DISAMBIG_RUNS,
    DISAMBIG_THRESHOLD,
    PROFILE_SIZE,
)
from pprtopk.exceptions import InvalidParameterError
from pprtopk.graph import Graph
from pprtopk.corpus_loader import build_corpus_graph
from pprtopk.mc_engine import derive_seed, run_end_point
from pprtopk.models import (
    Clustering,
    CorpusPage,
    DanglingPolicy,
    DisambiguationResult,
    EdgeFilter,
    MergeProvenance,
    MergeRecord,
    PageProfile,
    ReportKind,
    TopKReport,
    WalkConfig,
)
from pprtopk.utils.get_env import resolve_threads
from pprtopk.utils.union_find import UnionFind

logger = logging.getLogger(__name__)

# допуск сравнения сходств (равенство и порог)
_SIMILARITY_EPS = 1e-12
CLUSTER_TERMS_SIZE = 10


def related_pages(g: Graph,
                  page: int,
                  k: int = DISAMBIG_RELATED_K,
                  c: float = DISAMBIG_DAMPING,
                  m: int = DISAMBIG_RUNS,
                  rng_seed: int = 0,
                  threads: Optional[int] = None,
                  dangling_policy: DanglingPolicy = DanglingPolicy.SELF_LOOP) -> TopKReport:
    """
    Корзина top-k по MC End Point из page с переходами только между хостами.
    Сама страница в результат не входит; если посещено меньше k страниц,
    корзина короче и помечена truncated.
    """
    cfg = WalkConfig(damping=c, seed_node=page, dangling_policy=dangling_policy,
                     edge_filter=EdgeFilter.CROSS_HOST_ONLY)
    outcome = run_end_point(g, cfg, m, rng_seed, threads)
    ranked = sorted(
        ((node, count) for node, count in outcome.counts.items() if node != page),
        key=lambda item: (-item[1], item[0]),
    )[:k]
    truncated = len(ranked) < k
    if truncated:
        logger.debug("[related_pages] page %d: only %d related pages found (k=%d)", page, len(ranked), k)
    return TopKReport(
        ordered_ids=[node for node, _ in ranked],
        scores=[count / m for _, count in ranked],
        kind=ReportKind.BASKET,
        k=k,
        truncated=truncated,
    )


def structure_cluster(related: Mapping[int, Iterable[int]], min_overlap: int = DISAMBIG_MIN_OVERLAP) -> Clustering:
    """Объединение страниц, у которых не менее min_overlap общих связанных страниц"""
    if min_overlap < 1:
        raise InvalidParameterError(f"min_overlap must be >= 1, got {min_overlap}")
    pages = sorted(related)
    related_sets: Dict[int, Set[int]] = {page: set(related[page]) for page in pages}

    sharing: Dict[int, List[int]] = defaultdict(list)
    for page in pages:
        for target in sorted(related_sets[page]):
            sharing[target].append(page)

    overlap: Counter = Counter()
    for target in sorted(sharing):
        for a, b in combinations(sharing[target], 2):
            overlap[(a, b)] += 1

    union_find = UnionFind(pages)
    merges = []
    for (a, b) in sorted(overlap):
        if overlap[(a, b)] >= min_overlap and union_find.union(a, b):
            merges.append(MergeRecord(left=a, right=b, provenance=MergeProvenance.STRUCTURE,
                                      similarity=float(overlap[(a, b)])))
    clustering = Clustering(clusters=union_find.groups(), merges=merges)
    logger.debug("[structure_cluster] -> %d pages, %d clusters", len(pages), len(clustering.clusters))
    return clustering


def term_frequencies(tokens: Sequence[str]) -> Dict[str, float]:
    """tf: число вхождений, деленное на длину страницы"""
    if not tokens:
        return {}
    total = len(tokens)
    return {term: count / total for term, count in Counter(tokens).items()}


def reweighted_term_scores(person: CorpusPage, related: Sequence[CorpusPage]) -> Dict[str, float]:
    """
    tf'(w) = tf(w) + tf(w) * sum_r tf(r, w): каждая связанная страница
    голосует за термины персональной страницы. Термины, которых нет на
    персональной странице, не появляются.
    """
    tf = term_frequencies(person.text_tokens)
    related_tfs = [term_frequencies(page.text_tokens) for page in sorted(related, key=lambda p: p.id)]
    return {
        term: value + value * math.fsum(other.get(term, 0.0) for other in related_tfs)
        for term, value in tf.items()
    }


def reweight_profile(person: CorpusPage, related: Sequence[CorpusPage],
                     profile_size: int = PROFILE_SIZE) -> PageProfile:
    """Топ profile_size терминов по tf' (равные веса - по алфавиту), L2-нормировка"""
    scores = reweighted_term_scores(person, related)
    if not scores:
        logger.warning("[reweight_profile] page %d has no terms, empty profile", person.id)
        return PageProfile(page=person.id, terms=[])
    top = sorted(scores.items(), key=lambda item: (-item[1], item[0]))[:profile_size]
    norm = math.sqrt(math.fsum(weight * weight for _, weight in top))
    return PageProfile(page=person.id, terms=[(term, weight / norm) for term, weight in top])


def cosine_similarity_matrix(pages: Sequence[int], profiles: Mapping[int, PageProfile]) -> np.ndarray:
    """Попарные косинусы профилей (профили уже нормированы; пустой профиль дает 0)"""
    vocabulary: Dict[str, int] = {}
    rows, cols, data = [], [], []
    for row, page in enumerate(pages):
        profile = profiles.get(page)
        if profile is None:
            continue
        for term, weight in profile.terms:
            rows.append(row)
            cols.append(vocabulary.setdefault(term, len(vocabulary)))
            data.append(weight)
    matrix = sparse.csr_matrix((data, (rows, cols)), shape=(len(pages), max(len(vocabulary), 1)))
    return np.clip((matrix @ matrix.T).toarray(), 0.0, 1.0)


def content_cluster(base: Clustering, profiles: Mapping[int, PageProfile],
                    threshold: float = DISAMBIG_THRESHOLD) -> Clustering:
    """
    Агломеративная кластеризация (average linkage, косинус), начиная со
    структурных кластеров: сливается пара с максимальным средним сходством,
    пока оно не ниже threshold. При равенстве - пара с наименьшими id.
    """
    if not 0.0 <= threshold <= 1.0:
        raise InvalidParameterError(f"threshold must be in [0, 1], got {threshold}")
    clusters = [sorted(cluster) for cluster in base.clusters]
    merges = list(base.merges)
    if len(clusters) < 2:
        return Clustering(clusters=sorted(clusters), merges=merges)

    pages = sorted(page for cluster in clusters for page in cluster)
    position = {page: index for index, page in enumerate(pages)}
    similarity = cosine_similarity_matrix(pages, profiles)

    count = len(clusters)
    sizes = np.array([len(cluster) for cluster in clusters], dtype=np.float64)
    linkage = np.full((count, count), -np.inf)
    for a in range(count):
        rows = [position[p] for p in clusters[a]]
        for b in range(a + 1, count):
            cols = [position[p] for p in clusters[b]]
            linkage[a, b] = linkage[b, a] = similarity[np.ix_(rows, cols)].mean()
    active = [True] * count

    while sum(active) > 1:
        best = linkage.max()
        if best < threshold - _SIMILARITY_EPS:
            break
        candidates = np.argwhere(linkage >= best - _SIMILARITY_EPS)
        a, b = min(
            ((int(i), int(j)) for i, j in candidates if i < j),
            key=lambda pair: tuple(sorted((clusters[pair[0]][0], clusters[pair[1]][0]))),
        )
        if clusters[b][0] < clusters[a][0]:
            a, b = b, a
        merges.append(MergeRecord(left=clusters[a][0], right=clusters[b][0],
                                  provenance=MergeProvenance.CONTENT, similarity=float(linkage[a, b])))
        # Lance-Williams для average linkage
        merged_row = (sizes[a] * linkage[a] + sizes[b] * linkage[b]) / (sizes[a] + sizes[b])
        linkage[a, :] = merged_row
        linkage[:, a] = merged_row
        linkage[a, a] = -np.inf
        linkage[b, :] = -np.inf
        linkage[:, b] = -np.inf
        sizes[a] += sizes[b]
        clusters[a] = sorted(clusters[a] + clusters[b])
        clusters[b] = []
        active[b] = False

    final = sorted(cluster for cluster, alive in zip(clusters, active) if alive)
    logger.debug("[content_cluster] -> %d clusters (from %d)", len(final), count)
    return Clustering(clusters=final, merges=merges)


def cluster_top_terms(cluster: Sequence[int], profiles: Mapping[int, PageProfile],
                      size: int = CLUSTER_TERMS_SIZE) -> List[Tuple[str, float]]:
    """Суммарные веса терминов профилей кластера, топ size"""
    weights: Dict[str, List[float]] = defaultdict(list)
    for page in cluster:
        profile = profiles.get(page)
        if profile:
            for term, weight in profile.terms:
                weights[term].append(weight)
    totals = {term: math.fsum(values) for term, values in weights.items()}
    return [(term, value) for term, value in sorted(totals.items(), key=lambda item: (-item[1], item[0]))[:size]]


class DisambiguationService:
    """Сервис кластеризации персональных страниц корпуса"""

    def __init__(self,
                 related_k: int = DISAMBIG_RELATED_K,
                 damping: float = DISAMBIG_DAMPING,
                 runs_m: int = DISAMBIG_RUNS,
                 threshold: float = DISAMBIG_THRESHOLD,
                 min_overlap: int = DISAMBIG_MIN_OVERLAP,
                 rng_seed: int = 0,
                 threads: Optional[int] = None,
                 use_content: bool = True):
        """
        Args:
            related_k: Размер корзины связанных страниц
            damping: Параметр c блуждания
            runs_m: Число блужданий на страницу
            threshold: Порог HAC
            min_overlap: Минимум общих связанных страниц для структурного слияния
            rng_seed: Базовое зерно; зерно страницы выводится из (rng_seed, id)
            threads: Ограничение параллелизма
            use_content: False - только структурная кластеризация
        """
        if related_k < 1:
            raise InvalidParameterError(f"related_k must be >= 1, got {related_k}")
        self.related_k = related_k
        self.damping = damping
        self.runs_m = runs_m
        self.threshold = threshold
        self.min_overlap = min_overlap
        self.rng_seed = rng_seed
        self.threads = threads
        self.use_content = use_content

    def find_related(self, g: Graph, persons: Sequence[int]) -> Dict[int, TopKReport]:
        def _related(page: int) -> TopKReport:
            return related_pages(g, page, self.related_k, self.damping, self.runs_m,
                                 derive_seed(self.rng_seed, page), threads=1)

        workers = min(resolve_threads(self.threads), max(len(persons), 1))
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return dict(zip(persons, executor.map(_related, persons)))

    def run(self, pages: List[CorpusPage]) -> DisambiguationResult:
        persons = sorted(page.id for page in pages if page.is_person_page)
        logger.info("[DisambiguationService.run] <- %d pages, %d person pages, k=%d, c=%s, m=%d",
                    len(pages), len(persons), self.related_k, self.damping, self.runs_m)
        if not persons:
            logger.warning("[DisambiguationService.run] no person pages in corpus")
            return DisambiguationResult(clusters=[])

        g = build_corpus_graph(pages)
        related = self.find_related(g, persons)
        related_ids = {page: report.ordered_ids for page, report in related.items()}
        clustering = structure_cluster(related_ids, self.min_overlap)

        page_by_id = {page.id: page for page in pages}
        profiles = {
            person: reweight_profile(page_by_id[person], [page_by_id[r] for r in related_ids[person] if r in page_by_id])
            for person in persons
        }
        if self.use_content:
            clustering = content_cluster(clustering, profiles, self.threshold)

        result = DisambiguationResult(
            clusters=clustering.clusters,
            cluster_terms=[cluster_top_terms(cluster, profiles) for cluster in clustering.clusters],
            related=related_ids,
            merges=clustering.merges,
        )
        logger.info("[DisambiguationService.run] -> %d clusters", len(result.clusters))
        return result
