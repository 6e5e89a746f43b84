# pprtopk/graph.py
"""
Ориентированный граф в формате CSR и его эффективная матрица переходов.

Граф хранится неизменяемым: indptr/indices (соседи каждого узла отсортированы,
дубликаты ребер удалены), опционально host_of (идентификатор хоста узла) и
метки узлов. Эффективная смежность (после фильтра ребер и политики висячих
узлов) вычисляется лениво и кешируется на графе.
"""
import hashlib
import logging
import re
import threading
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from pprtopk.exceptions import GraphFormatError, InvalidParameterError
from pprtopk.models import DanglingPolicy, EdgeFilter, WalkConfig

logger = logging.getLogger(__name__)

# Директива в комментарии файла ребер: задает число узлов (сохраняет изолированные хвостовые узлы)
_NODES_DIRECTIVE = re.compile(r"^#\s*nodes\s*[:=]?\s*(\d+)\s*$", re.IGNORECASE)


class Graph:
    """Неизменяемый ориентированный граф на узлах 0..n-1"""

    def __init__(self,
                 indptr: np.ndarray,
                 indices: np.ndarray,
                 host_of: Optional[np.ndarray] = None,
                 host_names: Optional[List[str]] = None,
                 labels: Optional[Dict[int, str]] = None):
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.node_count = len(self.indptr) - 1
        self.host_of = None if host_of is None else np.asarray(host_of, dtype=np.int64)
        self.host_names = host_names or []
        self.labels = dict(labels or {})
        self._fingerprint: Optional[str] = None
        self._effective_cache: Dict[Tuple, Tuple[np.ndarray, np.ndarray]] = {}
        self._lock = threading.RLock()

    @property
    def edge_count(self) -> int:
        return int(self.indices.size)

    @property
    def has_hosts(self) -> bool:
        return self.host_of is not None

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def out_edges(self, v: int) -> List[int]:
        check_node(self, v)
        return self.indices[self.indptr[v]:self.indptr[v + 1]].tolist()

    def edges(self) -> Iterable[Tuple[int, int]]:
        src = np.repeat(np.arange(self.node_count, dtype=np.int64), self.out_degrees())
        return zip(src.tolist(), self.indices.tolist())

    def label(self, v: int) -> str:
        return self.labels.get(v, str(v))

    @property
    def fingerprint(self) -> str:
        """SHA1 структуры графа (ребра + хосты): ключ кешей решателя и Monte Carlo"""
        if self._fingerprint is None:
            digest = hashlib.sha1()
            digest.update(np.int64(self.node_count).tobytes())
            digest.update(self.indptr.tobytes())
            digest.update(self.indices.tobytes())
            if self.host_of is not None:
                digest.update(b"hosts")
                digest.update(self.host_of.tobytes())
            self._fingerprint = digest.hexdigest()
        return self._fingerprint

    def with_hosts(self, host_of: np.ndarray, host_names: List[str]) -> "Graph":
        return Graph(self.indptr, self.indices, host_of, host_names, self.labels)

    def with_labels(self, labels: Dict[int, str]) -> "Graph":
        return Graph(self.indptr, self.indices, self.host_of, self.host_names, labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.fingerprint == other.fingerprint

    def __hash__(self) -> int:
        return hash(self.fingerprint)

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, edges={self.edge_count}, hosts={self.has_hosts})"


def check_node(g: Graph, v: int) -> None:
    if not 0 <= v < g.node_count:
        raise InvalidParameterError(f"node {v} is out of range [0, {g.node_count})")


def validate_config(g: Graph, cfg: WalkConfig) -> None:
    """Проверка согласованности WalkConfig с графом"""
    if not 0 <= cfg.seed_node < g.node_count:
        raise InvalidParameterError(f"seed node {cfg.seed_node} is out of range [0, {g.node_count})")
    if cfg.edge_filter == EdgeFilter.CROSS_HOST_ONLY and not g.has_hosts:
        raise InvalidParameterError("edge_filter=cross_host_only requires host data for the graph")


def graph_from_edges(n: int,
                     edges: Iterable[Tuple[int, int]],
                     host_of: Optional[Sequence[int]] = None,
                     host_names: Optional[List[str]] = None) -> Graph:
    """
    Построение графа из пар (src, dst): ребра сортируются, дубликаты удаляются.
    """
    if n < 1:
        raise InvalidParameterError("graph must have at least one node")
    pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
        raise InvalidParameterError(f"edge endpoint out of range [0, {n})")
    keys = np.unique(pairs[:, 0] * n + pairs[:, 1])
    src, dst = keys // n, keys % n
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    if host_of is not None and len(host_of) != n:
        raise InvalidParameterError(f"host_of has {len(host_of)} entries, expected {n}")
    return Graph(indptr, dst, None if host_of is None else np.asarray(host_of), host_names)


def load_edge_list(path: str, n_hint: Optional[int] = None) -> Graph:
    """
    Загрузка графа из текстового файла "src<TAB>dst" (допускается любой пробельный разделитель).

    Пустые строки и строки-комментарии "#" пропускаются; комментарий "# nodes: N"
    задает минимальное число узлов. n = max(n_hint, N, max id + 1).
    Файл без ребер и без директивы - ошибка, даже если задан n_hint.
    """
    logger.info("[load_edge_list] <- path='%s', n_hint=%s", path, n_hint)
    edges: List[Tuple[int, int]] = []
    declared_n = 0
    with open(path, "r", encoding="utf-8") as f:
        for line_number, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                match = _NODES_DIRECTIVE.match(line)
                if match:
                    declared_n = max(declared_n, int(match.group(1)))
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphFormatError(f"expected 2 fields, got {len(parts)}: '{line[:80]}'", line_number)
            try:
                src, dst = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(f"non-integer node id: '{line[:80]}'", line_number)
            if src < 0 or dst < 0:
                raise GraphFormatError(f"negative node id: '{line[:80]}'", line_number)
            edges.append((src, dst))

    # n_hint не спасает пустой файл: узлы задаются только ребрами или директивой
    if not edges and not declared_n:
        raise GraphFormatError(f"no edges and no node count in '{path}'")
    max_id = max((max(e) for e in edges), default=-1)
    n = max(max_id + 1, declared_n, n_hint or 0)
    g = graph_from_edges(n, edges)
    logger.info("[load_edge_list] -> %s", g)
    return g


def write_edge_list(g: Graph, path: str) -> None:
    """Запись графа; повторная загрузка дает тот же граф (включая изолированные узлы)"""
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"# nodes: {g.node_count}\n")
        for src, dst in g.edges():
            f.write(f"{src}\t{dst}\n")
    logger.debug("[write_edge_list] %d edges written to '%s'", g.edge_count, path)


def load_host_file(path: str, g: Graph) -> Graph:
    """
    Загрузка соответствия "node_id<TAB>host". Узлы без хоста получают
    собственный уникальный хост.
    """
    logger.info("[load_host_file] <- path='%s'", path)
    assigned: Dict[int, str] = {}
    with open(path, "r", encoding="utf-8") as f:
        for line_number, raw in enumerate(f, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t", 1) if "\t" in line else line.split(None, 1)
            if len(parts) != 2 or not parts[1].strip():
                raise GraphFormatError(f"expected 'node<TAB>host': '{line[:80]}'", line_number)
            try:
                node = int(parts[0])
            except ValueError:
                raise GraphFormatError(f"non-integer node id: '{parts[0][:40]}'", line_number)
            if not 0 <= node < g.node_count:
                raise GraphFormatError(f"node {node} is out of range [0, {g.node_count})", line_number)
            assigned[node] = parts[1].strip()

    host_ids: Dict[str, int] = {}
    host_of = np.empty(g.node_count, dtype=np.int64)
    missing = 0
    for v in range(g.node_count):
        name = assigned.get(v)
        if name is None:
            name = f"<unknown:{v}>"
            missing += 1
        host_of[v] = host_ids.setdefault(name, len(host_ids))
    if missing:
        logger.warning("[load_host_file] %d nodes have no host, each gets its own", missing)
    host_names = sorted(host_ids, key=host_ids.get)
    logger.info("[load_host_file] -> %d hosts", len(host_names))
    return g.with_hosts(host_of, host_names)


def load_label_file(path: str) -> Dict[int, str]:
    """Метки узлов "node_id<TAB>label" (используются только при выводе)"""
    labels: Dict[int, str] = {}
    with open(path, "r", encoding="utf-8") as f:
        for line_number, raw in enumerate(f, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t", 1)
            try:
                labels[int(parts[0])] = parts[1] if len(parts) > 1 else ""
            except ValueError:
                raise GraphFormatError(f"non-integer node id: '{parts[0][:40]}'", line_number)
    return labels


def effective_adjacency(g: Graph, cfg: WalkConfig) -> Tuple[np.ndarray, np.ndarray]:
    """
    CSR (indptr, indices) эффективного графа: после фильтра ребер у каждого
    узла есть хотя бы один выход (висячий узел получает петлю или ребро в seed).
    """
    validate_config(g, cfg)
    fill_seed = cfg.dangling_policy == DanglingPolicy.JUMP_TO_SEED
    key = (cfg.dangling_policy, cfg.edge_filter, cfg.seed_node if fill_seed else None)
    with g._lock:
        cached = g._effective_cache.get(key)
    if cached is not None:
        return cached

    n = g.node_count
    src = np.repeat(np.arange(n, dtype=np.int64), g.out_degrees())
    dst = g.indices
    if cfg.edge_filter == EdgeFilter.CROSS_HOST_ONLY:
        keep = g.host_of[dst] != g.host_of[src]
        src, dst = src[keep], dst[keep]

    counts = np.bincount(src, minlength=n)
    dangling = np.flatnonzero(counts == 0)
    fill = np.full(dangling.size, cfg.seed_node, dtype=np.int64) if fill_seed else dangling
    all_src = np.concatenate([src, dangling])
    all_dst = np.concatenate([dst, fill])
    order = np.argsort(all_src, kind="stable")

    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.maximum(counts, 1), out=indptr[1:])
    indices = all_dst[order]
    if dangling.size:
        logger.debug("[effective_adjacency] %d dangling nodes, policy=%s", dangling.size, cfg.dangling_policy.value)

    with g._lock:
        g._effective_cache[key] = (indptr, indices)
    return indptr, indices


def effective_out_neighbors(g: Graph, v: int, cfg: WalkConfig) -> List[int]:
    check_node(g, v)
    indptr, indices = effective_adjacency(g, cfg)
    return indices[indptr[v]:indptr[v + 1]].tolist()


def transition_row(g: Graph, v: int, cfg: WalkConfig) -> Dict[int, float]:
    """Строка P[v, .]: равномерное распределение по эффективным соседям"""
    neighbors = effective_out_neighbors(g, v, cfg)
    weight = 1.0 / len(neighbors)
    return {u: weight for u in neighbors}


def transition_matrix(g: Graph, cfg: WalkConfig) -> sparse.csr_matrix:
    """Стохастическая по строкам матрица P (scipy CSR)"""
    indptr, indices = effective_adjacency(g, cfg)
    degrees = np.diff(indptr)
    data = np.repeat(1.0 / degrees, degrees)
    n = g.node_count
    return sparse.csr_matrix((data, indices, indptr), shape=(n, n))
