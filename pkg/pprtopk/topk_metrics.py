# pprtopk/topk_metrics.py
"""
Сравнение top-k корзин и списков, ослабление (relaxation-l) и кривые сходимости.
"""
import csv
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional, Sequence

import numpy as np

from pprtopk.exceptions import InvalidParameterError
from pprtopk.exact_solver import solve_ppr, top_k
from pprtopk.graph import Graph
from pprtopk.mc_engine import derive_seed, estimate, estimate_top_k, run_walks
from pprtopk.models import BasketComparison, CurveRow, TopKReport, WalkConfig, WalkMethod
from pprtopk.utils.get_env import resolve_threads

logger = logging.getLogger(__name__)


def compare_baskets(truth: TopKReport, estimate_report: TopKReport) -> BasketComparison:
    """Число верно найденных элементов корзины и длина совпадающего префикса списков"""
    if truth.k != estimate_report.k:
        raise InvalidParameterError(f"reports have different k: {truth.k} vs {estimate_report.k}")
    k = truth.k
    truth_ids = truth.ordered_ids[:k]
    estimate_ids = estimate_report.ordered_ids[:k]
    correct = len(set(truth_ids) & set(estimate_ids))
    prefix = 0
    for a, b in zip(truth_ids, estimate_ids):
        if a != b:
            break
        prefix += 1
    return BasketComparison(k=k, correct=correct, erroneous=k - correct, list_correct_prefix=prefix)


def satisfies_relaxation(cmp: BasketComparison, l: int) -> bool:
    """Корзина допустима при ослаблении l: не более l ошибочных элементов"""
    if l < 0:
        raise InvalidParameterError(f"relaxation level must be >= 0, got {l}")
    return cmp.erroneous <= l


def relaxation_level(cmp: BasketComparison) -> int:
    """Минимальное l, при котором satisfies_relaxation(cmp, l) истинно"""
    return cmp.erroneous


def convergence_curve(g: Graph,
                      cfg: WalkConfig,
                      method: WalkMethod,
                      k: int,
                      m_grid: Sequence[int],
                      repeats: int,
                      rng_seed: int,
                      threads: Optional[int] = None) -> List[CurveRow]:
    """
    Для каждого m из сетки: repeats независимых оценок, среднее и std
    числа верно найденных элементов корзины.
    """
    if repeats < 1:
        raise InvalidParameterError(f"repeats must be >= 1, got {repeats}")
    if not m_grid or any(m < 1 for m in m_grid):
        raise InvalidParameterError(f"m grid must be non-empty with m >= 1, got {list(m_grid)}")
    truth = top_k(solve_ppr(g, cfg), k)
    logger.info("[convergence_curve] <- k=%d, method=%s, grid=%s, repeats=%d", k, method.value, list(m_grid), repeats)

    def _correct(point: int, m: int, rep: int) -> int:
        outcome = run_walks(g, cfg, method, m, derive_seed(rng_seed, point, rep), threads=1)
        return compare_baskets(truth, estimate_top_k(estimate(outcome, cfg), k)).correct

    rows = []
    workers = min(resolve_threads(threads), repeats)
    with ThreadPoolExecutor(max_workers=max(workers, 1)) as executor:
        for point, m in enumerate(m_grid):
            correct = np.array(list(executor.map(lambda rep: _correct(point, m, rep), range(repeats))),
                               dtype=np.float64)
            rows.append(CurveRow(m=int(m), mean_correct=float(correct.mean()), std_correct=float(correct.std())))
            logger.debug("[convergence_curve] m=%d: mean=%.3f, std=%.3f", m, rows[-1].mean_correct, rows[-1].std_correct)
    return rows


def write_curve_csv(rows: Iterable[CurveRow], path: str) -> str:
    """CSV с колонками m,mean_correct,std_correct"""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["m", "mean_correct", "std_correct"])
        for row in rows:
            writer.writerow([row.m, repr(row.mean_correct), repr(row.std_correct)])
    return path
