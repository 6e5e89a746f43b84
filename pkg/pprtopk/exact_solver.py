# pprtopk/exact_solver.py
"""
Точный Personalized PageRank: итерация x <- c*P^T x + (1-c)*1_s на разреженной
матрице переходов. Используется как эталон для Monte Carlo и всех оценок.
"""
import logging
import math
import threading
from typing import Dict, Optional

import numpy as np
from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from pprtopk.config import DENSE_SOLVER_MAX_N, SOLVER_CACHE_SIZE, SOLVER_TOL
from pprtopk.exceptions import ConvergenceError, InvalidParameterError
from pprtopk.graph import Graph, check_node, transition_matrix, validate_config
from pprtopk.models import PprVector, ReportKind, ResolventEntry, TopKReport, WalkConfig

logger = logging.getLogger(__name__)

# LRU кэш решений: ключ - отпечаток графа, параметры блуждания, стартовый узел и tol
solve_cache = LRUCache(maxsize=SOLVER_CACHE_SIZE)
cache_lock = threading.RLock()


def default_max_iters(tol: float, damping: float) -> int:
    """
    Невязка после t итераций не превосходит 2*c^t, поэтому
    достаточно ceil(log(tol/2)/log(c)) итераций; +1 на округление.
    """
    return int(math.ceil(math.log(tol / 2.0) / math.log(damping))) + 1


def _solve_key(g: Graph, cfg: WalkConfig, start: int, tol: float = SOLVER_TOL, max_iters: Optional[int] = None):
    return hashkey(g.fingerprint, cfg.damping, cfg.seed_node, cfg.dangling_policy.value,
                   cfg.edge_filter.value, start, tol, max_iters)


@cached(cache=solve_cache, key=_solve_key, lock=cache_lock)
def solve_from(g: Graph, cfg: WalkConfig, start: int, tol: float = SOLVER_TOL,
               max_iters: Optional[int] = None) -> PprVector:
    """
    PPR со стартом в узле start при матрице переходов, заданной cfg.

    Матрица P строится по cfg (при jump_to_seed висячие узлы ведут в cfg.seed_node),
    старт может отличаться от seed_node: так вычисляются строки резольвенты z_i.
    """
    if tol <= 0:
        raise InvalidParameterError(f"tol must be positive, got {tol}")
    validate_config(g, cfg)
    check_node(g, start)
    c = cfg.damping
    iters = max_iters if max_iters is not None else default_max_iters(tol, c)
    logger.debug("[solve_from] <- n=%d, start=%d, c=%s, tol=%.1e, max_iters=%d",
                 g.node_count, start, c, tol, iters)

    pt = transition_matrix(g, cfg).T.tocsr()
    x = np.zeros(g.node_count, dtype=np.float64)
    x[start] = 1.0
    residual = float("inf")
    for iteration in range(1, iters + 1):
        x_new = c * (pt @ x)
        x_new[start] += 1.0 - c
        residual = float(np.abs(x_new - x).sum())
        x = x_new
        if residual <= tol:
            logger.debug("[solve_from] -> converged in %d iterations, residual=%.3e", iteration, residual)
            return PprVector(scores=x.tolist(), damping=c, seed=start)
    raise ConvergenceError(residual, iters, tol)


def solve_ppr(g: Graph, cfg: WalkConfig, tol: float = SOLVER_TOL, max_iters: Optional[int] = None) -> PprVector:
    """Вектор pi(s, c) для s = cfg.seed_node"""
    return solve_from(g, cfg, cfg.seed_node, tol, max_iters)


def dense_ppr(g: Graph, cfg: WalkConfig) -> PprVector:
    """Прямое решение (I - cP^T) x = (1-c) 1_s. Только для небольших графов (эталон в тестах)."""
    validate_config(g, cfg)
    n = g.node_count
    if n > DENSE_SOLVER_MAX_N:
        raise InvalidParameterError(f"dense solve supports n <= {DENSE_SOLVER_MAX_N}, got {n}")
    c = cfg.damping
    a = np.eye(n) - c * transition_matrix(g, cfg).T.toarray()
    b = np.zeros(n)
    b[cfg.seed_node] = 1.0 - c
    return PprVector(scores=np.linalg.solve(a, b).tolist(), damping=c, seed=cfg.seed_node)


def resolvent_entry(g: Graph, cfg: WalkConfig, i: int, j: int, tol: float = SOLVER_TOL) -> ResolventEntry:
    """z_ij = pi_j(i) / (1-c): ожидаемое число посещений j блужданием из i"""
    check_node(g, j)
    row = solve_from(g, cfg, i, tol)
    return ResolventEntry(i=i, j=j, value=row.scores[j] / (1.0 - cfg.damping))


def resolvent_row(g: Graph, cfg: WalkConfig, i: int, tol: float = SOLVER_TOL) -> np.ndarray:
    return solve_from(g, cfg, i, tol).as_array() / (1.0 - cfg.damping)


def ppr_with_personalization(g: Graph, cfg: WalkConfig, weights: Dict[int, float],
                             tol: float = SOLVER_TOL) -> PprVector:
    """
    PPR для произвольного вектора персонализации: по линейности это
    взвешенная сумма решений с одиночными стартами.
    """
    if not weights:
        raise InvalidParameterError("personalization weights are empty")
    if any(w < 0 for w in weights.values()):
        raise InvalidParameterError("personalization weights must be non-negative")
    total = math.fsum(weights.values())
    if total <= 0:
        raise InvalidParameterError("personalization weights sum to zero")

    x = np.zeros(g.node_count, dtype=np.float64)
    for start in sorted(weights):
        if weights[start] > 0:
            x += (weights[start] / total) * solve_from(g, cfg, start, tol).as_array()
    normalized = {s: w / total for s, w in sorted(weights.items())}
    return PprVector(scores=x.tolist(), damping=cfg.damping, seed=cfg.seed_node, personalization=normalized)


def top_k(v: PprVector, k: int, labels: Optional[Dict[int, str]] = None) -> TopKReport:
    """k узлов с наибольшим PPR по убыванию; при равенстве - меньший id"""
    scores = v.as_array()
    n = scores.size
    if not 1 <= k <= n:
        raise InvalidParameterError(f"k must be in [1, {n}], got {k}")
    order = np.lexsort((np.arange(n), -scores))[:k]
    ids = order.tolist()
    return TopKReport(
        ordered_ids=ids,
        scores=scores[order].tolist(),
        kind=ReportKind.LIST,
        k=k,
        labels=[labels.get(i, str(i)) for i in ids] if labels else None,
    )


def sorted_scores(v: PprVector) -> np.ndarray:
    """Все значения PPR по убыванию (вход для stat_bounds)"""
    return np.sort(v.as_array())[::-1].copy()


def clear_cache() -> None:
    with cache_lock:
        solve_cache.clear()
