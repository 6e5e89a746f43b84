# pprtopk/mc_engine.py
"""
Monte Carlo оценки PPR: End Point (учитывается конечный узел блуждания)
и Complete Path (учитываются все посещения, включая старт в момент 0).

Прогоны нумеруются глобально: r = 0, 1, 2, ... Прогон r принадлежит блоку
r // WALK_BLOCK_SIZE; поток случайных чисел блока задается парой
(rng_seed, номер блока). Блок всегда моделируется целиком, поэтому
траектория прогона не зависит ни от m, ни от числа потоков.
"""
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
from cachetools import LRUCache
from cachetools.keys import hashkey

from pprtopk.config import ADAPTIVE_BATCH, ADAPTIVE_GAP, WALK_BLOCK_SIZE
from pprtopk.exceptions import InvalidParameterError
from pprtopk.graph import Graph, effective_adjacency, validate_config
from pprtopk.models import (
    AdaptiveResult,
    MCEstimate,
    ReportKind,
    TopKReport,
    WalkConfig,
    WalkMethod,
    WalkOutcome,
)
from pprtopk.utils.get_env import resolve_threads

logger = logging.getLogger(__name__)

# Несколько последних блоков: run_adaptive запрашивает один блок по частям
block_cache = LRUCache(maxsize=8)
block_cache_lock = threading.RLock()


@dataclass(frozen=True)
class BlockTrace:
    """Результат моделирования одного RNG-блока"""
    end_nodes: np.ndarray            # конечный узел каждого прогона блока
    visit_runs: Optional[np.ndarray]  # (прогон, узел) для каждого посещения; только Complete Path
    visit_nodes: Optional[np.ndarray]


def derive_seed(rng_seed: int, *keys: int) -> int:
    """Независимое зерно для подзадачи (повтор эксперимента, страница корпуса)"""
    state = np.random.SeedSequence([rng_seed, *keys]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def _check_seed(rng_seed: int) -> None:
    if rng_seed < 0:
        raise InvalidParameterError(f"rng_seed must be non-negative, got {rng_seed}")


def _simulate_block(indptr: np.ndarray, indices: np.ndarray, seed_node: int, damping: float,
                    rng_seed: int, block_index: int, record_visits: bool) -> BlockTrace:
    rng = np.random.default_rng(np.random.SeedSequence([rng_seed, block_index]))
    size = WALK_BLOCK_SIZE
    end_nodes = np.empty(size, dtype=np.int64)
    runs = np.arange(size, dtype=np.int64)
    positions = np.full(size, seed_node, dtype=np.int64)
    visit_runs, visit_nodes = [], []

    while runs.size:
        if record_visits:
            visit_runs.append(runs)
            visit_nodes.append(positions)
        # остановка с вероятностью 1-c
        stop = rng.random(runs.size) >= damping
        end_nodes[runs[stop]] = positions[stop]
        runs, positions = runs[~stop], positions[~stop]
        if not runs.size:
            break
        starts = indptr[positions]
        degrees = indptr[positions + 1] - starts
        positions = indices[starts + rng.integers(0, degrees)]

    if not record_visits:
        return BlockTrace(end_nodes, None, None)
    return BlockTrace(end_nodes, np.concatenate(visit_runs), np.concatenate(visit_nodes))


def _get_block(g: Graph, cfg: WalkConfig, method: WalkMethod, rng_seed: int, block_index: int) -> BlockTrace:
    key = hashkey(g.fingerprint, cfg, method.value, rng_seed, block_index, WALK_BLOCK_SIZE)
    with block_cache_lock:
        trace = block_cache.get(key)
    if trace is not None:
        return trace
    indptr, indices = effective_adjacency(g, cfg)
    trace = _simulate_block(indptr, indices, cfg.seed_node, cfg.damping, rng_seed, block_index,
                            record_visits=method == WalkMethod.COMPLETE_PATH)
    with block_cache_lock:
        block_cache[key] = trace
    return trace


def _count_block(g: Graph, cfg: WalkConfig, method: WalkMethod, rng_seed: int,
                 block_index: int, lo: int, hi: int) -> Tuple[np.ndarray, np.ndarray]:
    """Счетчики по прогонам [lo, hi) блока (номера внутри блока)"""
    trace = _get_block(g, cfg, method, rng_seed, block_index)
    if method == WalkMethod.END_POINT:
        nodes = trace.end_nodes[lo:hi]
    else:
        mask = (trace.visit_runs >= lo) & (trace.visit_runs < hi)
        nodes = trace.visit_nodes[mask]
    return np.unique(nodes, return_counts=True)


def simulate_runs(g: Graph, cfg: WalkConfig, method: WalkMethod, start: int, stop: int,
                  rng_seed: int, threads: Optional[int] = None) -> np.ndarray:
    """
    Плотный вектор счетчиков по прогонам с глобальными номерами [start, stop).
    """
    if not 0 <= start < stop:
        raise InvalidParameterError(f"invalid run range [{start}, {stop})")
    _check_seed(rng_seed)
    validate_config(g, cfg)
    effective_adjacency(g, cfg)

    block = WALK_BLOCK_SIZE
    tasks = []
    for b in range(start // block, (stop - 1) // block + 1):
        lo = max(start, b * block) - b * block
        hi = min(stop, (b + 1) * block) - b * block
        tasks.append((b, lo, hi))

    counts = np.zeros(g.node_count, dtype=np.int64)
    workers = min(resolve_threads(threads), len(tasks))
    if workers <= 1:
        parts = [_count_block(g, cfg, method, rng_seed, b, lo, hi) for b, lo, hi in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            parts = list(executor.map(lambda t: _count_block(g, cfg, method, rng_seed, *t), tasks))
    # целочисленное сложение: порядок слияния не влияет на результат
    for nodes, node_counts in parts:
        np.add.at(counts, nodes, node_counts)
    return counts


def _outcome(method: WalkMethod, m: int, counts: np.ndarray, rng_seed: int) -> WalkOutcome:
    nonzero = np.flatnonzero(counts)
    return WalkOutcome(
        method=method,
        runs_m=m,
        counts=dict(zip(nonzero.tolist(), counts[nonzero].tolist())),
        rng_seed_base=rng_seed,
    )


def run_walks(g: Graph, cfg: WalkConfig, method: WalkMethod, m: int, rng_seed: int,
              threads: Optional[int] = None) -> WalkOutcome:
    if m < 1:
        raise InvalidParameterError(f"number of runs m must be >= 1, got {m}")
    logger.debug("[run_walks] <- method=%s, m=%d, seed_node=%d, c=%s, rng_seed=%d",
                 method.value, m, cfg.seed_node, cfg.damping, rng_seed)
    counts = simulate_runs(g, cfg, method, 0, m, rng_seed, threads)
    outcome = _outcome(method, m, counts, rng_seed)
    logger.debug("[run_walks] -> %d distinct nodes", len(outcome.counts))
    return outcome


def run_end_point(g: Graph, cfg: WalkConfig, m: int, rng_seed: int, threads: Optional[int] = None) -> WalkOutcome:
    """m блужданий из s, учитывается только конечный узел: sum(L_j) = m"""
    return run_walks(g, cfg, WalkMethod.END_POINT, m, rng_seed, threads)


def run_complete_path(g: Graph, cfg: WalkConfig, m: int, rng_seed: int,
                      threads: Optional[int] = None) -> WalkOutcome:
    """m блужданий из s, учитываются все посещения (включая старт и конечный узел)"""
    return run_walks(g, cfg, WalkMethod.COMPLETE_PATH, m, rng_seed, threads)


def estimate(outcome: WalkOutcome, cfg: WalkConfig) -> MCEstimate:
    """L_j/m для End Point и (1-c)*N_j/m для Complete Path"""
    m = outcome.runs_m
    scale = 1.0 / m if outcome.method == WalkMethod.END_POINT else (1.0 - cfg.damping) / m
    return MCEstimate(
        pi_hat={node: count * scale for node, count in outcome.counts.items()},
        method=outcome.method,
        runs_m=m,
    )


def estimate_top_k(est: MCEstimate, k: int) -> TopKReport:
    """
    Top-k по оценке среди посещенных узлов; при равенстве - меньший id.
    Если посещено меньше k узлов, список короче и помечен truncated.
    """
    if k < 1:
        raise InvalidParameterError(f"k must be >= 1, got {k}")
    ranked = sorted(est.pi_hat.items(), key=lambda item: (-item[1], item[0]))[:k]
    truncated = len(ranked) < k
    if truncated:
        logger.warning("[estimate_top_k] only %d nodes visited, requested k=%d", len(ranked), k)
    return TopKReport(
        ordered_ids=[node for node, _ in ranked],
        scores=[score for _, score in ranked],
        kind=ReportKind.LIST,
        k=k,
        truncated=truncated,
    )


def count_gap(counts: np.ndarray, k: int) -> Optional[int]:
    """Разность счетчиков узлов ранга k и k+1; None если посещено меньше k узлов"""
    visited = np.sort(counts[counts > 0])[::-1]
    if visited.size < k:
        return None
    next_count = int(visited[k]) if visited.size > k else 0
    return int(visited[k - 1]) - next_count


def run_adaptive(g: Graph,
                 cfg: WalkConfig,
                 k: int,
                 gap_d: int = ADAPTIVE_GAP,
                 batch: int = ADAPTIVE_BATCH,
                 m_cap: int = 1_000_000,
                 rng_seed: int = 0,
                 method: WalkMethod = WalkMethod.END_POINT,
                 threads: Optional[int] = None) -> Tuple[WalkOutcome, AdaptiveResult]:
    """
    Прогоны пачками по batch; остановка, когда счетчик узла ранга k
    превышает счетчик ранга k+1 не меньше чем на gap_d, или при m_cap.
    """
    if k < 1 or gap_d < 1 or batch < 1:
        raise InvalidParameterError(f"k, gap_d and batch must be >= 1, got k={k}, gap_d={gap_d}, batch={batch}")
    if m_cap < 1:
        raise InvalidParameterError(f"m_cap must be >= 1, got {m_cap}")
    logger.info("[run_adaptive] <- k=%d, d=%d, batch=%d, cap=%d, method=%s", k, gap_d, batch, m_cap, method.value)

    counts = np.zeros(g.node_count, dtype=np.int64)
    m, batches, gap = 0, 0, None
    stopped = False
    while m < m_cap:
        take = min(batch, m_cap - m)
        counts += simulate_runs(g, cfg, method, m, m + take, rng_seed, threads)
        m += take
        batches += 1
        gap = count_gap(counts, k)
        if gap is not None and gap >= gap_d:
            stopped = True
            break

    if not stopped:
        logger.warning("[run_adaptive] cap m=%d reached, gap=%s < d=%d", m_cap, gap, gap_d)
    result = AdaptiveResult(stopped_at_m=m, cap_reached=not stopped, gap=gap or 0, batches=batches)
    logger.info("[run_adaptive] -> %s", result)
    return _outcome(method, m, counts, rng_seed), result
