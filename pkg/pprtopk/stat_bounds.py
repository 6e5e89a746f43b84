# pprtopk/stat_bounds.py
"""
Аналитические оценки для Monte Carlo PPR:
дисперсии оценок, ковариация Complete Path, вероятности ошибок ранжирования
(точная мультиномиальная и CLT), оценки Бонферрони для корзины и списка,
порядковые статистики, пуассонизация (mu(y), E(M1)) и достаточное m.

Биномиальные хвосты считаются через scipy.stats.binom.sf, пуассоновские и
мультиномиальные - в логарифмической шкале (scipy.special), внешние суммы - через math.fsum.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np
from scipy import special
from scipy.stats import binom, poisson

from pprtopk.config import EXACT_PAIRWISE_MAX_M, JSTAR_SCAN_LIMIT, M1_CHUNK_ELEMENTS, M1_TRUNCATION_EPS
from pprtopk.exceptions import DegenerateInputError, InvalidParameterError
from pprtopk.exact_solver import resolvent_row, solve_ppr, top_k
from pprtopk.graph import Graph, check_node
from pprtopk.mc_engine import derive_seed, estimate, estimate_top_k, run_end_point
from pprtopk.models import (
    BoundKind,
    CovEntry,
    DetectionReport,
    MisrankBound,
    RelaxationReport,
    VarianceReport,
    WalkConfig,
    WalkMethod,
)
from pprtopk.topk_metrics import compare_baskets
from pprtopk.utils.get_env import resolve_threads

logger = logging.getLogger(__name__)

_SQRT_2PI = math.sqrt(2.0 * math.pi)
# допуск на ошибки округления входных вероятностей
_PROB_EPS = 1e-12


def _check_probability(name: str, value: float) -> None:
    if math.isnan(value) or not -_PROB_EPS <= value <= 1.0 + _PROB_EPS:
        raise InvalidParameterError(f"{name} must be a probability in [0, 1], got {value}")


def _check_runs(m: int) -> None:
    if m < 1:
        raise InvalidParameterError(f"number of runs m must be >= 1, got {m}")


def _clip01(value: float) -> float:
    return min(1.0, max(0.0, value))


#
# Дисперсии и ковариация
#

def sigma_end_point(pi_k: float, m: int) -> float:
    """sqrt(pi_k (1 - pi_k) / m)"""
    _check_probability("pi_k", pi_k)
    _check_runs(m)
    p = _clip01(pi_k)
    return math.sqrt(p * (1.0 - p) / m)


def sigma_complete_path(pi_k_of_s: float, pi_k_of_k: float, c: float, m: int,
                        approximate: bool = False) -> float:
    """
    sqrt(pi_k(s) (2 pi_k(k) - (1-c) - pi_k(s)) / m).
    approximate=True: приближение pi_k(k) ~ 1-c, т.е. sqrt(pi_k(s) ((1-c) - pi_k(s)) / m).
    """
    _check_probability("pi_k_of_s", pi_k_of_s)
    _check_probability("pi_k_of_k", pi_k_of_k)
    if not 0.0 < c < 1.0:
        raise InvalidParameterError(f"damping must be in (0, 1), got {c}")
    _check_runs(m)
    if approximate:
        radicand = pi_k_of_s * ((1.0 - c) - pi_k_of_s)
    else:
        radicand = pi_k_of_s * (2.0 * pi_k_of_k - (1.0 - c) - pi_k_of_s)
    if radicand < -_PROB_EPS:
        raise InvalidParameterError(
            f"inconsistent inputs: negative variance {radicand:.3e} "
            f"(pi_k(s)={pi_k_of_s}, pi_k(k)={pi_k_of_k}, c={c})"
        )
    return math.sqrt(max(radicand, 0.0) / m)


def variance_report(method: WalkMethod, m: Optional[int] = None, node: Optional[int] = None,
                    pi_k: Optional[float] = None, pi_k_of_s: Optional[float] = None,
                    pi_k_of_k: Optional[float] = None, c: Optional[float] = None,
                    approximate: bool = False) -> VarianceReport:
    """Множитель sigma*sqrt(m) (и sigma, если задано m) для выбранного метода"""
    if method == WalkMethod.END_POINT:
        if pi_k is None:
            raise InvalidParameterError("end_point variance requires pi_k")
        factor = sigma_end_point(pi_k, 1)
    else:
        if pi_k_of_s is None or pi_k_of_k is None or c is None:
            raise InvalidParameterError("complete_path variance requires pi_k_of_s, pi_k_of_k and damping")
        factor = sigma_complete_path(pi_k_of_s, pi_k_of_k, c, 1, approximate)
    return VarianceReport(
        node=node,
        method=method,
        sigma_per_sqrt_m=factor,
        m=m,
        sigma=factor / math.sqrt(m) if m else None,
        approximate=approximate and method == WalkMethod.COMPLETE_PATH,
    )


def covariance_entry(g: Graph, cfg: WalkConfig, i: int, j: int) -> CovEntry:
    """
    Sigma_ij(s) = z_si z_ij + z_ji z_sj - delta_ij z_si - z_si z_sj:
    ковариация числа посещений i и j за один прогон Complete Path.
    """
    check_node(g, i)
    check_node(g, j)
    s = cfg.seed_node
    z_s = resolvent_row(g, cfg, s)
    z_i = resolvent_row(g, cfg, i)
    z_j = resolvent_row(g, cfg, j)
    value = (z_s[i] * z_i[j] + z_j[i] * z_s[j]
             - (z_s[i] if i == j else 0.0)
             - z_s[i] * z_s[j])
    return CovEntry(s=s, i=i, j=j, value=float(value))


def covariance_matrix(g: Graph, cfg: WalkConfig, nodes: Sequence[int]) -> np.ndarray:
    """Sigma(s), ограниченная на nodes (в единицах числа посещений)"""
    nodes = np.asarray(nodes, dtype=np.int64)
    for v in nodes.tolist():
        check_node(g, v)
    z_s = resolvent_row(g, cfg, cfg.seed_node)[nodes]
    # строка a: z_{nodes[a], nodes[.]}
    z_sub = np.vstack([resolvent_row(g, cfg, v)[nodes] for v in nodes.tolist()])
    return (z_s[:, None] * z_sub + z_sub.T * z_s[None, :]
            - np.diag(z_s) - np.outer(z_s, z_s))


#
# Попарные ошибки ранжирования
#

def pairwise_misrank_exact(pi_i: float, pi_j: float, m: int) -> float:
    """
    P{L_i <= L_j} для мультиномиальных счетчиков End Point:
    сумма трехчленных вероятностей по l_i <= l_j, l_i + l_j <= m.
    """
    _check_probability("pi_i", pi_i)
    _check_probability("pi_j", pi_j)
    if pi_i + pi_j > 1.0 + _PROB_EPS:
        raise InvalidParameterError(f"pi_i + pi_j must be <= 1, got {pi_i + pi_j}")
    _check_runs(m)
    if m > EXACT_PAIRWISE_MAX_M:
        raise InvalidParameterError(
            f"exact pairwise misranking supports m <= {EXACT_PAIRWISE_MAX_M}, got {m}; use the CLT form"
        )
    rest = max(0.0, 1.0 - pi_i - pi_j)
    l_i, l_j = np.meshgrid(np.arange(m + 1), np.arange(m + 1), indexing="ij")
    mask = (l_i <= l_j) & (l_i + l_j <= m)
    l_i, l_j = l_i[mask].astype(np.float64), l_j[mask].astype(np.float64)
    l_r = m - l_i - l_j
    log_terms = (special.gammaln(m + 1) - special.gammaln(l_i + 1) - special.gammaln(l_j + 1)
                 - special.gammaln(l_r + 1)
                 + special.xlogy(l_i, pi_i) + special.xlogy(l_j, pi_j) + special.xlogy(l_r, rest))
    log_terms = log_terms[np.isfinite(log_terms)]
    if not log_terms.size:
        return 0.0
    return _clip01(float(np.exp(special.logsumexp(log_terms))))


def rho_from_moments(mean_i: float, mean_j: float, var_i: float, var_j: float, cov_ij: float) -> float:
    """(E Y_i - E Y_j) / sqrt(var_i - 2 cov_ij + var_j)"""
    denominator = var_i - 2.0 * cov_ij + var_j
    if denominator <= 0.0:
        raise DegenerateInputError(f"degenerate pair: variance of Y_i - Y_j is {denominator:.3e}")
    return (mean_i - mean_j) / math.sqrt(denominator)


def rho_multinomial(pi_i: float, pi_j: float) -> float:
    """rho_ij для мультиномиальных счетчиков (одна частица на прогон)"""
    return rho_from_moments(pi_i, pi_j, pi_i * (1.0 - pi_i), pi_j * (1.0 - pi_j), -pi_i * pi_j)


def pairwise_misrank_clt(mean_i: float, mean_j: float, var_i: float, var_j: float,
                         cov_ij: float, m: int) -> float:
    """P{Y_i <= Y_j} ~ 1 - Phi(sqrt(m) rho_ij)"""
    _check_runs(m)
    rho = rho_from_moments(mean_i, mean_j, var_i, var_j, cov_ij)
    return float(special.ndtr(-math.sqrt(m) * rho))


def pairwise_misrank_clt_multinomial(pi_i: float, pi_j: float, m: int) -> float:
    _check_probability("pi_i", pi_i)
    _check_probability("pi_j", pi_j)
    _check_runs(m)
    return float(special.ndtr(-math.sqrt(m) * rho_multinomial(pi_i, pi_j)))


#
# Оценки Бонферрони
#

def _as_sorted(pi_sorted: Sequence[float], k: int) -> np.ndarray:
    pi = np.asarray(pi_sorted, dtype=np.float64)
    n = pi.size
    if not 1 <= k < n:
        raise InvalidParameterError(f"k must satisfy 1 <= k < n={n}, got {k}")
    if np.any(pi < -_PROB_EPS) or np.any(pi > 1.0 + _PROB_EPS):
        raise InvalidParameterError("pi values must be probabilities")
    if np.any(np.diff(pi) > 0):
        raise InvalidParameterError("pi_sorted must be in descending order")
    if pi[k - 1] == pi[k]:
        raise DegenerateInputError(f"tie pi_k = pi_(k+1) = {pi[k]}: top-{k} basket is ill-defined")
    return pi


def _check_cov(cov: Optional[np.ndarray], size: int) -> Optional[np.ndarray]:
    if cov is None:
        return None
    cov = np.asarray(cov, dtype=np.float64)
    if cov.ndim != 2 or cov.shape[0] < size or cov.shape[1] < size:
        raise InvalidParameterError(f"covariance must cover the first {size} ranked nodes, got shape {cov.shape}")
    return cov


def _rho_block(pi: np.ndarray, rows: np.ndarray, cols: np.ndarray, cov: Optional[np.ndarray]) -> np.ndarray:
    """Матрица rho_ij для i из rows и j из cols (позиции в pi_sorted)"""
    pi_i = pi[rows][:, None]
    pi_j = pi[cols][None, :]
    if cov is None:
        denominator = pi_i * (1.0 - pi_i) + 2.0 * pi_i * pi_j + pi_j * (1.0 - pi_j)
    else:
        var = np.diag(cov)
        denominator = var[rows][:, None] - 2.0 * cov[np.ix_(rows, cols)] + var[cols][None, :]
    if np.any(denominator <= 0.0):
        raise DegenerateInputError("degenerate pair with zero variance of the count difference")
    return (pi_i - pi_j) / np.sqrt(denominator)


def basket_misrank_bound(pi_sorted: Sequence[float],
                         k: int,
                         m: int,
                         j_star: Union[str, int] = "auto",
                         cov: Optional[np.ndarray] = None,
                         pairwise: str = "clt") -> MisrankBound:
    """
    Верхняя оценка вероятности того, что корзина top-k определена неверно.

    Первые j* - k столбцов суммируются по CLT, хвост j > j* оценивается через
    гауссов хвост rho_ij*: (n - j*)/sqrt(2 pi) * sum_i exp(-rho_ij*^2 m / 2).
    j_star: "auto" (перебор j* в k+1..min(n, k+JSTAR_SCAN_LIMIT)), "plain" (j* = n,
    обычная сумма Бонферрони) или номер j* (1-based).
    cov: ковариация на один прогон в единицах pi (Complete Path); иначе мультиномиальная.
    pairwise="exact": обычная сумма с точными трехчленными слагаемыми (End Point, малые m).
    """
    pi = _as_sorted(pi_sorted, k)
    _check_runs(m)
    n = pi.size
    logger.debug("[basket_misrank_bound] <- n=%d, k=%d, m=%d, j_star=%s, pairwise=%s", n, k, m, j_star, pairwise)

    if pairwise == "exact":
        terms = [pairwise_misrank_exact(float(pi[i]), float(pi[j]), m) for i in range(k) for j in range(k, n)]
        raw = math.fsum(terms)
        return MisrankBound(kind=BoundKind.BASKET_BONFERRONI, value=_clip01(raw), raw_value=raw,
                            params={"k": k, "m": m, "n": n, "j_star": n, "pairwise": "exact"})
    if pairwise != "clt":
        raise InvalidParameterError(f"pairwise must be 'clt' or 'exact', got '{pairwise}'")

    if j_star == "auto":
        last = min(n, k + JSTAR_SCAN_LIMIT)
    elif j_star == "plain":
        last = n
    else:
        last = int(j_star)
        if not k + 1 <= last <= n:
            raise InvalidParameterError(f"j_star must be in [{k + 1}, {n}], got {last}")
    cov = _check_cov(cov, last)

    rho = _rho_block(pi, np.arange(k), np.arange(k, last), cov)
    head_terms = special.ndtr(-math.sqrt(m) * rho).sum(axis=0).cumsum()
    j_candidates = np.arange(k + 1, last + 1)
    tail_terms = (n - j_candidates) / _SQRT_2PI * np.exp(-(rho ** 2) * m / 2.0).sum(axis=0)
    totals = head_terms + tail_terms

    if j_star == "auto":
        best = int(np.argmin(totals))
    else:
        best = totals.size - 1
    raw = float(totals[best])
    bound = MisrankBound(
        kind=BoundKind.BASKET_BONFERRONI,
        value=_clip01(raw),
        raw_value=raw,
        params={"k": k, "m": m, "n": n, "j_star": int(j_candidates[best]), "pairwise": "clt",
                "covariance": "custom" if cov is not None else "multinomial"},
    )
    logger.debug("[basket_misrank_bound] -> value=%.6g, j_star=%d", bound.value, bound.params["j_star"])
    return bound


def list_misrank_bound(pi_sorted: Sequence[float],
                       k: int,
                       m: int,
                       cov: Optional[np.ndarray] = None,
                       pairwise: str = "clt") -> MisrankBound:
    """
    Оценка Бонферрони для упорядоченного списка top-k: соседние пары внутри
    списка плюс пары (k, j) для всех j > k. Возвращается вероятность ошибки.

    Ошибка корзины влечет ошибку списка, но сами оценки не упорядочены:
    при плотном хвосте сумма корзины по строкам i < k больше суммы соседних пар.
    """
    pi = _as_sorted(pi_sorted, k)
    _check_runs(m)
    n = pi.size
    if np.any(pi[:k - 1] == pi[1:k]):
        raise DegenerateInputError("ties inside the top-k list: list order is ill-defined")
    cov = _check_cov(cov, n)

    rows = np.concatenate([np.arange(k - 1), np.full(n - k, k - 1)]).astype(np.int64)
    cols = np.concatenate([np.arange(1, k), np.arange(k, n)]).astype(np.int64)
    if pairwise == "exact":
        terms = [pairwise_misrank_exact(float(pi[i]), float(pi[j]), m) for i, j in zip(rows, cols)]
    elif pairwise == "clt":
        pi_i, pi_j = pi[rows], pi[cols]
        if cov is None:
            denominator = pi_i * (1.0 - pi_i) + 2.0 * pi_i * pi_j + pi_j * (1.0 - pi_j)
        else:
            var = np.diag(cov)
            denominator = var[rows] - 2.0 * cov[rows, cols] + var[cols]
        if np.any(denominator <= 0.0):
            raise DegenerateInputError("degenerate pair with zero variance of the count difference")
        terms = special.ndtr(-math.sqrt(m) * (pi_i - pi_j) / np.sqrt(denominator)).tolist()
    else:
        raise InvalidParameterError(f"pairwise must be 'clt' or 'exact', got '{pairwise}'")

    raw = math.fsum(terms)
    return MisrankBound(kind=BoundKind.LIST_BONFERRONI, value=_clip01(raw), raw_value=raw,
                        params={"k": k, "m": m, "n": n, "pairwise": pairwise})


#
# Порядковые статистики и попадания
#

def order_statistic_cdf(p_head: float, s: int, m: int, mode: str = "sum") -> float:
    """
    P{X_(s) <= k}: хотя бы s из m концов блужданий попали в top-k,
    зависит только от p_head = pi_1 + ... + pi_k.
    mode="sum": верхний хвост Binomial(m, p) от s (binom.sf);
    mode="beta": I_p(s, m - s + 1). Оба вида считаются за O(1) по m.
    """
    _check_probability("p_head", p_head)
    _check_runs(m)
    if not 1 <= s <= m:
        raise InvalidParameterError(f"order statistic index s must be in [1, m={m}], got {s}")
    p = _clip01(p_head)
    if mode == "beta":
        return float(special.betainc(s, m - s + 1, p))
    if mode != "sum":
        raise InvalidParameterError(f"mode must be 'sum' or 'beta', got '{mode}'")
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    # не менее s попаданий в голову: P{Binomial(m, p) > s - 1}
    return _clip01(float(binom.sf(s - 1, m, p)))


def hit_probability(pi_j: float, r: int, m: int) -> float:
    """P{Y_j >= r}, Y_j ~ Binomial(m, pi_j)"""
    _check_probability("pi_j", pi_j)
    _check_runs(m)
    if r < 1:
        raise InvalidParameterError(f"r must be >= 1, got {r}")
    if r > m:
        return 0.0
    p = _clip01(pi_j)
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    return _clip01(float(binom.sf(r - 1, m, p)))


def detection_report(pi_sorted: Sequence[float], k: int, r: int, j: int, m: int) -> DetectionReport:
    """
    Вероятности обнаружения при m прогонах: P{X_(rk) <= k} (каждый из top-k
    мог получить r попаданий) и P{Y_j >= r} для узла ранга j (1-based).
    """
    pi = np.asarray(pi_sorted, dtype=np.float64)
    if not 1 <= k <= pi.size:
        raise InvalidParameterError(f"k must be in [1, {pi.size}], got {k}")
    if not 1 <= j <= pi.size:
        raise InvalidParameterError(f"j must be in [1, {pi.size}], got {j}")
    if r < 1:
        raise InvalidParameterError(f"r must be >= 1, got {r}")
    _check_runs(m)
    p_head = _clip01(math.fsum(pi[:k].tolist()))
    s = r * k
    p_order = order_statistic_cdf(p_head, s, m) if s <= m else 0.0
    return DetectionReport(m=m, r=r, k=k, j=j, p_order=p_order, p_hit=hit_probability(float(pi[j - 1]), r, m))


def detection_curve(pi_sorted: Sequence[float], k: int, r: int, j: int,
                    m_grid: Iterable[int]) -> List[DetectionReport]:
    return [detection_report(pi_sorted, k, r, j, int(m)) for m in m_grid]


#
# Пуассонизация
#

def poisson_mu(pi_tail: Sequence[float], m: float, y: int) -> float:
    """mu(y) = sum_j P{Poisson(m pi_j) >= y} по узлам вне top-k"""
    if m <= 0:
        raise InvalidParameterError(f"m must be positive, got {m}")
    if y < 0:
        raise InvalidParameterError(f"y must be >= 0, got {y}")
    tail = np.asarray(pi_tail, dtype=np.float64)
    if y == 0:
        return float(tail.size)
    if not tail.size:
        return 0.0
    # регуляризованная нижняя гамма-функция P(y, lambda) = P{Poisson(lambda) >= y}
    return math.fsum(special.gammainc(y, m * tail).tolist())


def expected_m1(pi_sorted: Sequence[float], k: int, m: float) -> float:
    """
    E(M1) = k - (1/k) sum_y mu(y) sum_{i<=k} P(Y_i = y) для пуассонизированной модели.

    Узлы хвоста с pi_j = 0 не учитываются: их счетчик тождественно 0.
    Значение не обрезается снизу (может быть отрицательным при малых m).
    """
    pi = np.asarray(pi_sorted, dtype=np.float64)
    n = pi.size
    if not 1 <= k < n:
        raise InvalidParameterError(f"k must satisfy 1 <= k < n={n}, got {k}")
    if m <= 0:
        raise InvalidParameterError(f"m must be positive, got {m}")
    head = m * pi[:k]
    tail = m * pi[k:]
    tail = tail[tail > 0]
    if not tail.size:
        return float(k)

    positive = head[head > 0]
    y_max = 0
    if positive.size:
        y_max = int(np.max(poisson.isf(M1_TRUNCATION_EPS / k, positive))) + 1
    ys = np.arange(0, y_max + 1)

    # P(Y_i = y) в лог-шкале; xlogy(0, 0) = 0 дает корректный pmf для lambda = 0
    log_pmf = special.xlogy(ys[:, None], head[None, :]) - head[None, :] - special.gammaln(ys[:, None] + 1)
    head_pmf = np.exp(log_pmf).sum(axis=1)
    mu = np.empty(ys.size, dtype=np.float64)
    mu[0] = tail.size
    if ys.size > 1:
        acc = np.zeros(ys.size - 1)
        # блок сужается с ростом диапазона y: не более M1_CHUNK_ELEMENTS значений за раз
        step = max(1, M1_CHUNK_ELEMENTS // (ys.size - 1))
        for start in range(0, tail.size, step):
            chunk = tail[start:start + step]
            acc += special.gammainc(ys[1:, None], chunk[None, :]).sum(axis=1)
        mu[1:] = acc
    return k - math.fsum((mu * head_pmf).tolist()) / k


def expected_m1_curve(pi_sorted: Sequence[float], k: int, m_grid: Iterable[float]) -> List[RelaxationReport]:
    return [RelaxationReport(m=float(m), k=k, e_m1=expected_m1(pi_sorted, k, m)) for m in m_grid]


def recommended_m(a: float, epsilon: float, alpha: float, k: int, pi_k_plus_1: float,
                  pi_tail: Optional[Sequence[float]] = None) -> RelaxationReport:
    """
    Достаточное число прогонов m = ceil(2/(a eps^2) * (-log(eps pi_(k+1) alpha k))),
    при котором E(M1) > (1 - alpha) k, если pi_(k+1) = (1 - eps) a.

    Результат перепроверяется: mu(y) < alpha k при y = ceil(m a), по переданному
    хвосту или по худшему хвосту из floor(1/pi_(k+1)) узлов со значением pi_(k+1).
    """
    if not 0.0 < epsilon < 1.0:
        raise InvalidParameterError(f"epsilon must be in (0, 1), got {epsilon}")
    if not 0.0 < alpha < 1.0:
        raise InvalidParameterError(f"alpha must be in (0, 1), got {alpha}")
    if a <= 0.0:
        raise InvalidParameterError(f"a must be positive, got {a}")
    if k < 1:
        raise InvalidParameterError(f"k must be >= 1, got {k}")
    if not 0.0 < pi_k_plus_1 <= 1.0:
        raise InvalidParameterError(f"pi_(k+1) must be in (0, 1], got {pi_k_plus_1}")
    if abs(pi_k_plus_1 - (1.0 - epsilon) * a) > 1e-9:
        raise InvalidParameterError(
            f"pi_(k+1)={pi_k_plus_1} must equal (1 - epsilon) * a = {(1.0 - epsilon) * a}"
        )
    log_argument = epsilon * pi_k_plus_1 * alpha * k
    if log_argument >= 1.0:
        raise InvalidParameterError(f"epsilon * pi_(k+1) * alpha * k = {log_argument} must be < 1")

    m = int(math.ceil(2.0 / (a * epsilon ** 2) * (-math.log(log_argument))))
    y = int(math.ceil(m * a))
    if pi_tail is None:
        tail = np.full(int(math.floor(1.0 / pi_k_plus_1)), pi_k_plus_1)
    else:
        tail = np.asarray(pi_tail, dtype=np.float64)
    mu_y = poisson_mu(tail, m, y)
    report = RelaxationReport(
        m=float(m), k=k, y=y, mu_y=mu_y, recommended_m=m, a=a, epsilon=epsilon, alpha=alpha,
        condition_holds=mu_y < alpha * k, hypothesis_ok=epsilon > 1.0 / y,
    )
    if not report.condition_holds:
        logger.warning("[recommended_m] recheck failed: mu(%d)=%.4g >= alpha*k=%.4g", y, mu_y, alpha * k)
    if not report.hypothesis_ok:
        logger.warning("[recommended_m] epsilon=%s <= 1/y=%.4g, bound hypothesis violated", epsilon, 1.0 / y)
    return report


def expected_m0_empirical(g: Graph, cfg: WalkConfig, k: int, m: int, trials: int,
                          rng_seed: int, threads: Optional[int] = None) -> float:
    """Средний размер пересечения MC-корзины End Point с истинной корзиной top-k"""
    if trials < 1:
        raise InvalidParameterError(f"trials must be >= 1, got {trials}")
    _check_runs(m)
    truth = top_k(solve_ppr(g, cfg), k)

    def _trial(t: int) -> int:
        outcome = run_end_point(g, cfg, m, derive_seed(rng_seed, t), threads=1)
        return compare_baskets(truth, estimate_top_k(estimate(outcome, cfg), k)).correct

    workers = min(resolve_threads(threads), trials)
    if workers <= 1:
        correct = [_trial(t) for t in range(trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            correct = list(executor.map(_trial, range(trials)))
    result = math.fsum(correct) / trials
    logger.info("[expected_m0_empirical] -> k=%d, m=%d, trials=%d, E(M0)=%.4f", k, m, trials, result)
    return result
