# pprtopk/commands/bounds.py
"""
bounds <sub>: аналитические величины (дисперсии, ковариация, оценки ошибок
ранжирования, порядковые статистики, пуассонизация, достаточное m).
Результат - JSON в stdout или в --out/<sub>.json.
"""
import argparse
import logging
import time
from typing import Optional, Tuple, Union

import numpy as np

from pprtopk.commands.common import (
    add_graph_arguments,
    emit,
    finish,
    float_list,
    graph_request,
    int_list,
    parse_method,
)
from pprtopk.config import JSTAR_SCAN_LIMIT
from pprtopk.exact_solver import solve_ppr, top_k
from pprtopk.exceptions import InvalidParameterError
from pprtopk.models import WalkMethod
from pprtopk import stat_bounds

logger = logging.getLogger(__name__)


def _ranked_pi(args: argparse.Namespace) -> Tuple[np.ndarray, Optional[list]]:
    """pi по убыванию: из --pi или из точного решения по --graph"""
    if args.pi is not None:
        return np.asarray(args.pi, dtype=np.float64), None
    if not args.graph or args.seed is None or args.damping is None:
        raise InvalidParameterError("either --pi or --graph/--seed/--damping is required")
    request = graph_request(args)
    g = request.load_graph()
    vector = solve_ppr(g, request.walk_config())
    report = top_k(vector, g.node_count)
    return np.asarray(report.scores, dtype=np.float64), report.ordered_ids


def _path_covariance(args: argparse.Namespace, ranked_ids: Optional[list], size: int) -> Optional[np.ndarray]:
    """Ковариация Complete Path на один прогон (в единицах pi) для первых size узлов рейтинга"""
    if args.method != WalkMethod.COMPLETE_PATH:
        return None
    if ranked_ids is None:
        raise InvalidParameterError("--method complete-path requires --graph (covariance needs the resolvent)")
    request = graph_request(args)
    g = request.load_graph()
    cfg = request.walk_config()
    return (1.0 - cfg.damping) ** 2 * stat_bounds.covariance_matrix(g, cfg, ranked_ids[:size])


def parse_j_star(value: str) -> Union[str, int]:
    """auto | plain | номер j* (целое)"""
    if value in ("auto", "plain"):
        return value
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"j-star must be 'auto', 'plain' or an integer, got '{value}'")


def _pi_source_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--pi", type=float_list, help="Значения pi по убыванию через запятую")
    add_graph_arguments(parser, required=False)


def _variance(args):
    if args.method == WalkMethod.END_POINT:
        return stat_bounds.variance_report(args.method, m=args.m, node=args.node, pi_k=args.pi)
    return stat_bounds.variance_report(args.method, m=args.m, node=args.node, pi_k_of_s=args.pi_s,
                                       pi_k_of_k=args.pi_k, c=args.damping, approximate=args.approximate)


def _covariance(args):
    request = graph_request(args)
    g = request.load_graph()
    return stat_bounds.covariance_entry(g, request.walk_config(), args.i, args.j)


def _pairwise(args):
    if args.mode == "exact":
        value = stat_bounds.pairwise_misrank_exact(args.pi_i, args.pi_j, args.m)
    else:
        value = stat_bounds.pairwise_misrank_clt_multinomial(args.pi_i, args.pi_j, args.m)
    return {"mode": args.mode, "pi_i": args.pi_i, "pi_j": args.pi_j, "m": args.m, "probability": value}


def _basket(args):
    pi, ids = _ranked_pi(args)
    if args.j_star == "plain":
        size = pi.size
    elif args.j_star == "auto":
        size = min(pi.size, args.k + JSTAR_SCAN_LIMIT)
    else:
        size = args.j_star
    cov = _path_covariance(args, ids, size)
    return stat_bounds.basket_misrank_bound(pi, args.k, args.m, args.j_star, cov, args.pairwise)


def _list(args):
    pi, ids = _ranked_pi(args)
    cov = _path_covariance(args, ids, pi.size)
    return stat_bounds.list_misrank_bound(pi, args.k, args.m, cov, args.pairwise)


def _order_stats(args):
    value = stat_bounds.order_statistic_cdf(args.p, args.s, args.m, args.mode)
    return {"p_head": args.p, "s": args.s, "m": args.m, "mode": args.mode, "probability": value}


def _hit(args):
    value = stat_bounds.hit_probability(args.pi, args.r, args.m)
    return {"pi_j": args.pi, "r": args.r, "m": args.m, "probability": value}


def _mu(args):
    value = stat_bounds.poisson_mu(args.pi_tail, args.m, args.y)
    return {"m": args.m, "y": args.y, "tail_size": len(args.pi_tail), "mu_y": value}


def _em1(args):
    pi, _ = _ranked_pi(args)
    return stat_bounds.expected_m1_curve(pi, args.k, [args.m])[0]


def _em1_curve(args):
    pi, _ = _ranked_pi(args)
    return stat_bounds.expected_m1_curve(pi, args.k, args.m_grid)


def _detection(args):
    pi, _ = _ranked_pi(args)
    return stat_bounds.detection_curve(pi, args.k, args.r, args.j, args.m_grid)


def _recommend_m(args):
    return stat_bounds.recommended_m(args.a, args.epsilon, args.alpha, args.k, args.pi_next, args.pi_tail)


def register(subparsers) -> None:
    parser = subparsers.add_parser("bounds", help="Аналитические оценки")
    bounds = parser.add_subparsers(dest="bounds_command", required=True)

    sub = bounds.add_parser("variance", help="sigma оценки End Point / Complete Path")
    sub.add_argument("--method", type=parse_method, default=WalkMethod.END_POINT)
    sub.add_argument("--pi", type=float, help="pi_k (End Point)")
    sub.add_argument("--pi-s", type=float, help="pi_k(s) (Complete Path)")
    sub.add_argument("--pi-k", type=float, help="pi_k(k) (Complete Path)")
    sub.add_argument("--damping", type=float)
    sub.add_argument("--m", type=int)
    sub.add_argument("--node", type=int)
    sub.add_argument("--approximate", action="store_true")
    sub.set_defaults(handler=run, bound=_variance)

    sub = bounds.add_parser("covariance", help="Sigma_ij(s) Complete Path")
    add_graph_arguments(sub)
    sub.add_argument("--i", type=int, required=True)
    sub.add_argument("--j", type=int, required=True)
    sub.set_defaults(handler=run, bound=_covariance)

    sub = bounds.add_parser("pairwise", help="P{Y_i <= Y_j}")
    sub.add_argument("--pi-i", type=float, required=True)
    sub.add_argument("--pi-j", type=float, required=True)
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--mode", choices=["exact", "clt"], default="clt")
    sub.set_defaults(handler=run, bound=_pairwise)

    for name, bound in (("basket", _basket), ("list", _list)):
        sub = bounds.add_parser(name, help=f"Оценка Бонферрони для top-k ({name})")
        _pi_source_arguments(sub)
        sub.add_argument("--k", type=int, required=True)
        sub.add_argument("--m", type=int, required=True)
        sub.add_argument("--method", type=parse_method, default=WalkMethod.END_POINT)
        sub.add_argument("--pairwise", choices=["clt", "exact"], default="clt")
        if name == "basket":
            sub.add_argument("--j-star", type=parse_j_star, default="auto", help="auto | plain | номер j*")
        sub.set_defaults(handler=run, bound=bound)

    sub = bounds.add_parser("order-stats", help="P{X_(s) <= k}")
    sub.add_argument("--p", type=float, required=True, help="pi_1 + ... + pi_k")
    sub.add_argument("--s", type=int, required=True)
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--mode", choices=["sum", "beta"], default="sum")
    sub.set_defaults(handler=run, bound=_order_stats)

    sub = bounds.add_parser("hit", help="P{Y_j >= r}")
    sub.add_argument("--pi", type=float, required=True)
    sub.add_argument("--r", type=int, required=True)
    sub.add_argument("--m", type=int, required=True)
    sub.set_defaults(handler=run, bound=_hit)

    sub = bounds.add_parser("mu", help="mu(y) пуассонизированной модели")
    sub.add_argument("--pi-tail", type=float_list, required=True)
    sub.add_argument("--m", type=float, required=True)
    sub.add_argument("--y", type=int, required=True)
    sub.set_defaults(handler=run, bound=_mu)

    sub = bounds.add_parser("em1", help="E(M1)")
    _pi_source_arguments(sub)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--m", type=float, required=True)
    sub.set_defaults(handler=run, bound=_em1)

    sub = bounds.add_parser("em1-curve", help="E(M1) по сетке m")
    _pi_source_arguments(sub)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--m-grid", type=float_list, required=True)
    sub.set_defaults(handler=run, bound=_em1_curve)

    sub = bounds.add_parser("detection", help="P{X_(rk) <= k} и P{Y_j >= r} по сетке m")
    _pi_source_arguments(sub)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--r", type=int, required=True)
    sub.add_argument("--j", type=int, required=True)
    sub.add_argument("--m-grid", type=int_list, required=True)
    sub.set_defaults(handler=run, bound=_detection)

    sub = bounds.add_parser("recommend-m", help="Достаточное m для E(M1) > (1-alpha)k")
    sub.add_argument("--a", type=float, required=True)
    sub.add_argument("--epsilon", type=float, required=True)
    sub.add_argument("--alpha", type=float, required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--pi-next", type=float, required=True, help="pi_(k+1)")
    sub.add_argument("--pi-tail", type=float_list)
    sub.set_defaults(handler=run, bound=_recommend_m)


def run(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    logger.info("[bounds] <- %s", args.bounds_command)
    result = args.bound(args)
    name = args.bounds_command.replace("-", "_")
    emit(args, name, result)
    parameters = {key: (value.value if hasattr(value, "value") else value)
                  for key, value in sorted(vars(args).items()) if key not in ("handler", "bound")}
    finish(args, parameters, [], started)
    return 0
