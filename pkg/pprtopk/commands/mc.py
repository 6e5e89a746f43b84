# pprtopk/commands/mc.py

import argparse
import logging
import os
import time
from typing import Optional

from pydantic import Field

from pprtopk.commands.common import GraphRequest, add_graph_arguments, finish, parse_method, require_out
from pprtopk.config import ADAPTIVE_BATCH, ADAPTIVE_GAP
from pprtopk.exceptions import InvalidParameterError
from pprtopk.mc_engine import estimate, estimate_top_k, run_adaptive, run_walks
from pprtopk.models import WalkMethod
from pprtopk.utils.get_env import resolve_threads
from pprtopk.utils.output_utils import write_json

logger = logging.getLogger(__name__)


class McRequest(GraphRequest):
    """Запрос на Monte Carlo оценку"""
    method: WalkMethod = WalkMethod.END_POINT
    m: Optional[int] = Field(None, ge=1)
    k: int = Field(10, ge=1)
    rng: int = Field(0, ge=0)
    adaptive: bool = False
    gap: int = Field(ADAPTIVE_GAP, ge=1)
    batch: int = Field(ADAPTIVE_BATCH, ge=1)
    cap: int = Field(1_000_000, ge=1)


def register(subparsers) -> None:
    parser = subparsers.add_parser("mc", help="Monte Carlo End Point / Complete Path")
    add_graph_arguments(parser)
    parser.add_argument("--method", type=parse_method, default=WalkMethod.END_POINT,
                        help="endpoint | complete-path")
    parser.add_argument("--m", type=int, help="Число прогонов (без --adaptive)")
    parser.add_argument("--k", type=int, default=10)
    parser.add_argument("--rng", type=int, default=0, help="Базовое зерно RNG")
    parser.add_argument("--adaptive", action="store_true", help="Остановка по разрыву счетчиков")
    parser.add_argument("--d", dest="gap", type=int, default=ADAPTIVE_GAP)
    parser.add_argument("--batch", type=int, default=ADAPTIVE_BATCH)
    parser.add_argument("--cap", type=int, default=1_000_000)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """outcome.json + estimate.json + topk.json (+ adaptive.json) + manifest.json"""
    started = time.perf_counter()
    request = McRequest(graph=args.graph, seed=args.seed, damping=args.damping, hosts=args.hosts,
                        labels=args.labels, dangling=args.dangling, edge_filter=args.edge_filter,
                        method=args.method, m=args.m, k=args.k, rng=args.rng, adaptive=args.adaptive,
                        gap=args.gap, batch=args.batch, cap=args.cap)
    if not request.adaptive and request.m is None:
        raise InvalidParameterError("either --m or --adaptive is required")
    logger.info("[mc] <- %s", request)
    out = require_out(args)

    g = request.load_graph()
    cfg = request.walk_config()
    threads = resolve_threads(args.threads)
    if request.adaptive:
        outcome, adaptive = run_adaptive(g, cfg, request.k, request.gap, request.batch, request.cap,
                                         request.rng, request.method, threads)
        write_json(os.path.join(out, "adaptive.json"), adaptive)
    else:
        outcome = run_walks(g, cfg, request.method, request.m, request.rng, threads)

    est = estimate(outcome, cfg)
    write_json(os.path.join(out, "outcome.json"), outcome)
    write_json(os.path.join(out, "estimate.json"), est)
    write_json(os.path.join(out, "topk.json"), estimate_top_k(est, request.k))
    finish(args, request.model_dump(mode="json"), [request.rng], started)
    return 0
