# pprtopk/commands/experiment.py

import argparse
import logging
import os
import time
from typing import List

from pydantic import Field

from pprtopk.commands.common import GraphRequest, add_graph_arguments, finish, int_list, parse_method, require_out
from pprtopk.models import WalkMethod
from pprtopk.topk_metrics import convergence_curve, write_curve_csv

logger = logging.getLogger(__name__)


class ExperimentRequest(GraphRequest):
    """Кривая сходимости: число верно найденных элементов корзины от m"""
    k: int = Field(..., ge=1)
    m_grid: List[int] = Field(..., min_length=1)
    repeats: int = Field(..., ge=1)
    rng: int = Field(0, ge=0)
    method: WalkMethod = WalkMethod.END_POINT


def register(subparsers) -> None:
    parser = subparsers.add_parser("experiment", help="Кривая сходимости top-k (CSV)")
    add_graph_arguments(parser)
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--m-grid", type=int_list, required=True, help="Например 100,1000,10000")
    parser.add_argument("--repeats", type=int, default=20)
    parser.add_argument("--rng", type=int, default=0)
    parser.add_argument("--method", type=parse_method, default=WalkMethod.END_POINT)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    request = ExperimentRequest(graph=args.graph, seed=args.seed, damping=args.damping, hosts=args.hosts,
                                labels=args.labels, dangling=args.dangling, edge_filter=args.edge_filter,
                                k=args.k, m_grid=args.m_grid, repeats=args.repeats, rng=args.rng,
                                method=args.method)
    logger.info("[experiment] <- %s", request)
    out = require_out(args)

    g = request.load_graph()
    rows = convergence_curve(g, request.walk_config(), request.method, request.k, request.m_grid,
                             request.repeats, request.rng, args.threads)
    write_curve_csv(rows, os.path.join(out, "curve.csv"))
    finish(args, request.model_dump(mode="json"), [request.rng], started)
    return 0
