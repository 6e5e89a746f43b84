# pprtopk/commands/exact.py

import argparse
import logging
import os
import time

from pydantic import Field

from pprtopk.commands.common import GraphRequest, add_graph_arguments, finish, require_out
from pprtopk.config import SOLVER_TOL
from pprtopk.exact_solver import solve_ppr, top_k
from pprtopk.utils.output_utils import write_json, write_ppr_tsv

logger = logging.getLogger(__name__)


class ExactRequest(GraphRequest):
    """Запрос на точное решение PPR"""
    k: int = Field(..., ge=1)
    tol: float = Field(SOLVER_TOL, gt=0.0)


def register(subparsers) -> None:
    parser = subparsers.add_parser("exact", help="Точный PPR и top-k (эталон)")
    add_graph_arguments(parser)
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--tol", type=float, default=SOLVER_TOL)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """ppr.tsv + topk.json + manifest.json"""
    started = time.perf_counter()
    request = ExactRequest(graph=args.graph, seed=args.seed, damping=args.damping, hosts=args.hosts,
                           labels=args.labels, dangling=args.dangling, edge_filter=args.edge_filter,
                           k=args.k, tol=args.tol)
    logger.info("[exact] <- %s", request)
    out = require_out(args)

    g = request.load_graph()
    vector = solve_ppr(g, request.walk_config(), request.tol)
    report = top_k(vector, request.k, g.labels or None)

    write_ppr_tsv(os.path.join(out, "ppr.tsv"), vector, g.labels or None)
    write_json(os.path.join(out, "topk.json"), report)
    finish(args, request.model_dump(mode="json"), [], started)
    logger.info("[exact] -> top-%d: %s", request.k, report.ordered_ids)
    return 0
