# pprtopk/commands/common.py

import argparse
import logging
import os
import sys
import time
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field

from pprtopk.config import APP_VERSION
from pprtopk.exceptions import InvalidParameterError
from pprtopk.graph import Graph, load_edge_list, load_host_file, load_label_file
from pprtopk.models import DanglingPolicy, EdgeFilter, RunManifest, WalkConfig, WalkMethod
from pprtopk.utils.output_utils import dumps_sorted, write_json, write_manifest

logger = logging.getLogger(__name__)

METHOD_CHOICES = {
    "endpoint": WalkMethod.END_POINT,
    "end_point": WalkMethod.END_POINT,
    "complete-path": WalkMethod.COMPLETE_PATH,
    "complete_path": WalkMethod.COMPLETE_PATH,
}


class GraphRequest(BaseModel):
    """Общие параметры команд, работающих с графом"""
    graph: str
    seed: int = Field(..., ge=0)
    damping: float = Field(..., gt=0.0, lt=1.0)
    hosts: Optional[str] = None
    labels: Optional[str] = None
    dangling: DanglingPolicy = DanglingPolicy.SELF_LOOP
    edge_filter: EdgeFilter = EdgeFilter.ALL

    def walk_config(self) -> WalkConfig:
        return WalkConfig(damping=self.damping, seed_node=self.seed,
                          dangling_policy=self.dangling, edge_filter=self.edge_filter)

    def load_graph(self) -> Graph:
        g = load_edge_list(self.graph)
        if self.hosts:
            g = load_host_file(self.hosts, g)
        if self.labels:
            g = g.with_labels(load_label_file(self.labels))
        return g


def float_list(value: str) -> List[float]:
    try:
        return [float(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{value}'")


def int_list(value: str) -> List[int]:
    try:
        return [int(float(item)) for item in value.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{value}'")


def parse_method(value: str) -> WalkMethod:
    try:
        return METHOD_CHOICES[value]
    except KeyError:
        raise argparse.ArgumentTypeError(f"method must be 'endpoint' or 'complete-path', got '{value}'")


def add_graph_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--graph", required=required, help="Файл ребер src<TAB>dst")
    parser.add_argument("--seed", type=int, required=required, help="Стартовый узел s")
    parser.add_argument("--damping", type=float, required=required, help="Параметр c в (0, 1)")
    parser.add_argument("--hosts", help="Файл node<TAB>host")
    parser.add_argument("--labels", help="Файл node<TAB>label")
    parser.add_argument("--dangling", choices=[p.value for p in DanglingPolicy], default=DanglingPolicy.SELF_LOOP.value)
    parser.add_argument("--edge-filter", choices=[f.value for f in EdgeFilter], default=EdgeFilter.ALL.value)


def graph_request(args: argparse.Namespace) -> GraphRequest:
    return GraphRequest(graph=args.graph, seed=args.seed, damping=args.damping, hosts=args.hosts,
                        labels=args.labels, dangling=args.dangling, edge_filter=args.edge_filter)


def require_out(args: argparse.Namespace) -> str:
    if not args.out:
        raise InvalidParameterError(f"command '{args.command}' requires --out DIR")
    os.makedirs(args.out, exist_ok=True)
    return args.out


def emit(args: argparse.Namespace, name: str, payload: Union[BaseModel, Dict[str, Any], list]) -> None:
    """Результат в --out/<name>.json или в stdout"""
    if args.out:
        write_json(os.path.join(args.out, f"{name}.json"), payload)
    else:
        sys.stdout.write(dumps_sorted(payload))


def finish(args: argparse.Namespace, parameters: Dict[str, Any], rng_seeds: List[int], started: float) -> None:
    """manifest.json рядом с результатами (только при --out)"""
    if not args.out:
        return
    manifest = RunManifest(
        command=args.command if not getattr(args, "bounds_command", None) else f"bounds {args.bounds_command}",
        parameters=parameters,
        rng_seeds=rng_seeds,
        version=APP_VERSION,
        wall_time_sec=round(time.perf_counter() - started, 6),
    )
    write_manifest(args.out, manifest)
    logger.info("[finish] %s done in %.3f s", manifest.command, manifest.wall_time_sec)
