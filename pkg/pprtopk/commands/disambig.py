# pprtopk/commands/disambig.py

import argparse
import logging
import os
import time

from pydantic import BaseModel, Field

from pprtopk.commands.common import finish, require_out
from pprtopk.config import (
    DISAMBIG_DAMPING,
    DISAMBIG_MIN_OVERLAP,
    DISAMBIG_RELATED_K,
    DISAMBIG_RUNS,
    DISAMBIG_THRESHOLD,
)
from pprtopk.corpus_loader import CONTENT_FIELDS, load_corpus
from pprtopk.services.disambiguation_service import DisambiguationService
from pprtopk.utils.output_utils import write_json

logger = logging.getLogger(__name__)


class DisambigRequest(BaseModel):
    """Запрос на кластеризацию персональных страниц"""
    corpus: str
    related_k: int = Field(DISAMBIG_RELATED_K, ge=1)
    damping: float = Field(DISAMBIG_DAMPING, gt=0.0, lt=1.0)
    m: int = Field(DISAMBIG_RUNS, ge=1)
    threshold: float = Field(DISAMBIG_THRESHOLD, ge=0.0, le=1.0)
    min_overlap: int = Field(DISAMBIG_MIN_OVERLAP, ge=1)
    rng: int = Field(0, ge=0)
    content_field: str = "text"
    structure_only: bool = False


def register(subparsers) -> None:
    parser = subparsers.add_parser("disambig", help="Кластеризация страниц с одинаковым именем")
    parser.add_argument("--corpus", required=True, help="JSON lines корпус")
    parser.add_argument("--related-k", type=int, default=DISAMBIG_RELATED_K)
    parser.add_argument("--damping", type=float, default=DISAMBIG_DAMPING)
    parser.add_argument("--m", type=int, default=DISAMBIG_RUNS)
    parser.add_argument("--threshold", type=float, default=DISAMBIG_THRESHOLD)
    parser.add_argument("--min-overlap", type=int, default=DISAMBIG_MIN_OVERLAP)
    parser.add_argument("--rng", type=int, default=0)
    parser.add_argument("--content-field", choices=CONTENT_FIELDS, default="text")
    parser.add_argument("--structure-only", action="store_true", help="Без HAC по содержимому")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """clusters.json + manifest.json"""
    started = time.perf_counter()
    request = DisambigRequest(corpus=args.corpus, related_k=args.related_k, damping=args.damping, m=args.m,
                              threshold=args.threshold, min_overlap=args.min_overlap, rng=args.rng,
                              content_field=args.content_field, structure_only=args.structure_only)
    logger.info("[disambig] <- %s", request)
    out = require_out(args)

    pages = load_corpus(request.corpus, request.content_field)
    service = DisambiguationService(
        related_k=request.related_k,
        damping=request.damping,
        runs_m=request.m,
        threshold=request.threshold,
        min_overlap=request.min_overlap,
        rng_seed=request.rng,
        threads=args.threads,
        use_content=not request.structure_only,
    )
    result = service.run(pages)
    write_json(os.path.join(out, "clusters.json"), result)
    finish(args, request.model_dump(mode="json"), [request.rng], started)
    return 0
