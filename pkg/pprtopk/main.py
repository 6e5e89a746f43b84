# pprtopk/main.py

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from pprtopk.commands import bounds, disambig, exact, experiment, mc
from pprtopk.config import APP_VERSION, LOG_LEVEL
from pprtopk.exceptions import PprTopKError
from pprtopk.logging_config import setup_logging
from pprtopk.utils.logging_utils import set_log_level

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME_ERROR = 1
EXIT_USAGE_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pprtopk",
        description="Top-k Personalized PageRank: точное решение, Monte Carlo, статистические оценки",
    )
    parser.add_argument("--log-level", default=LOG_LEVEL, help="DEBUG | INFO | WARNING | ERROR | CRITICAL")
    parser.add_argument("--threads", type=int, help="Число потоков (по умолчанию PPRTOPK_THREADS или число ядер)")
    parser.add_argument("--out", help="Каталог для результатов")
    parser.add_argument("--version", action="version", version=f"%(prog)s {APP_VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Регистрация команд
    for module in (exact, mc, bounds, experiment, disambig):
        module.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE_ERROR if e.code not in (0, None) else EXIT_OK

    setup_logging()
    try:
        set_log_level(args.log_level)
    except ValueError as e:
        logger.error("[main] %s", e)
        return EXIT_USAGE_ERROR

    try:
        return args.handler(args)
    except PprTopKError as e:
        logger.error("[main] %s: %s", type(e).__name__, e)
        return e.exit_code
    except ValidationError as e:
        logger.error("[main] invalid parameters: %s", e)
        return EXIT_USAGE_ERROR
    except OSError as e:
        logger.error("[main] I/O error: %s", e)
        return EXIT_RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
