# pprtopk/utils/get_env.py

import logging
import os
from typing import Optional

logger = logging.getLogger(__name__)


def get_int_env(var_name, default: Optional[int] = None) -> Optional[int]:
    value = os.getenv(var_name)
    if value is None or not value.strip():
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning("[get_int_env] %s='%s' is not an integer, using default %s", var_name, value, default)
        return default


def resolve_threads(cli_value: Optional[int] = None) -> int:
    """
    Число рабочих потоков: флаг CLI > PPRTOPK_THREADS > число ядер.
    """
    if cli_value is not None and cli_value > 0:
        return cli_value
    env_value = get_int_env("PPRTOPK_THREADS")
    if env_value is not None and env_value > 0:
        return env_value
    return os.cpu_count() or 1
