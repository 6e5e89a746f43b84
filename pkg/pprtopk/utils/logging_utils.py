# pprtopk/utils/logging_utils.py

import logging

VALID_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']


def set_log_level(level_name: str):
    """
    Динамически изменяет уровень логирования (корневой логгер, обработчики и фильтры).
    """
    if level_name.upper() not in VALID_LEVELS:
        raise ValueError(f"Invalid log level. Must be one of: {VALID_LEVELS}")
    level = getattr(logging, level_name.upper())

    logger = logging.getLogger()
    previous = logging.getLevelName(logger.level)
    logger.setLevel(level)

    for handler in logger.handlers:
        handler.setLevel(level)
        for filter_obj in handler.filters:
            if hasattr(filter_obj, 'logger_level'):
                filter_obj.logger_level = level

    logger.debug("Log level changed from %s to %s", previous, level_name.upper())
