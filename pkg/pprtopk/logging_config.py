# pprtopk/logging_config.py

import logging
import sys
from typing import Optional

from pprtopk.config import LOG_FILE, LOG_LEVEL

MAX_CHARS_SIZE = 4000


class TrimFilter(logging.Filter):
    """
    Фильтр для обрезки длинных сообщений с динамическим уровнем логирования.
    Длинные сообщения появляются при выводе векторов и списков узлов.
    """

    def __init__(self, logger_level=logging.INFO):
        super().__init__()
        self.logger_level = logger_level

    def filter(self, record):
        if record.levelno < self.logger_level:
            return False

        # Обрезаем только INFO и DEBUG, предупреждения и ошибки пропускаем как есть
        if record.levelno <= logging.INFO:
            if record.args:
                try:
                    formatted_msg = record.msg % record.args
                except (TypeError, ValueError):
                    formatted_msg = None
                if formatted_msg is not None and len(formatted_msg) > MAX_CHARS_SIZE:
                    record.msg = formatted_msg[:MAX_CHARS_SIZE] + "... [trimmed]"
                    record.args = ()
            elif isinstance(record.msg, str) and len(record.msg) > MAX_CHARS_SIZE:
                record.msg = record.msg[:MAX_CHARS_SIZE] + "... [trimmed]"

        return True


def setup_logging(level_name: str = LOG_LEVEL, log_file: Optional[str] = LOG_FILE):
    """
    Настройка логирования: консоль (stderr) и, опционально, файл.

    stdout остается свободным для результатов команд CLI.
    """
    level = getattr(logging, level_name.upper(), logging.INFO)
    logger = logging.getLogger()
    logger.setLevel(level)

    # Очищаем существующие обработчики
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    formatter = logging.Formatter(
        '%(asctime)s,%(msecs)03d [%(levelname)s] %(filename)s:%(lineno)d %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))

    for handler in handlers:
        handler.setLevel(level)
        handler.setFormatter(formatter)
        handler.addFilter(TrimFilter(level))
        logger.addHandler(handler)


    logger.debug("Logging configured: level=%s, max_message_length=%d chars", level_name.upper(), MAX_CHARS_SIZE)
