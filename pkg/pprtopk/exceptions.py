# pprtopk/exceptions.py
"""
Иерархия ошибок библиотеки.

Каждая ошибка несет код завершения CLI (аналог HTTP статуса):
1 - ошибка выполнения/сходимости, 2 - ошибка использования.
"""
from typing import Optional


class PprTopKError(Exception):
    """Базовая ошибка библиотеки"""
    exit_code = 1


class InvalidParameterError(PprTopKError, ValueError):
    """Нарушено предусловие операции (неверные аргументы)"""
    exit_code = 2


class GraphFormatError(PprTopKError):
    """Ошибка разбора файла графа"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class CorpusFormatError(GraphFormatError):
    """Ошибка разбора корпуса страниц (JSON lines)"""


class ConvergenceError(PprTopKError):
    """Итерационный решатель не сошелся за отведенное число итераций"""

    def __init__(self, residual: float, iterations: int, tol: float):
        self.residual = residual
        self.iterations = iterations
        self.tol = tol
        super().__init__(
            f"solver did not converge in {iterations} iterations: residual={residual:.3e}, tol={tol:.1e}"
        )


class DegenerateInputError(PprTopKError):
    """Вход корректен формально, но задача вырождена (равенства, нулевая дисперсия)"""
