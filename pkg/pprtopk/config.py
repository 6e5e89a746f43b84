# pprtopk/config.py

import os
from dotenv import load_dotenv

load_dotenv()

APP_VERSION = os.getenv("APP_VERSION", "0.9.0")

LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
# Файл лога не создается, если переменная не задана
LOG_FILE = os.getenv("LOG_FILE")

#
# Точный решатель
#
SOLVER_TOL = float(os.getenv("SOLVER_TOL", "1e-12"))
SOLVER_CACHE_SIZE = int(os.getenv("SOLVER_CACHE_SIZE", "256"))  # количество закешированных решений
DENSE_SOLVER_MAX_N = int(os.getenv("DENSE_SOLVER_MAX_N", "200"))

#
# Monte Carlo
#
# Число прогонов в одном RNG-блоке. Поток случайных чисел блока определяется
# парой (rng_seed, номер блока), поэтому результат не зависит от числа потоков.
# ВНИМАНИЕ: изменение значения меняет сами траектории (но не их распределение).
WALK_BLOCK_SIZE = int(os.getenv("WALK_BLOCK_SIZE", "4096"))
ADAPTIVE_GAP = int(os.getenv("ADAPTIVE_GAP", "2"))
ADAPTIVE_BATCH = int(os.getenv("ADAPTIVE_BATCH", "100"))

#
# Статистические оценки
#
EXACT_PAIRWISE_MAX_M = int(os.getenv("EXACT_PAIRWISE_MAX_M", "500"))  # O(m^2) слагаемых
JSTAR_SCAN_LIMIT = int(os.getenv("JSTAR_SCAN_LIMIT", "1024"))
M1_TRUNCATION_EPS = float(os.getenv("M1_TRUNCATION_EPS", "1e-12"))
# Число элементов матрицы (y, узел хвоста) в одном блоке при расчете E(M1)
M1_CHUNK_ELEMENTS = int(os.getenv("M1_CHUNK_ELEMENTS", str(1 << 22)))

#
# Разрешение неоднозначности имен
#
DISAMBIG_RELATED_K = int(os.getenv("DISAMBIG_RELATED_K", "8"))
DISAMBIG_DAMPING = float(os.getenv("DISAMBIG_DAMPING", "0.2"))
DISAMBIG_RUNS = int(os.getenv("DISAMBIG_RUNS", "2000"))
DISAMBIG_THRESHOLD = float(os.getenv("DISAMBIG_THRESHOLD", "0.2"))  # порог HAC, подбирается вручную
DISAMBIG_MIN_OVERLAP = int(os.getenv("DISAMBIG_MIN_OVERLAP", "1"))
PROFILE_SIZE = int(os.getenv("PROFILE_SIZE", "30"))

STOPWORDS_FILE = os.getenv("STOPWORDS_FILE", "stopwords.txt")
