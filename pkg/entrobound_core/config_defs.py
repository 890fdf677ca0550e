import logging
import os
from dataclasses import dataclass
from typing import Optional

# --- Default Fallback Constants ---
# These are used as fallbacks if values are not found in the INI file.

# Logging
DEFAULT_LOG_ENABLED = True
DEFAULT_LOG_FILE = "entrobound.log"
DEFAULT_LOG_LEVEL = "INFO"
DEFAULT_LOG_ERROR_FILE = "entrobound_error.log"
DEFAULT_LOG_ERROR_LEVEL = "WARNING"
DEFAULT_LOG_MAX_BYTES = 1024 * 1024 * 5
DEFAULT_LOG_BACKUP_COUNT = 3
DEFAULT_CONSOLE_LOG_LEVEL = "WARNING"

# Numerics
DEFAULT_RTOL = 1e-9
DEFAULT_WINDOW = 512
DEFAULT_TAIL_INITIAL_WINDOW = 64
DEFAULT_TAIL_MAX_TERMS = 2**26
DEFAULT_PLATEAU_RTOL = 1e-3

# Scan (sup over k)
DEFAULT_P_LT_Q_MAX_K = 2**14
DEFAULT_P_GT_Q_MIN_K = 64
DEFAULT_P_GT_Q_LOG_FACTOR = 8
DEFAULT_P_GT_Q_MAX_K = 2**14

# Oracle
DEFAULT_RESOLUTION_FACTOR = 4.0
DEFAULT_BISECTION_BUDGET = 30
DEFAULT_PACKING_CANDIDATES = 4096
DEFAULT_MAX_GRID_POINTS = 10**8
DEFAULT_MC_SAMPLES = 10**6
DEFAULT_SEED = 12345

# Output
DEFAULT_OUTPUT_FORMAT = "json"
DEFAULT_FLOAT_DIGITS = 17
SCHEMA_VERSION = 1

# Concurrency
THREADS_ENV_VAR = "ENTROBOUND_THREADS"
DEFAULT_THREADS = os.cpu_count() or 1


@dataclass(frozen=True)
class NumericsConfig:
    rtol: float = DEFAULT_RTOL
    window: int = DEFAULT_WINDOW
    tail_initial_window: int = DEFAULT_TAIL_INITIAL_WINDOW
    tail_max_terms: int = DEFAULT_TAIL_MAX_TERMS
    plateau_rtol: float = DEFAULT_PLATEAU_RTOL

    def __post_init__(self):
        if not 0.0 < self.rtol < 1.0:
            raise ValueError(f"rtol must lie in (0, 1), got {self.rtol}")
        if self.window < 2:
            raise ValueError(f"window must be at least 2, got {self.window}")
        if self.tail_initial_window < 1 or self.tail_max_terms < self.tail_initial_window:
            raise ValueError("tail window limits are inconsistent")


@dataclass(frozen=True)
class ScanConfig:
    p_lt_q_max_k: int = DEFAULT_P_LT_Q_MAX_K
    p_gt_q_min_k: int = DEFAULT_P_GT_Q_MIN_K
    p_gt_q_log_factor: int = DEFAULT_P_GT_Q_LOG_FACTOR
    p_gt_q_max_k: int = DEFAULT_P_GT_Q_MAX_K


@dataclass(frozen=True)
class OracleConfig:
    resolution_factor: float = DEFAULT_RESOLUTION_FACTOR
    bisection_budget: int = DEFAULT_BISECTION_BUDGET
    packing_candidates: int = DEFAULT_PACKING_CANDIDATES
    max_grid_points: int = DEFAULT_MAX_GRID_POINTS
    mc_samples: int = DEFAULT_MC_SAMPLES
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        # delta = eps / resolution_factor must satisfy delta <= eps / 4
        if self.resolution_factor < 4.0:
            raise ValueError(f"resolution_factor must be >= 4, got {self.resolution_factor}")

    def grid_resolution(self, eps: float) -> float:
        return eps / self.resolution_factor


def get_log_level_int(level_str: Optional[str], fallback: int = logging.INFO) -> int:
    if not level_str:
        return fallback
    return getattr(logging, level_str.split("#")[0].strip().upper(), fallback)
