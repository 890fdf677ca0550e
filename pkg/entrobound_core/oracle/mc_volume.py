# entrobound_core/oracle/mc_volume.py
import math
from typing import Tuple

import numpy as np

from entrobound_core.config_defs import DEFAULT_MC_SAMPLES, DEFAULT_SEED
from entrobound_core.errors import DimensionCapError
from entrobound_core.oracle.finite_diag import MAX_ORACLE_DIMENSION, in_unit_ball

_MIN_SAMPLES = 10**4
_CHUNK = 1 << 18


def mc_volume(p: float, k: int, samples: int = DEFAULT_MC_SAMPLES, seed: int = DEFAULT_SEED) -> Tuple[float, float]:
    """Hit-or-miss estimate of vol(B_p^k) inside [-1, 1]^k, with its standard error."""
    if not 1 <= k <= MAX_ORACLE_DIMENSION:
        raise DimensionCapError(f"mc_volume works in dimensions 1..{MAX_ORACLE_DIMENSION}, got k={k}")
    if samples < _MIN_SAMPLES:
        raise ValueError(f"mc_volume needs at least {_MIN_SAMPLES} samples, got {samples}")
    if math.isnan(p) or p <= 0:
        raise ValueError(f"exponent must lie in (0, inf], got {p}")

    rng = np.random.default_rng(seed)
    hits = 0
    drawn = 0
    while drawn < samples:
        size = min(_CHUNK, samples - drawn)
        points = rng.uniform(-1.0, 1.0, size=(size, k))
        hits += int(np.count_nonzero(in_unit_ball(points, p)))
        drawn += size

    box = 2.0**k
    fraction = hits / samples
    return box * fraction, box * math.sqrt(fraction * (1.0 - fraction) / samples)
