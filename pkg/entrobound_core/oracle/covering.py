# entrobound_core/oracle/covering.py
"""Brute-force covering and packing numbers of D_sigma B_p^k inside l_q^k.

covering_upper returns counts that are true upper bounds for the continuous
body; packing_lower and volume_lower_nd return true lower bounds.
"""
import itertools
import logging
import math
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import qmc

from entrobound_core.bounds.volume import log_volume_unit_balls
from entrobound_core.config_defs import (
    DEFAULT_MAX_GRID_POINTS,
    DEFAULT_PACKING_CANDIDATES,
    DEFAULT_RESOLUTION_FACTOR,
    DEFAULT_SEED,
)
from entrobound_core.errors import GridTooLargeError, ResolutionTooCoarseError
from entrobound_core.oracle.finite_diag import CoveringEstimate, FiniteDiag, lq_norm
from entrobound_core.sequences.exponent_pair import inverse
from entrobound_core.sequences.log_real import LogReal

logger = logging.getLogger("entrobound.oracle.covering")

# relative snap applied before ceilings of lower counts, so exact integer ratios are not pushed up by rounding
_CEIL_SNAP = 1e-9
_MAX_LOG_COUNT = 700.0
# inward pull on the boundary corners sigma * k^(-1/p)
_INWARD_SNAP = 1e-12


def snapped_ceil(value: float) -> int:
    return max(1, math.ceil(value - _CEIL_SNAP * max(1.0, value)))


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if not (math.isfinite(eps) and eps > 0):
        raise ValueError(f"eps must be a positive finite real, got {eps}")
    return eps


def _pairwise(left: np.ndarray, right: np.ndarray, q: float) -> np.ndarray:
    return lq_norm(left[:, None, :] - right[None, :, :], q)


def body_grid(diag: FiniteDiag, delta: float, max_points: int = DEFAULT_MAX_GRID_POINTS) -> np.ndarray:
    """Centers of the delta-cells of the lattice delta*Z^k that meet D_sigma B_p^k."""
    axes = []
    total = 1
    for sigma in diag.sigma:
        half = int(math.ceil(sigma / delta + 0.5))
        axes.append(delta * np.arange(-half, half + 1, dtype=float))
        total *= 2 * half + 1
    if total > max_points:
        raise GridTooLargeError(f"grid of {total} points exceeds the {max_points} point guard")
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, diag.k)
    # the body is a coordinate-monotone set, so a cell meets it iff its corner nearest 0 does
    nearest = np.maximum(np.abs(mesh) - delta / 2.0, 0.0)
    return mesh[diag.contains(nearest)]


def center_radius(eps: float, delta: float, k: int, q: float) -> float:
    """Ball radius around grid centers that still covers whole delta-cells within eps."""
    if q >= 1.0:
        radius = eps - delta * k ** inverse(q) / 2.0
    else:
        slack = eps**q - k * (delta / 2.0) ** q
        radius = slack ** (1.0 / q) if slack > 0 else 0.0
    if radius <= 0:
        raise ResolutionTooCoarseError(f"grid resolution {delta} leaves no room inside radius {eps} for q={q}")
    return radius


class _Neighborhoods:
    """Ball queries over a point set; a k-d tree for q >= 1, brute force for quasi-norms."""

    def __init__(self, points: np.ndarray, q: float):
        self.points = points
        self.q = q
        self._tree = cKDTree(points) if q >= 1.0 else None

    def within(self, center: np.ndarray, radius: float) -> np.ndarray:
        if self._tree is not None:
            return np.asarray(self._tree.query_ball_point(center, radius, p=self.q), dtype=int)
        distances = lq_norm(self.points - center, self.q)
        return np.flatnonzero(distances <= radius)


def greedy_cover_count(points: np.ndarray, radius: float, q: float, limit: Optional[int] = None) -> int:
    """Greedily covers the points with l_q-balls of the given radius centered at points.

    With a limit, counting stops as soon as the count exceeds it.
    """
    uncovered = np.ones(len(points), dtype=bool)
    neighborhoods = _Neighborhoods(points, q)
    # any point a candidate covers lies within this distance of the anchor
    reach = 2.0 * radius if q >= 1.0 else 2.0 ** inverse(q) * radius
    count = 0
    while True:
        remaining = np.flatnonzero(uncovered)
        if len(remaining) == 0 or (limit is not None and count > limit):
            return count
        anchor_index = remaining[0]
        anchor = points[anchor_index]
        candidates = neighborhoods.within(anchor, radius)
        local = neighborhoods.within(anchor, reach)
        local = local[uncovered[local]]
        hits = _pairwise(points[candidates], points[local], q) <= radius
        best = int(np.argmax(hits.sum(axis=1)))
        uncovered[local[hits[best]]] = False
        uncovered[anchor_index] = False
        count += 1


def covering_upper(
    diag: FiniteDiag,
    eps: float,
    grid_resolution: Optional[float] = None,
    max_grid_points: int = DEFAULT_MAX_GRID_POINTS,
    limit: Optional[int] = None,
) -> int:
    """An upper bound on N(eps): the size of a greedy eps-cover of D_sigma B_p^k in l_q^k.

    With a limit the result is only exact up to limit + 1.
    """
    eps = _check_eps(eps)
    delta = eps / DEFAULT_RESOLUTION_FACTOR if grid_resolution is None else float(grid_resolution)
    if not 0 < delta <= eps / 4.0 * (1.0 + 1e-12):
        raise ResolutionTooCoarseError(f"grid resolution {delta} must lie in (0, eps/4] for eps={eps}")
    if diag.k == 1:
        # interval covering is solved exactly
        return max(1, math.ceil(diag.sigma[0] / eps))

    radius = center_radius(eps, delta, diag.k, diag.q)
    points = body_grid(diag, delta, max_grid_points)
    count = greedy_cover_count(points, radius, diag.q, limit)
    logger.debug(f"covering_upper k={diag.k} eps={eps:.6g}: {len(points)} grid points, {count} balls")
    return count


def extreme_points(diag: FiniteDiag) -> np.ndarray:
    """Sign-diagonal boundary points, then the axis points, of D_sigma B_p^k; all lie in the body."""
    sigma = diag.sigma_array
    scale = diag.k ** -inverse(diag.p) * (1.0 - _INWARD_SNAP)
    corners = [np.array(signs) * sigma * scale for signs in itertools.product((1.0, -1.0), repeat=diag.k)]
    axis_points = []
    for i in range(diag.k):
        for sign in (1.0, -1.0):
            point = np.zeros(diag.k)
            point[i] = sign * sigma[i]
            axis_points.append(point)
    points = np.array(corners + axis_points)
    return points[diag.contains(points)]


def candidate_stream(diag: FiniteDiag, seed: int, candidates: int) -> np.ndarray:
    """Extreme points followed by scrambled Halton points of the bounding box that fall in the body."""
    halton = qmc.Halton(d=diag.k, scramble=True, seed=seed)
    box = (2.0 * halton.random(candidates) - 1.0) * diag.sigma_array
    return np.vstack([extreme_points(diag), box[diag.contains(box)]])


def packing_lower(
    diag: FiniteDiag, eps: float, seed: int = DEFAULT_SEED, candidates: int = DEFAULT_PACKING_CANDIDATES
) -> int:
    """Size of a greedily built 2*eps-separated subset of D_sigma B_p^k (a lower bound on P(eps))."""
    eps = _check_eps(eps)
    stream = candidate_stream(diag, seed, candidates)
    accepted = np.empty_like(stream)
    size = 0
    for point in stream:
        if size == 0 or lq_norm(accepted[:size] - point, diag.q).min() > 2.0 * eps:
            accepted[size] = point
            size += 1
    return size


def packing_covering_lower(
    diag: FiniteDiag, eps: float, seed: int = DEFAULT_SEED, candidates: int = DEFAULT_PACKING_CANDIDATES
) -> int:
    """N(eps) >= P(C_q eps)."""
    return packing_lower(diag, diag.pair.c_q * _check_eps(eps), seed, candidates)


def volume_lower_nd(diag: FiniteDiag, eps: float) -> int:
    """ceil(vol(D_sigma B_p^k) / vol(eps B_q^k))."""
    eps = _check_eps(eps)
    dims = np.array([diag.k])
    log_ratio = float(log_volume_unit_balls(diag.p, dims)[0] - log_volume_unit_balls(diag.q, dims)[0])
    log_count = diag.log_det + log_ratio - diag.k * math.log(eps)
    # a capped count is still a lower bound
    return snapped_ceil(math.exp(min(log_count, _MAX_LOG_COUNT)))


def covering_bound_rhs(diag: FiniteDiag, eps: float) -> LogReal:
    """(2 C_p)^k vol(B_p^k)/vol(B_q^k) prod (||id_{q,p}|| + C_q sigma_i / eps), an upper bound on N(2 eps)."""
    eps = _check_eps(eps)
    pair = diag.pair
    dims = np.array([diag.k])
    log_ratio = float(log_volume_unit_balls(diag.p, dims)[0] - log_volume_unit_balls(diag.q, dims)[0])
    factors = np.log(diag.identity_norm + pair.c_q * diag.sigma_array / eps)
    return LogReal(diag.k * math.log(2.0 * pair.c_p) + log_ratio + float(np.sum(factors)))


def covering_estimate(
    diag: FiniteDiag,
    eps: float,
    grid_resolution: Optional[float] = None,
    seed: int = DEFAULT_SEED,
    candidates: int = DEFAULT_PACKING_CANDIDATES,
    max_grid_points: int = DEFAULT_MAX_GRID_POINTS,
) -> CoveringEstimate:
    eps = _check_eps(eps)
    delta = eps / DEFAULT_RESOLUTION_FACTOR if grid_resolution is None else float(grid_resolution)
    upper = covering_upper(diag, eps, delta, max_grid_points)
    lower = max(volume_lower_nd(diag, eps), packing_covering_lower(diag, eps, seed, candidates))
    return CoveringEstimate(eps, upper, lower, delta, seed)
