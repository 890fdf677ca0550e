import math

import numpy as np
import pytest

from entrobound_core.bounds.volume import (
    log_volume_ratio_roots,
    volume_ratio,
    volume_ratio_root_envelope,
    volume_unit_ball,
)


@pytest.mark.parametrize(
    "p, k, expected",
    [
        (2.0, 2, math.pi),
        (1.0, 3, 4.0 / 3.0),
        (math.inf, 5, 32.0),
        (2.0, 3, 4.0 * math.pi / 3.0),
        (1.0, 1, 2.0),
    ],
)
def test_unit_ball_volumes(p, k, expected):
    assert volume_unit_ball(p, k).value == pytest.approx(expected, rel=1e-12)


def test_large_dimensions_stay_finite_in_log_domain():
    log_volume = volume_unit_ball(2.0, 10_000).log_value
    assert math.isfinite(log_volume)
    assert log_volume < -10_000


def test_invalid_arguments():
    with pytest.raises(ValueError):
        volume_unit_ball(2.0, 0)
    with pytest.raises(ValueError):
        volume_unit_ball(0.0, 2)


def test_equal_exponents_give_ratio_one():
    ratio = volume_ratio(1.5, 1.5, 7)
    assert ratio.log_ratio == 0.0
    assert ratio.ratio.value == 1.0
    assert np.all(log_volume_ratio_roots(3.0, 3.0, 10) == 0.0)


def test_ratio_matches_the_two_volumes():
    ratio = volume_ratio(1.0, 2.0, 2)
    assert ratio.ratio.value == pytest.approx(2.0 / math.pi)
    assert ratio.log_root == pytest.approx(0.5 * math.log(2.0 / math.pi))


@pytest.mark.parametrize("p, q", [(1.0, 2.0), (0.5, math.inf), (2.0, 1.0), (1.0, math.inf)])
def test_root_slope_is_bounded(p, q):
    count = 1024
    roots = log_volume_ratio_roots(p, q, count)
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    inv_q = 0.0 if math.isinf(q) else 1.0 / q
    adjusted = roots - (inv_q - inv_p) * np.log(np.arange(1, count + 1))
    assert np.ptp(adjusted) < 2.0


@pytest.mark.parametrize("p, q", [(1.0, 2.0), (1.0, math.inf), (0.5, 1.0)])
def test_root_envelope_dominates_later_roots(p, q):
    roots = log_volume_ratio_roots(p, q, 2048)
    for k0 in (1, 2, 5, 17, 100, 1000):
        assert np.max(roots[k0 - 1:]) <= volume_ratio_root_envelope(p, q, k0) + 1e-12
