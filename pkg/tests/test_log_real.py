import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from entrobound_core.sequences.log_real import LogReal

finite_logs = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


def test_zero_is_negative_infinity():
    zero = LogReal.zero()
    assert zero.is_zero
    assert zero.value == 0.0
    assert zero.linear_or_none == 0.0
    assert (zero * LogReal.from_value(5.0)).is_zero


def test_rejects_nan_and_positive_infinity():
    with pytest.raises(ValueError):
        LogReal(math.nan)
    with pytest.raises(ValueError):
        LogReal(math.inf)
    with pytest.raises(ValueError):
        LogReal.from_value(-1.0)


def test_arithmetic_matches_linear_values():
    a, b = LogReal.from_value(3.0), LogReal.from_value(0.5)
    assert (a * b).value == pytest.approx(1.5)
    assert (a / b).value == pytest.approx(6.0)
    assert (a + b).value == pytest.approx(3.5)
    assert (a**2).value == pytest.approx(9.0)
    assert (2.0 * b).value == pytest.approx(1.0)


def test_underflowing_values_stay_representable():
    # exp(-a e^(lambda n)) for n = 10 has no double representation
    tiny = LogReal(-math.exp(10.0))
    assert tiny.value == 0.0
    assert tiny.linear_or_none is None
    assert tiny.log10 == pytest.approx(-math.exp(10.0) / math.log(10.0))


def test_sum_uses_log_sum_exp():
    terms = [LogReal(-1000.0), LogReal(-1000.0)]
    assert LogReal.sum(terms).log_value == pytest.approx(-1000.0 + math.log(2.0))
    assert LogReal.sum([]).is_zero


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        LogReal.one() / LogReal.zero()


@given(finite_logs, finite_logs)
def test_ordering_follows_logs(x, y):
    assert (LogReal(x) <= LogReal(y)) == (x <= y)


@given(finite_logs, finite_logs)
def test_addition_dominates_both_terms(x, y):
    total = LogReal(x) + LogReal(y)
    assert total.log_value >= max(x, y)
    assert total.log_value <= max(x, y) + math.log(2.0) + 1e-12
