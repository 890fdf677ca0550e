import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entrobound_core.errors import IndexOutOfRangeError, SequenceDivergenceError, UnusableTailError
from entrobound_core.sequences import (
    ExponentPair,
    Explicit,
    ExpExp,
    ExpLog,
    ExpPoly,
    Geometric,
    PolyLog,
    Polynomial,
    TailModel,
    eval_sigma,
    first_entropy_bracket,
    geometric_mean,
    log_geometric_means,
    operator_norm,
    partial_sum_inv,
    tail,
    tail_bracket,
    tail_sequence,
)

RTOL = 1e-9


class TestEvaluation:
    def test_geometric(self):
        assert eval_sigma(Geometric(1.0, 2.0), 3).value == pytest.approx(0.125)

    def test_polynomial(self):
        assert eval_sigma(Polynomial(1.0, 2.0), 10).value == pytest.approx(0.01)

    def test_expexp_stays_in_log_domain(self):
        assert eval_sigma(ExpExp(1.0, 1.0), 2).log_value == pytest.approx(-math.e**2)
        assert eval_sigma(ExpExp(1.0, 1.0), 50).value == 0.0
        assert eval_sigma(ExpExp(1.0, 1.0), 50).log_value == pytest.approx(-math.exp(50.0))

    def test_polylog_and_explog(self):
        assert eval_sigma(PolyLog(1.0, 1.0, 2.0), 3).value == pytest.approx(1.0 / (3.0 * math.log(4.0) ** 2))
        assert eval_sigma(ExpLog(1.0, 1.0), 5).value == pytest.approx(0.2)
        assert eval_sigma(ExpPoly(1.0, 0.5), 4).value == pytest.approx(math.exp(-2.0))

    def test_exponential_family_amplitude(self):
        assert eval_sigma(ExpExp(1.0, 1.0, 3.0), 2).log_value == pytest.approx(math.log(3.0) - math.e**2)
        assert eval_sigma(ExpLog(1.0, 2.0).scaled(0.5), 1).value == pytest.approx(0.5)
        scaled = ExpPoly(1.0, 1.0).scaled(2.0)
        assert tail(scaled, 3, 1.0).value == pytest.approx(2.0 * tail(ExpPoly(1.0, 1.0), 3, 1.0).value, rel=1e-9)

    @pytest.mark.parametrize("n", [0, -3, 1.5, True])
    def test_index_must_be_positive_integer(self, n):
        with pytest.raises(IndexOutOfRangeError):
            eval_sigma(Geometric(1.0, 2.0), n)

    def test_explicit_without_tail_stops_at_prefix(self):
        spec = Explicit((1.0, 0.5, 0.25))
        assert spec.max_index == 3
        assert eval_sigma(spec, 3).value == pytest.approx(0.25)
        with pytest.raises(IndexOutOfRangeError):
            eval_sigma(spec, 4)

    def test_explicit_tails(self):
        zero = Explicit((1.0, 0.5), TailModel.zero())
        assert eval_sigma(zero, 7).is_zero
        assert zero.support_length == 2
        geometric = Explicit((1.0, 0.5), TailModel.geometric_extension(0.5))
        assert eval_sigma(geometric, 4).value == pytest.approx(0.125)
        assert geometric.support_length is None

    def test_log_sigma_range_matches_pointwise(self):
        spec = PolyLog(2.0, 0.75, 1.5)
        logs = spec.log_sigma_range(2, 40)
        assert logs == pytest.approx([spec.log_sigma(n) for n in range(2, 40)])


class TestMembership:
    def test_polynomial_threshold(self):
        assert Polynomial(1.0, 2.0).in_ell(1.0)
        assert not Polynomial(1.0, 1.0).in_ell(1.0)

    def test_polylog_boundary_needs_log_exponent(self):
        assert PolyLog(1.0, 1.0, 2.0).in_ell(1.0)
        assert not PolyLog(1.0, 1.0, 1.0).in_ell(1.0)

    def test_explog(self):
        assert ExpLog(1.0, 2.0).in_ell(1.0)
        assert ExpLog(2.0, 1.0).in_ell(1.0)
        assert not ExpLog(1.0, 1.0).in_ell(1.0)
        assert not ExpLog(1.0, 0.5).in_ell(2.0)

    def test_explicit_without_tail_is_unusable(self):
        with pytest.raises(UnusableTailError):
            Explicit((1.0,)).in_ell(1.0)


class TestTail:
    def test_geometric_closed_form(self):
        estimate = tail_bracket(Geometric(1.0, 2.0), 1, 1.0)
        assert estimate.exact
        assert estimate.value.value == pytest.approx(1.0)

    def test_geometric_tail_is_twice_the_head_for_base_two(self):
        spec = Geometric(1.0, 2.0)
        for k in (1, 5, 30):
            assert tail(spec, k, 1.0).value == pytest.approx(2.0 * eval_sigma(spec, k).value)

    def test_basel_sum(self):
        value = tail(Polynomial(1.0, 2.0), 1, 1.0, RTOL).value
        assert value == pytest.approx(math.pi**2 / 6.0, rel=RTOL * 10)

    def test_bracket_contains_value_and_meets_tolerance(self):
        estimate = tail_bracket(Polynomial(1.0, 1.5), 3, 2.0, 1e-6)
        assert estimate.lower <= estimate.value <= estimate.upper
        assert estimate.upper.value / estimate.lower.value - 1.0 <= 2e-6

    def test_zero_tail_sums_only_the_prefix(self):
        spec = Explicit((1.0, 0.5), TailModel.zero())
        assert tail(spec, 1, 1.0).value == pytest.approx(1.5)
        assert tail(spec, 3, 1.0).is_zero

    def test_divergent_tail(self):
        with pytest.raises(SequenceDivergenceError):
            tail(Polynomial(1.0, 1.0), 1, 1.0)

    def test_explicit_without_tail(self):
        with pytest.raises(UnusableTailError):
            tail(Explicit((1.0, 0.5)), 1, 1.0)

    def test_expexp_tail_does_not_underflow_to_nan(self):
        value = tail(ExpExp(1.0, 1.0), 4, 1.0)
        assert math.isfinite(value.log_value)
        assert value.log_value == pytest.approx(-math.exp(4.0), rel=1e-6)

    @pytest.mark.parametrize(
        "spec, r",
        [(Polynomial(1.0, 2.0), 1.0), (ExpPoly(0.5, 0.5), 2.0), (PolyLog(1.0, 1.0, 2.0), 1.0), (ExpLog(1.0, 2.0), 1.0)],
    )
    def test_recurrence(self, spec, r):
        logs = tail_sequence(spec, 16, r, RTOL)
        for k in range(1, 16):
            lhs = math.exp(r * logs[k - 1])
            rhs = math.exp(r * spec.log_sigma(k)) + math.exp(r * logs[k])
            assert lhs == pytest.approx(rhs, rel=1e-8)


class TestPartialSums:
    def test_geometric_partial_sums(self):
        spec = Geometric(1.0, 2.0)
        assert partial_sum_inv(spec, 1, 1.0).value == pytest.approx(2.0)
        assert partial_sum_inv(spec, 3, 1.0).value == pytest.approx(14.0)

    def test_zero_entries_have_infinite_inverse_sums(self):
        with pytest.raises(IndexOutOfRangeError):
            partial_sum_inv(Explicit((1.0,), TailModel.zero()), 2, 1.0)


class TestGeometricMean:
    def test_geometric(self):
        assert geometric_mean(Geometric(1.0, 2.0), 3).value == pytest.approx(0.25)

    def test_harmonic_weights(self):
        assert geometric_mean(Polynomial(1.0, 1.0), 4).value == pytest.approx((1.0 / 24.0) ** 0.25)

    def test_nonincreasing_and_dominated_by_arithmetic_mean(self):
        spec = PolyLog(1.0, 0.5, 1.0)
        logs = log_geometric_means(spec, 200)
        assert np.all(np.diff(logs) <= 1e-12)
        sigma = np.exp(spec.log_sigma_range(1, 201))
        arithmetic = np.cumsum(sigma) / np.arange(1, 201)
        assert np.all(np.exp(logs) <= arithmetic * (1 + 1e-12))


class TestOperatorNorm:
    def test_first_weight_when_p_below_q(self):
        assert operator_norm(Geometric(1.0, 2.0), ExponentPair(1.0, 2.0)).value == pytest.approx(0.5)

    def test_tail_norm_when_p_above_q(self):
        assert operator_norm(Geometric(1.0, 2.0), ExponentPair(math.inf, 1.0)).value == pytest.approx(1.0)
        basel = operator_norm(Polynomial(1.0, 2.0), ExponentPair(math.inf, 1.0))
        assert basel.value == pytest.approx(math.pi**2 / 6.0, rel=1e-8)

    def test_first_entropy_bracket_quasi_norm(self):
        # r = 1/2, so ||sigma||_r = (sum 2^(-n/2))^2 = (1 + sqrt 2)^2
        low, high = first_entropy_bracket(Geometric(1.0, 2.0), ExponentPair(math.inf, 0.5))
        assert high.value == pytest.approx((1.0 + math.sqrt(2.0)) ** 2, rel=1e-8)
        assert low.value == pytest.approx(high.value / 2.0, rel=1e-12)

    def test_first_entropy_bracket_normed(self):
        low, high = first_entropy_bracket(Geometric(1.0, 2.0), ExponentPair(1.0, 2.0))
        assert low == high


@settings(max_examples=30, deadline=None)
@given(
    values=st.lists(st.floats(min_value=1e-3, max_value=10.0), min_size=1, max_size=12),
    ratio=st.floats(min_value=0.05, max_value=0.95),
    r=st.floats(min_value=0.5, max_value=4.0),
)
def test_explicit_geometric_tail_recurrence(values, ratio, r):
    spec = Explicit(tuple(sorted(values, reverse=True)), TailModel.geometric_extension(ratio))
    for k in range(1, len(values) + 2):
        lhs = tail(spec, k, r).log_value * r
        rhs = np.logaddexp(r * spec.log_sigma(k), tail(spec, k + 1, r).log_value * r)
        assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)
