import math

import pytest

from entrobound_core.bounds import (
    BoundForm,
    FormRequest,
    amp_envelope,
    bound_curve,
    evaluate_form,
    lower_bound,
    optimal_form_alp,
    optimal_form_amp,
    optimal_form_exp,
    upper_bound_p_gt_q,
    upper_bound_p_lt_q,
    upper_bound_with_constants,
)
from entrobound_core.errors import (
    EqualExponentsError,
    ExponentBranchError,
    SequenceDivergenceError,
    SpecParseError,
)
from entrobound_core.sequences import Explicit, ExpExp, ExpLog, ExpPoly, Geometric, PolyLog, Polynomial, TailModel, tail
from entrobound_core.sequences.exponent_pair import ExponentPair

INF = math.inf
UNIT = Explicit((1.0,), TailModel.zero())
HALVING = Geometric(1.0, 2.0)
BASEL = Polynomial(1.0, 2.0)


class TestSmallCases:
    def test_upper_bound_p_lt_q_single_weight(self):
        result = upper_bound_p_lt_q(UNIT, ExponentPair(1.0, INF), 1)
        assert result.form is BoundForm.UB_P_LT_Q
        assert result.value.value == pytest.approx(2.0)
        assert result.argmax_k == 1
        assert result.certified

    def test_upper_bound_p_gt_q_first_term(self):
        result = upper_bound_p_gt_q(HALVING, ExponentPair(INF, 1.0), 1)
        assert result.value.value >= 1.5 - 1e-12

    def test_optimal_exp_on_halving_sequence(self):
        result = optimal_form_exp(HALVING, ExponentPair(1.0, INF), 1)
        assert result.value.value == pytest.approx(0.5)
        assert result.argmax_k == 1
        assert result.certified

    def test_optimal_alp_first_term(self):
        result = optimal_form_alp(BASEL, ExponentPair(2.0, 1.0), 1)
        assert result.value.value >= 1.0 - 1e-12

    def test_optimal_amp_is_tail_at_log_index(self):
        result = optimal_form_amp(BASEL, ExponentPair(INF, 1.0), 8)
        assert result.argmax_k == 4
        assert result.value.value == pytest.approx(math.pi**2 / 6.0 - 1.0 - 0.25 - 1.0 / 9.0, rel=1e-8)
        assert result.value.value == pytest.approx(0.283823, abs=1e-6)

    def test_optimal_amp_at_one_is_the_norm(self):
        result = optimal_form_amp(BASEL, ExponentPair(INF, 1.0), 1)
        assert result.value.value == pytest.approx(math.pi**2 / 6.0, rel=1e-8)

    def test_amp_index_steps_at_powers_of_two(self):
        pair = ExponentPair(INF, 1.0)
        indices = {n: optimal_form_amp(BASEL, pair, n).argmax_k for n in range(1, 33)}
        for n, index in indices.items():
            assert index == int(math.floor(math.log2(n))) + 1
        assert indices[15] == indices[8] == 4
        assert indices[16] == 5

    def test_lower_bound_single_weight(self):
        result = lower_bound(UNIT, ExponentPair(1.0, INF), 4)
        assert result.value.value == pytest.approx(0.25)
        assert result.argmax_k == 1

    def test_lower_bound_never_rounds_above_the_entropy_number(self):
        # the segment [-1, 1] in l_2^1 needs two balls of radius 1/2, so e_2 = 1/2 exactly
        result = lower_bound(UNIT, ExponentPair(1.0, 2.0), 2)
        assert result.value.value <= 0.5
        assert result.value.value == pytest.approx(0.5, rel=1e-11)

    def test_constants_reduce_to_four_for_normed_spaces(self):
        # 4 * (2 * sigma_1 + sigma_1) at k = 1, with equal 1-D volumes
        result = upper_bound_with_constants(UNIT, ExponentPair(1.0, INF), 1)
        assert result.form is BoundForm.UB_CONST_P_LT_Q
        assert result.value.value == pytest.approx(12.0)


class TestInvariants:
    @pytest.mark.parametrize(
        "spec, pair, n",
        [
            (HALVING, ExponentPair(1.0, 2.0), 4),
            (HALVING, ExponentPair(1.0, 2.0), 1024),
            (BASEL, ExponentPair(2.0, 1.0), 16),
            (ExpPoly(1.0, 0.5), ExponentPair(INF, 1.0), 64),
            (ExpPoly(1.0, 1.0), ExponentPair(0.5, 1.0), 32),
        ],
    )
    def test_sandwich(self, spec, pair, n):
        low = lower_bound(spec, pair, n)
        high = upper_bound_with_constants(spec, pair, n)
        assert low.value <= high.value

    @pytest.mark.parametrize(
        "evaluate",
        [
            lambda n: upper_bound_p_lt_q(HALVING, ExponentPair(1.0, 2.0), n),
            lambda n: optimal_form_exp(ExpPoly(1.0, 1.0), ExponentPair(1.0, INF), n),
            lambda n: lower_bound(BASEL, ExponentPair(1.0, 2.0), n),
            lambda n: optimal_form_amp(BASEL, ExponentPair(2.0, 1.0), n),
            lambda n: optimal_form_alp(BASEL, ExponentPair(2.0, 1.0), n),
        ],
    )
    def test_nonincreasing_in_n(self, evaluate):
        values = [evaluate(2**j).value for j in range(0, 11)]
        for before, after in zip(values, values[1:]):
            assert after.log_value <= before.log_value + 1e-12

    @pytest.mark.parametrize(
        "request_, pair",
        [
            (FormRequest.UB, ExponentPair(1.0, 2.0)),
            (FormRequest.LB, ExponentPair(1.0, 2.0)),
            (FormRequest.OPT_EXP, ExponentPair(1.0, 2.0)),
            (FormRequest.UB, ExponentPair(2.0, 1.0)),
            (FormRequest.OPT_AMP, ExponentPair(2.0, 1.0)),
            (FormRequest.AMP_ENVELOPE, ExponentPair(2.0, 1.0)),
        ],
    )
    def test_scaling_is_one_homogeneous(self, request_, pair):
        spec = PolyLog(1.0, 1.0, 2.0)
        base = evaluate_form(request_, spec, pair, 64)
        scaled = evaluate_form(request_, spec.scaled(3.0), pair, 64)
        assert scaled.value.log_value - base.value.log_value == pytest.approx(math.log(3.0), abs=1e-9)

    @pytest.mark.parametrize("spec", [ExpPoly(1.0, 1.0), ExpExp(1.0, 0.5), ExpLog(1.0, 2.0)], ids=str)
    @pytest.mark.parametrize(
        "request_, pair",
        [
            (FormRequest.UB, ExponentPair(1.0, 2.0)),
            (FormRequest.LB, ExponentPair(1.0, 2.0)),
            (FormRequest.UB, ExponentPair(2.0, 1.0)),
            (FormRequest.OPT_ALP, ExponentPair(2.0, 1.0)),
        ],
    )
    def test_exponential_families_scale_through_their_amplitude(self, spec, request_, pair):
        base = evaluate_form(request_, spec, pair, 64)
        scaled = evaluate_form(request_, spec.scaled(3.0), pair, 64)
        assert spec.scaled(3.0).log_sigma(5) - spec.log_sigma(5) == pytest.approx(math.log(3.0))
        assert scaled.value.log_value - base.value.log_value == pytest.approx(math.log(3.0), abs=1e-9)

    def test_amp_envelope_dominates_half_the_amp_form(self):
        pair = ExponentPair(2.0, 1.0)
        spec = PolyLog(1.0, 1.0, 2.0)
        for n in (2, 16, 256, 4096):
            envelope = amp_envelope(spec, pair, n).value.value
            staircase = optimal_form_amp(spec, pair, n).value.value
            assert envelope >= 0.5 * staircase * (1 - 1e-9)
            assert envelope <= tail(spec, 1, pair.r).value * (1 + 1e-9)

    def test_exp_collapse_stays_bounded(self):
        # geometric weights: the maximizing k grows like sqrt(log n)
        values = [optimal_form_exp(HALVING, ExponentPair(1.0, 2.0), 2**j).value.log_value for j in (4, 8, 16)]
        argmaxes = [optimal_form_exp(HALVING, ExponentPair(1.0, 2.0), 2**j).argmax_k for j in (4, 8, 16)]
        assert all(math.isfinite(v) for v in values)
        assert argmaxes == sorted(argmaxes)
        assert argmaxes[-1] <= 64


class TestErrors:
    def test_branch_mismatch(self):
        with pytest.raises(ExponentBranchError):
            upper_bound_p_lt_q(HALVING, ExponentPair(2.0, 1.0), 4)
        with pytest.raises(ExponentBranchError):
            optimal_form_amp(BASEL, ExponentPair(1.0, 2.0), 4)

    def test_equal_exponents(self):
        with pytest.raises(EqualExponentsError):
            evaluate_form(FormRequest.UB, HALVING, ExponentPair(2.0, 2.0), 4)
        with pytest.raises(EqualExponentsError):
            upper_bound_with_constants(HALVING, ExponentPair(2.0, 2.0), 4)

    def test_unbounded_operator(self):
        with pytest.raises(SequenceDivergenceError):
            upper_bound_p_gt_q(Polynomial(1.0, 0.5), ExponentPair(2.0, 1.0), 4)
        with pytest.raises(SequenceDivergenceError):
            lower_bound(Polynomial(1.0, 0.5), ExponentPair(2.0, 1.0), 4)

    def test_unknown_form_name(self):
        assert FormRequest.from_string(" OPT-AMP ") is FormRequest.OPT_AMP
        with pytest.raises(SpecParseError):
            FormRequest.from_string("best")


class TestBoundCurve:
    def test_order_is_by_n_then_form(self):
        forms = [FormRequest.UB, FormRequest.LB]
        results = bound_curve(HALVING, ExponentPair(1.0, 2.0), [1, 4, 16], forms, threads=1)
        assert [(r.n, r.form) for r in results] == [
            (1, BoundForm.UB_P_LT_Q),
            (1, BoundForm.LB_VOLUME),
            (4, BoundForm.UB_P_LT_Q),
            (4, BoundForm.LB_VOLUME),
            (16, BoundForm.UB_P_LT_Q),
            (16, BoundForm.LB_VOLUME),
        ]

    def test_single_point_matches_direct_call(self):
        [result] = bound_curve(HALVING, ExponentPair(1.0, 2.0), [4], [FormRequest.OPT_EXP], threads=1)
        assert result == optimal_form_exp(HALVING, ExponentPair(1.0, 2.0), 4)

    def test_thread_count_does_not_change_results(self):
        pair = ExponentPair(2.0, 1.0)
        grid = [2**j for j in range(0, 12)]
        forms = [FormRequest.UB, FormRequest.OPT_ALP, FormRequest.OPT_AMP, FormRequest.LB]
        serial = bound_curve(BASEL, pair, grid, forms, threads=1)
        parallel = bound_curve(BASEL, pair, grid, forms, threads=4)
        assert serial == parallel

    def test_empty_grid(self):
        assert bound_curve(HALVING, ExponentPair(1.0, 2.0), [], [FormRequest.UB]) == []
