import math

import pytest

from entrobound_core.errors import EqualExponentsError, ExponentBranchError
from entrobound_core.sequences.exponent_pair import ExponentPair, format_exponent, quasi_norm_constant


def test_s_for_p_less_than_q():
    pair = ExponentPair(1.0, 2.0)
    assert pair.p_less_than_q
    assert pair.s == pytest.approx(2.0)
    assert ExponentPair(1.0, math.inf).s == pytest.approx(1.0)


def test_r_for_p_greater_than_q():
    assert ExponentPair(2.0, 1.0).r == pytest.approx(2.0)
    assert ExponentPair(math.inf, 1.0).r == pytest.approx(1.0)


def test_branch_quantities_raise_on_the_wrong_side():
    with pytest.raises(ExponentBranchError):
        ExponentPair(2.0, 1.0).s
    with pytest.raises(ExponentBranchError):
        ExponentPair(1.0, 2.0).r


def test_equal_exponents_are_rejected_on_demand():
    pair = ExponentPair(2.0, 2.0)
    assert pair.equal
    with pytest.raises(EqualExponentsError):
        pair.require_distinct()


@pytest.mark.parametrize("bad", [0.0, -1.0, math.nan])
def test_invalid_exponents(bad):
    with pytest.raises(ValueError):
        ExponentPair(bad, 1.0)


def test_quasi_norm_constant():
    assert quasi_norm_constant(1.0) == 1.0
    assert quasi_norm_constant(math.inf) == 1.0
    assert quasi_norm_constant(0.5) == pytest.approx(2.0)
    assert ExponentPair(0.5, 1.0).c_p == pytest.approx(2.0)


def test_to_dict_spells_infinity():
    assert format_exponent(math.inf) == "inf"
    assert ExponentPair(2.0, math.inf).to_dict() == {"p": "2.0", "q": "inf", "s": "2.0"}
