from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from logmeans import (
    NonInvertibleSeriesError,
    WeightScheme,
    check_gamma_conclusions,
    check_hardy_hypotheses,
    reciprocal_coeffs,
)
from logmeans.reciprocal import cauchy_product, invert_series

LOG = WeightScheme.logarithmic()


@pytest.fixture(scope="module")
def gregory_sympy():
    """Taylor coefficients of -x/ln(1-x), independent of the recursion."""
    x = sp.symbols("x")
    ser = sp.series(-x / sp.log(1 - x), x, 0, 13).removeO()
    return [F(int(c.p), int(c.q)) for c in (sp.Rational(ser.coeff(x, n)) for n in range(13))]


def test_gregory_coefficients_against_series_expansion(gregory_sympy):
    gamma = reciprocal_coeffs(LOG, 12).gamma
    assert list(gamma) == gregory_sympy
    assert gamma[:5] == (1, F(-1, 2), F(-1, 12), F(-1, 24), F(-19, 720))


def test_geometric_examples():
    assert reciprocal_coeffs(WeightScheme.ones(), 5).gamma == (1, -1, 0, 0, 0, 0)
    assert reciprocal_coeffs(WeightScheme.geometric(2), 5).gamma == (1, -2, 0, 0, 0, 0)


def test_residuals_vanish():
    for w in (LOG, WeightScheme.ones(), WeightScheme.geometric(F(2, 3)), WeightScheme.explicit([1, 2, 1, 5])):
        N = w.length - 1 if w.length else 40
        assert all(r == 0 for r in reciprocal_coeffs(w, N).residuals())


def test_convolution_inverse_up_to_256():
    gamma = reciprocal_coeffs(LOG, 256).gamma
    prod = cauchy_product(LOG.qs(256), gamma)
    assert prod == [1] + [0] * 256


def test_round_trip_returns_weights():
    q = LOG.qs(64)
    assert invert_series(invert_series(q)) == q


def test_non_invertible():
    with pytest.raises(NonInvertibleSeriesError):
        reciprocal_coeffs(WeightScheme.explicit([0, 1, 2]), 2)
    with pytest.raises(NonInvertibleSeriesError):
        invert_series([0.0, 1.0])


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=20), min_size=1, max_size=12).filter(
        lambda q: q[0] != 0
    ),
    st.fractions(min_value=F(1, 10), max_value=10, max_denominator=20),
)
def test_inverse_and_scale_covariance(q, c):
    gamma = invert_series(q)
    assert cauchy_product(q, gamma) == [1] + [0] * (len(q) - 1)
    assert invert_series(q, None) == gamma
    scaled = invert_series([c * v for v in q])
    assert scaled == [g / c for g in gamma]


def test_float_mode_close_to_exact():
    exact = reciprocal_coeffs(LOG, 200).gamma
    flt = reciprocal_coeffs(LOG, 200, "float").gamma
    assert all(abs(a - float(b)) <= 1e-13 * max(1e-3, abs(float(b))) for a, b in zip(flt, exact))


# -- hypothesis and conclusion reports ---------------------------------------------


def test_hardy_hypotheses_logarithmic():
    rep = check_hardy_hypotheses(LOG, 50)
    assert rep.holds
    # oracle: q_{n+1}/q_n = (n+1)/(n+2) is increasing
    assert rep.ratios == [F(n + 1, n + 2) for n in range(50)]
    assert rep.tail_ratio == F(1, 51) / LOG.Q(50)


def test_hardy_hypotheses_ones_and_violation():
    ones = check_hardy_hypotheses(WeightScheme.ones(), 10)
    assert ones.holds and set(ones.ratios) == {1}
    bad = check_hardy_hypotheses(WeightScheme.explicit([1, 2, 1]), 2)
    assert not bad.ratio_nondecreasing
    assert bad.ratio_drop_at == 2
    neg = check_hardy_hypotheses(WeightScheme.explicit([2, -1, 1]), 2)
    assert not neg.q0_is_one and not neg.positive and neg.first_nonpositive == 1


def test_gamma_conclusions_gregory():
    rep = check_gamma_conclusions(reciprocal_coeffs(LOG, 64))
    assert rep.gamma0_is_one
    assert rep.strictly_negative
    assert rep.min_partial_sum > 0
    assert rep.bound_holds


def test_gamma_conclusions_boundary_and_singleton():
    rep = check_gamma_conclusions(reciprocal_coeffs(WeightScheme.ones(), 6))
    assert rep.positive_indices == []
    assert rep.zero_indices == [2, 3, 4, 5, 6]
    assert not rep.strictly_negative and rep.nonpositive
    assert rep.min_partial_sum == 0 and rep.bound_holds
    single = check_gamma_conclusions(reciprocal_coeffs(LOG, 0))
    assert single.gamma0_is_one and single.strictly_negative and single.bound_holds


def test_gamma_conclusions_flag_positive_entries():
    # 1 / (1 + x + x^2) has gamma = 1, -1, 0, 1, -1, 0, ...
    rep = check_gamma_conclusions(reciprocal_coeffs(WeightScheme.explicit([1, 1, 1, 0, 0, 0, 0]), 6))
    assert rep.positive_indices == [3, 6]
