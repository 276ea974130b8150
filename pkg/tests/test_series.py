from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mapenum.series import (
    N,
    GenusSeries,
    MissingWeightError,
    NotContractiveError,
    TruncationMismatch,
    TSeries,
    WPolynomial,
    arith,
    coefficient,
    derivative_t,
    fixed_point,
    series_exp,
    series_log,
    substitute_weights,
)

v3, v4 = WPolynomial.var(3), WPolynomial.var(4)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw):
    terms = {}
    for _ in range(draw(st.integers(0, 3))):
        mono = tuple(sorted(draw(st.dictionaries(st.integers(1, 3), st.integers(1, 2), max_size=2)).items()))
        terms[mono] = draw(rationals)
    return WPolynomial(terms)


@st.composite
def series(draw, order=4, zero_const=False):
    cs = [draw(polys()) for _ in range(order + 1)]
    if zero_const:
        cs[0] = WPolynomial()
    return TSeries(cs, order)


@settings(max_examples=50, deadline=None)
@given(polys(), polys(), polys())
def test_polynomial_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == WPolynomial()


@settings(max_examples=40, deadline=None)
@given(series(), series(), series())
def test_series_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * TSeries.one(4) == a


def test_hand_products():
    t = TSeries.t(3)
    assert arith(t, t, "mul") == TSeries([0, 0, 1], 3)
    t6 = TSeries.t(6)
    x = t6 + t6**3 * 3
    assert x * x == TSeries([0, 0, 1, 0, 6, 0, 9], 6)
    assert arith(x, x, "sub") == TSeries.zero(6)


def test_truncation_mismatch():
    with pytest.raises(TruncationMismatch):
        TSeries.t(3) + TSeries.t(4)


def test_coefficient_access():
    assert coefficient(TSeries.t(2), 1) == 1
    assert TSeries.zero(5).coefficient(3) == 0
    with pytest.raises(IndexError):
        TSeries.t(2).coefficient(3)


def test_derivative():
    assert derivative_t(TSeries([0, 0, 1], 2)) == TSeries([0, 2], 1)
    assert derivative_t(TSeries.const(7, 3)) == TSeries.zero(2)


def test_exp_of_zero():
    assert series_exp(TSeries.zero(5)) == TSeries.one(5)


@settings(max_examples=30, deadline=None)
@given(series(order=5, zero_const=True))
def test_log_inverts_exp(s):
    assert series_log(series_exp(s)) == s


def test_exp_requires_zero_constant():
    with pytest.raises(ValueError):
        series_exp(TSeries.one(2))
    with pytest.raises(ValueError):
        series_log(TSeries.zero(2))


def test_quadratic_fixed_point_gives_catalan_times_powers_of_three():
    T = 7
    t = TSeries.t(T)
    (R,) = fixed_point(lambda x: [t + t * x[0] * x[0] * 3], T)
    assert R.numbers() == [0, 1, 0, 3, 0, 18, 0, 135]


def test_constant_system():
    (R,) = fixed_point(lambda x: [TSeries.t(3)], 3)
    assert R == TSeries.t(3)


def test_cubic_system():
    T = 8
    t = TSeries.t(T)
    R, S = fixed_point(lambda x: [t + t * x[0] * x[1] * 2, t * (x[1] * x[1] + x[0] * 2)], T, size=2)
    assert S.numbers()[:6] == [0, 0, 2, 0, 0, 12]


def test_non_contraction_detected():
    with pytest.raises(NotContractiveError):
        fixed_point(lambda x: [x[0] + TSeries.one(3)], 3)


def test_substitution():
    p = v4 * 3 + v3 * v3
    assert substitute_weights(p, {3: 2, 4: Fraction(1, 3)}) == 5
    s = TSeries([1, v4 * 3, v3 * v4], 2)
    assert substitute_weights(s, {3: 0, 4: 0}) == TSeries.one(2)
    assert s.substitute_weights({4: 1}) == TSeries([1, 3, v3], 2)
    with pytest.raises(MissingWeightError) as exc:
        substitute_weights(p, {4: 1})
    assert exc.value.n == 3


def test_laurent_in_N():
    x = WPolynomial.var(N, -2) * 3 + 12
    assert x.by_power_of(N) == {0: WPolynomial.const(12), -2: WPolynomial.const(3)}
    assert x * WPolynomial.var(N, 2) == WPolynomial.var(N, 2) * 12 + 3


def test_genus_series_collapse():
    gs = GenusSeries(2, {0: TSeries([0, 1], 2), 1: TSeries([0, 0, 1], 2)})
    full = gs.collapse_N()
    assert full.coefficient(1) == WPolynomial.var(N, 2)
    assert full.coefficient(2) == 1
    assert gs.genera() == [0, 1]
    assert gs[5] == TSeries.zero(2)
