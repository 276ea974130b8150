import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mapenum import oracle, solver
from mapenum.checks import random_weights
from mapenum.series import TSeries, WPolynomial
from mapenum.solver import InvalidProfileError, WeightSpec


def test_weight_spec_drops_zeros():
    V = WeightSpec({3: 0, 4: Fraction(2, 3)})
    assert V.max_degree == 4
    assert V[3] == 0 and V[4] == Fraction(2, 3)
    assert V.is_even()
    with pytest.raises(ValueError):
        WeightSpec({0: 1})


def test_quartic_rs():
    R, S = solver.solve_rs(solver.quartic(), 9)
    assert R.numbers() == [0, 1, 0, 3, 0, 18, 0, 135, 0, 1134]
    assert S == TSeries.zero(9)


def test_cubic_rs():
    R, S = solver.solve_rs(solver.cubic(), 8)
    assert S.numbers() == [0, 0, 2, 0, 0, 12, 0, 0, 128]
    assert R.numbers() == [0, 1, 0, 0, 4, 0, 0, 40, 0]


def test_empty_potential():
    R, S = solver.solve_rs(WeightSpec(), 5)
    assert R == TSeries.t(5) and S == TSeries.zero(5)
    assert solver.solve_rs_joukowsky(WeightSpec(), 5) == (R, S)


def test_joukowsky_quartic_order_12():
    assert solver.solve_rs(solver.quartic(), 12) == solver.solve_rs_joukowsky(solver.quartic(), 12)


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6))
def test_joukowsky_random_weights(seed):
    V = random_weights(random.Random(seed), 5)
    assert solver.solve_rs(V, 10) == solver.solve_rs_joukowsky(V, 10)


def test_joukowsky_formal_weights():
    V = WeightSpec.formal(range(1, 6))
    assert solver.solve_rs(V, 6) == solver.solve_rs_joukowsky(V, 6)


def test_rooted_planar_families():
    E4 = solver.rooted_map_gf(solver.quartic(), 10).numbers()
    assert E4[0::2] == [1, 2, 9, 54, 378, 2916]
    E3 = solver.rooted_map_gf(solver.cubic(), 9).numbers()
    assert E3[0::3] == [1, 4, 32, 336]


def test_closed_forms():
    assert solver.tetravalent_counts(3) == [1, 2, 9, 54]
    assert solver.trivalent_counts(2) == [1, 4, 32]


def test_quartic_matches_literal_expression():
    # E = (R - R^3) / t with the one-vertex map kept
    R, _ = solver.solve_rs(solver.quartic(), 9)
    assert solver.rooted_map_gf(solver.quartic(), 8) == (R - R**3).divide_t()


@pytest.mark.parametrize("V", [solver.quartic(), solver.cubic(), WeightSpec.formal([1, 2, 3])])
def test_u_coefficient_route(V):
    assert solver.rooted_map_gf_u(V, 6) == solver.rooted_map_gf(V, 6)


def test_rooted_gf_matches_oracle_with_formal_weights():
    V = WeightSpec.formal(range(1, 9))
    assert solver.rooted_map_gf(V, 4) == oracle.rooted_counts(4)[0]


def test_all_weights_one_gives_general_rooted_maps():
    V = WeightSpec({n: 1 for n in range(1, 9)})
    assert solver.rooted_map_gf(V, 4).numbers() == [1, 2, 9, 54, 378]


def test_catalan_resolvent():
    table = solver.resolvent_w(WeightSpec(), 4, 8)
    leading = [table.W[2 * n].coefficient(n).const_value() for n in range(5)]
    assert leading == [1, 1, 2, 5, 14]
    assert table.W[2] == TSeries.t(4)
    assert table.W[4] == TSeries([0, 0, 2], 4)


def test_odd_resolvents_vanish_for_even_potential():
    table = solver.resolvent_w(solver.quartic(), 6, 7)
    assert all(table.W[n] == TSeries.zero(6) for n in (1, 3, 5, 7))


def test_w2_is_t_times_e():
    T = 9
    W2 = solver.resolvent_w(solver.quartic(), T, 2).W[2]
    E = solver.rooted_map_gf(solver.quartic(), T)
    assert W2 == E.shift()


def test_resolvent_matches_root_degree_counts():
    V = WeightSpec.formal(range(1, 9))
    table = solver.resolvent_w(V, 4, 6)
    for n in range(1, 7):
        assert table.W[n] == oracle.rooted_counts(4, root_degree=n)[0]


def test_resolvent_coefficients_nonnegative():
    table = solver.resolvent_w(WeightSpec.formal([1, 3, 4]), 5, 4)
    for s in table.W:
        for c in s.coeffs:
            assert all(x >= 0 for x in c.terms.values())


@pytest.mark.parametrize("V", [WeightSpec(), solver.quartic(), solver.cubic()])
def test_master_equation(V):
    res = solver.master_equation_residual(V, 8)
    assert res and all(s == TSeries.zero(s.order) for s in res.values())


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 10**6))
def test_master_equation_random(seed):
    V = random_weights(random.Random(seed), 4)
    res = solver.master_equation_residual(V, 6)
    assert all(s.valuation() is None for s in res.values())


def test_master_equation_detects_wrong_resolvent(monkeypatch):
    real = solver.resolvent_w

    def broken(V, T, n_max):
        table = real(V, T, n_max)
        table.W[2] = table.W[2] + TSeries([0, 0, 0, 1], T)
        return table

    monkeypatch.setattr(solver, "resolvent_w", broken)
    res = solver.master_equation_residual(solver.quartic(), 6)
    assert any(s.valuation() is not None for s in res.values())


def test_eulerian_examples():
    assert solver.eulerian_count({2: 1}) == 1
    assert solver.eulerian_count({4: 1}) == 2
    assert solver.eulerian_count({4: 2}) == 9
    with pytest.raises(InvalidProfileError):
        solver.eulerian_count({3: 2})


@pytest.mark.parametrize("profile", [{2: 2}, {2: 1, 4: 1}, {6: 1}, {2: 3}, {8: 1}, {4: 2}, {2: 2, 4: 1}])
def test_eulerian_against_oracle(profile):
    assert solver.eulerian_count(profile) == oracle.rooted_count_profile(profile)


def test_eulerian_matches_quartic_family():
    assert [solver.eulerian_count({4: k}) for k in range(1, 4)] == solver.tetravalent_counts(3)[1:]


def test_two_point_first_label():
    R = solver.two_point_r(3, 9)
    assert R[0] == TSeries.zero(9)
    assert R[1].divide_t() == solver.rooted_map_gf(solver.quartic(), 8)
    assert R[2].numbers()[1::2] == [1, 3, 17, 119, 932]


def test_two_point_limits_to_r():
    T = 7
    Rq, _ = solver.solve_rs(solver.quartic(), T)
    R = solver.two_point_r(5, T)
    for k in range(T + 1):
        col = [r.coefficient(k).const_value() for r in R[1:]]
        assert col == sorted(col)
    assert R[5] == Rq


def test_two_point_catalan_limit():
    Rq, _ = solver.solve_rs(solver.quartic(), 9)
    assert Rq.numbers()[1::2] == [Fraction(3**k * math.comb(2 * k, k), k + 1) for k in range(5)]


def test_formal_coefficients_are_polynomials():
    R, S = solver.solve_rs(WeightSpec.formal([3]), 5)
    assert S.coefficient(2) == WPolynomial.var(3) * 2
