import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mapenum import bijections as bij
from mapenum import solver
from mapenum.bijections import BLACK, WHITE, Node
from mapenum.checks import random_weights
from mapenum.combmap import DegreeProfile, degree_profile, genus, rooted_code
from mapenum.series import TSeries, WPolynomial
from mapenum.solver import WeightSpec


def test_smallest_cubic_s_trees():
    trees, s = bij.enumerate_blossom("S", 2, solver.cubic(formal=True))
    assert set(trees) == {Node("S", (WHITE, BLACK)), Node("S", (BLACK, WHITE))}
    assert len(trees) == 2
    assert s == TSeries([0, 0, WPolynomial.var(3) * 2], 2)


def test_r_without_vertices():
    trees, s = bij.enumerate_blossom("R", 6, WeightSpec())
    assert trees == [WHITE]
    assert s == TSeries.t(6)


def test_quartic_has_no_s_trees():
    trees, s = bij.enumerate_blossom("S", 7, solver.quartic())
    assert trees == [] and s == TSeries.zero(7)


def test_every_enumerated_tree_is_valid():
    for kind in "RS":
        trees, _ = bij.enumerate_blossom(kind, 5, WeightSpec.formal([1, 2, 3, 4]))
        assert all(bij.is_valid(tr) and bij.tree_class(tr) == kind for tr in trees)
        assert len(set(trees)) == len(trees)


def test_caps_and_classes():
    with pytest.raises(bij.TooLargeError):
        bij.enumerate_blossom("S", bij.MAX_TREE_ORDER + 1, solver.cubic())
    with pytest.raises(bij.WrongClassError):
        bij.enumerate_blossom("X", 2, solver.cubic())
    with pytest.raises(bij.WrongClassError):
        bij.closure(WHITE)
    with pytest.raises(bij.WrongClassError):
        bij.closure_r(Node("S", (WHITE, BLACK)))


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 10**6))
def test_grammar_reproduces_planar_solution(seed):
    V = random_weights(random.Random(seed), 4)
    R, S = solver.solve_rs(V, 5)
    assert bij.enumerate_blossom("R", 5, V)[1] == R
    assert bij.enumerate_blossom("S", 5, V)[1] == S


def test_grammar_with_formal_weights():
    V = WeightSpec.formal([1, 2, 3, 4])
    R, S = solver.solve_rs(V, 5)
    assert bij.enumerate_blossom("R", 5, V)[1] == R
    assert bij.enumerate_blossom("S", 5, V)[1] == S


def test_closure_of_smallest_cubic_tree():
    res = bij.closure(Node("S", (WHITE, BLACK)))
    assert genus(res.cmap) == 0
    assert degree_profile(res.cmap) == DegreeProfile({1: 1, 3: 1})
    assert res.cmap.sigma(res.leg) == res.leg  # the leg sits on a degree-1 vertex


def _expected_profile(tree, extra_leaves):
    deg = Counter(bij.node_degrees(tree))
    deg[1] += extra_leaves
    return DegreeProfile(deg)


@pytest.mark.parametrize("order", [3, 4])
def test_s_closure_injective_planar_degree_preserving(order):
    trees, _ = bij.enumerate_blossom("S", order, WeightSpec.formal(range(1, 6)))
    keys = set()
    for tree in trees:
        res = bij.closure(tree)
        assert genus(res.cmap) == 0
        assert degree_profile(res.cmap) == _expected_profile(tree, 1)
        keys.add(bij.marked_key(res))
    assert len(keys) == len(trees)


def test_r_closure_injective_planar_degree_preserving():
    trees, _ = bij.enumerate_blossom("R", 4, WeightSpec.formal(range(1, 6)))
    keys = set()
    for tree in trees:
        res = bij.closure_r(tree)
        assert genus(res.cmap) == 0
        # the leg and the second leg; the lone white leaf gives the path map
        assert degree_profile(res.cmap) == _expected_profile(tree, 2)
        assert res.cmap.sigma(res.second_leg) == res.second_leg
        keys.add(bij.marked_key(res))
    assert len(keys) == len(trees)


def test_marks_are_needed_for_injectivity():
    # without the marked face several trees close to the same rooted map
    trees, _ = bij.enumerate_blossom("S", 4, WeightSpec.formal(range(1, 6)))
    plain = {rooted_code(bij.closure(tr).cmap, bij.closure(tr).leg) for tr in trees}
    assert len(plain) < len(trees)


def test_well_labeled_small():
    s, trees = bij.enumerate_well_labeled(1, 1)
    assert s == TSeries.t(1) and len(trees) == 1 and trees[0].label == 1
    assert bij.enumerate_well_labeled(1, 3)[0].coefficient(3) == 2
    assert bij.enumerate_well_labeled(2, 3)[0].coefficient(3) == 3
    with pytest.raises(ValueError):
        bij.enumerate_well_labeled(0, 3)
    with pytest.raises(bij.TooLargeError):
        bij.enumerate_well_labeled(1, bij.MAX_LABELED_ORDER + 1)


def test_well_labeled_trees_are_well_labeled():
    _, trees = bij.enumerate_well_labeled(2, 7)
    assert all(tr.is_well_labeled() and min(tr.labels()) >= 1 for tr in trees)
    assert all(len(tr.labels()) == tr.num_edges() + 1 for tr in trees)


def test_well_labeled_recursion_and_two_point():
    T = 7
    series = {ell: bij.enumerate_well_labeled(ell, T)[0] for ell in range(1, 6)}
    t = TSeries.t(T)
    for ell in range(1, 5):
        left = series.get(ell - 1, TSeries.zero(T))
        assert series[ell] == t + t * series[ell] * (left + series[ell] + series[ell + 1])
    R = solver.two_point_r(4, T)
    assert all(R[ell] == series[ell] for ell in range(1, 5))
