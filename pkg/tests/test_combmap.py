import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mapenum.combmap import (
    CombMap,
    DegreeProfile,
    InvalidSizeError,
    NotAnInvolutionError,
    NotTransitiveError,
    Permutation,
    automorphism_count,
    canonical_code,
    compose,
    degree_profile,
    dual,
    euler_genus,
    genus,
    graph_distance,
    make_map,
    perm,
    rooted_code,
)
from mapenum.oracle import enumerate_maps

LOOP = make_map(perm(2, (1, 2)), perm(2, (1, 2)))
PATH = make_map(Permutation.identity(2), perm(2, (1, 2)))
TORUS = make_map(perm(4, (1, 2, 3, 4)), perm(4, (1, 3), (2, 4)))
# ten half-edges, four vertices of degrees 1..4
PLANAR10 = make_map(
    perm(10, (1, 2), (3, 4, 5), (6, 7, 8, 9)),
    perm(10, (1, 3), (2, 7), (4, 6), (5, 9), (8, 10)),
)


def test_compose_identity_and_inverse():
    q = perm(4, (1, 3), (2, 4))
    p = perm(4, (1, 2, 3, 4))
    assert compose(Permutation.identity(4), q) == q
    assert compose(p, p.inverse()) == Permutation.identity(4)


def test_compose_applies_right_factor_first():
    assert compose(perm(4, (1, 2, 3, 4)), perm(4, (1, 3), (2, 4))) == perm(4, (1, 4, 3, 2))


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        compose(Permutation.identity(2), Permutation.identity(3))


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_cycles_start_at_minimum():
    assert perm(5, (3, 5, 1), (4, 2)).cycles() == [(1, 3, 5), (2, 4)]
    assert str(perm(4, (2, 3))) == "(2 3)"


@given(st.permutations(list(range(1, 7))), st.permutations(list(range(1, 7))))
def test_conjugate_matches_composition(a, b):
    sigma, rho = Permutation(tuple(a)), Permutation(tuple(b))
    assert sigma.conjugate(rho) == rho * sigma * rho.inverse()


def test_valid_maps():
    assert PLANAR10.num_edges == 5
    assert PATH.size == 2


def test_disconnected_pair_rejected():
    with pytest.raises(NotTransitiveError):
        make_map(Permutation.identity(4), perm(4, (1, 2), (3, 4)))


def test_alpha_with_fixed_point_rejected():
    with pytest.raises(NotAnInvolutionError):
        make_map(perm(2, (1, 2)), Permutation.identity(2))


def test_odd_size_rejected():
    with pytest.raises(InvalidSizeError):
        make_map(Permutation.identity(3), perm(3, (1, 2)))


def test_invariants_of_planar_example():
    inv = euler_genus(PLANAR10)
    assert (inv.vertices, inv.edges, inv.faces, inv.chi, inv.genus) == (4, 5, 3, 2, 0)


def test_loop_and_torus_genus():
    assert euler_genus(LOOP).chi == 2 and genus(LOOP) == 0
    assert euler_genus(TORUS).chi == 0 and genus(TORUS) == 1
    assert TORUS.phi == perm(4, (1, 4, 3, 2))


def test_dual_of_loop_is_path():
    assert dual(LOOP) == PATH


@pytest.mark.parametrize("cmap", [LOOP, PATH, TORUS, PLANAR10])
def test_dual_is_an_involution_up_to_phi_inverse(cmap):
    # dual(dual(M)) = (sigma o alpha o alpha, alpha) = (sigma, alpha)
    assert dual(dual(cmap)).sigma == compose(cmap.phi, cmap.alpha)
    assert dual(dual(cmap)) == cmap
    assert genus(dual(cmap)) == genus(cmap)


def test_degree_profiles():
    assert degree_profile(PLANAR10) == DegreeProfile({1: 1, 2: 1, 3: 1, 4: 1})
    assert degree_profile(LOOP) == DegreeProfile({2: 1})
    assert degree_profile(LOOP, "face") == DegreeProfile({1: 2})
    assert degree_profile(PATH) == DegreeProfile({1: 2})
    with pytest.raises(ValueError):
        degree_profile(PATH, "edge")


def test_degree_profile_normalises():
    assert DegreeProfile({3: 0, 2: 1}) == DegreeProfile([(2, 1)])
    assert DegreeProfile.from_degrees([4, 4, 1]).as_dict() == {1: 1, 4: 2}
    assert DegreeProfile({4: 2, 1: 1}).total_degree() == 9


def test_automorphisms_small():
    assert automorphism_count(LOOP) == 2
    assert automorphism_count(PATH) == 2
    assert automorphism_count(TORUS) == 4


def test_automorphisms_brute_force_on_torus():
    n = 0
    for images in itertools.permutations(range(1, 5)):
        rho = Permutation(images)
        if TORUS.relabel(rho) == TORUS:
            n += 1
    assert n == automorphism_count(TORUS)


def test_canonical_codes_m1():
    assert canonical_code(LOOP) != canonical_code(PATH)
    codes = {canonical_code(cm) for cm, _ in enumerate_maps(1, mode="all-pairs")}
    assert len(codes) == 2


def _random_map(data, m):
    maps = [cm for cm, _ in enumerate_maps(m, mode="fix-alpha")]
    return data.draw(st.sampled_from(maps))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_canonical_code_is_relabelling_invariant(data):
    m = data.draw(st.integers(1, 3))
    cmap = _random_map(data, m)
    rho = Permutation(tuple(data.draw(st.permutations(list(range(1, 2 * m + 1))))))
    assert canonical_code(cmap.relabel(rho)) == canonical_code(cmap)
    root = data.draw(st.integers(1, 2 * m))
    assert rooted_code(cmap.relabel(rho), rho(root)) == rooted_code(cmap, root)


def test_graph_distance():
    assert graph_distance(LOOP, 0, 0) == 0
    assert graph_distance(PATH, 0, 1) == 1
    assert graph_distance(dual(LOOP), 0, 1) == 1
    with pytest.raises(ValueError):
        graph_distance(PATH, 0, 2)


def test_torus_dual_has_one_vertex():
    # the torus map has a single face, so its dual has a single vertex
    assert dual(TORUS).sigma.num_cycles() == 1
    assert graph_distance(dual(TORUS), 0, 0) == 0


def test_graph_distance_on_planar_example():
    d = [[graph_distance(PLANAR10, a, b) for b in range(4)] for a in range(4)]
    assert all(d[a][b] == d[b][a] for a in range(4) for b in range(4))
    assert max(max(row) for row in d) >= 1
