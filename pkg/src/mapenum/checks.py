"""Named verification suites: every closed form against an independent route.

Each suite returns a list of :class:`Check`. All comparisons are exact.
"""

from __future__ import annotations

import math
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import bijections as bij
from . import oracle, solver
from .combmap import DegreeProfile, degree_profile, genus
from .oracle import OracleConfig
from .series import N, TSeries, WPolynomial, frac_str, series_exp, weight_monomial
from .solver import WeightSpec


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0


@dataclass
class VerifyOptions:
    seed: int = 20240601
    oracle: OracleConfig = field(default_factory=OracleConfig)


def _fmt(xs) -> str:
    return "[" + ", ".join(frac_str(x) for x in xs) + "]"


def _timed(name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crashing check is a failing check
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(name, bool(ok), detail, time.perf_counter() - t0)


def random_weights(rng: random.Random, max_degree: int, min_degree: int = 1) -> WeightSpec:
    w = {}
    for n in range(min_degree, max_degree + 1):
        if rng.random() < 0.8:
            w[n] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return WeightSpec(w)


def suite_wick(opts: VerifyOptions) -> list[Check]:
    def wick33():
        w = oracle.wick_cycle_expectation([3, 3], opts.oracle)
        want = WPolynomial.const(12) + WPolynomial.var(N, -2) * 3
        return (w.t_power == 3 and w.coeff == want and w.pairings == 15,
                f"<TrM^3 TrM^3> = ({w.coeff}) t^{w.t_power} over {w.pairings} pairings")

    def parity():
        return oracle.wick_cycle_expectation([3], opts.oracle).is_empty(), "odd number of legs vanishes"

    return [_timed("wick: (12 + 3/N^2) t^3", wick33), _timed("wick: parity", parity)]


def suite_tetravalent(opts: VerifyOptions) -> list[Check]:
    want = [1, 2, 9, 54, 378, 2916]

    def closed():
        e = solver.rooted_map_gf(solver.quartic(), 10).numbers()
        got = e[0::2]
        return got == want and all(x == 0 for x in e[1::2]) and solver.tetravalent_counts(5) == want, f"E4 = {_fmt(got)}"

    def brute():
        got = [1] + [oracle.rooted_count_profile({4: k}, 0, opts.oracle) for k in (1, 2, 3)]
        return got == want[:4], f"oracle rooted 4-regular counts, k = 0..3 vertices: {_fmt(got)}"

    return [_timed("tetravalent: closed form = E^(0)", closed), _timed("tetravalent: brute force", brute)]


def suite_trivalent(opts: VerifyOptions) -> list[Check]:
    want = [1, 4, 32, 336]

    def closed():
        e = solver.rooted_map_gf(solver.cubic(), 9).numbers()
        got = e[0::3]
        others = [x for i, x in enumerate(e) if i % 3]
        return got == want and not any(others) and solver.trivalent_counts(3) == want, f"E3 = {_fmt(got)}"

    def brute():
        ks = (1, 2)
        got = [oracle.rooted_count_profile({3: 2 * k}, 0, opts.oracle) for k in ks]
        return got == want[1:1 + len(ks)], f"oracle rooted 3-regular counts, k = {list(ks)}: {_fmt(got)}"

    return [_timed("trivalent: closed form = E^(0)", closed), _timed("trivalent: brute force", brute)]


def even_profiles(max_total: int):
    for p in range(2, max_total + 1, 2):
        for parts in oracle.partitions(p):
            if all(x % 2 == 0 for x in parts):
                yield DegreeProfile.from_degrees(parts)


def suite_eulerian(opts: VerifyOptions) -> list[Check]:
    def run():
        bad = []
        n = 0
        for prof in even_profiles(8):
            n += 1
            a = solver.eulerian_count(prof)
            b = oracle.rooted_count_profile(prof, 0, opts.oracle)
            if a != b:
                bad.append(f"{prof}: formula {a} vs oracle {b}")
        return not bad, "; ".join(bad) or f"{n} even profiles with total degree <= 8 agree"

    return [_timed("eulerian: formula = oracle", run)]


def suite_topological(opts: VerifyOptions) -> list[Check]:
    def exponents():
        for m in range(1, 5):
            for cmap, _ in oracle.enumerate_maps(m, config=opts.oracle):
                s, a, f = cmap.sigma.num_cycles(), cmap.alpha.num_cycles(), cmap.phi.num_cycles()
                if s - a + f != 2 - 2 * genus(cmap):
                    return False, f"bad exponent for {cmap}"
        return True, "N-exponent = 2 - 2g for every labelled map with m <= 4"

    def free_energy_powers():
        F = oracle.labelled_free_energy(4, opts.oracle)
        full = F.collapse_N()
        for k, c in enumerate(full.coeffs):
            for e in c.by_power_of(N):
                if e % 2 or e > 2:
                    return False, f"N^{e} at t^{k}"
        known = {1: [0, 2, 9, 54, 378], 2: [0, 0, 1, 20, 307]}
        one = {n: 1 for n in range(1, 9)}
        # E = 2 t dF/dt, evaluated at v_n = 1
        g0 = [2 * k * c for k, c in enumerate(F[0].evaluate_weights(one))]
        g1 = [2 * k * c for k, c in enumerate(F[1].evaluate_weights(one))]
        ok = g0 == known[1] and g1 == known[2] and F.genera() == [0, 1, 2]
        return ok, f"genera {F.genera()}; rooted g=0 {_fmt(g0)}, g=1 {_fmt(g1)}"

    return [_timed("topological: N-exponent per map", exponents),
            _timed("topological: free energy N-powers", free_energy_powers)]


def suite_connected(opts: VerifyOptions) -> list[Check]:
    def run():
        F = oracle.labelled_free_energy(3, opts.oracle).collapse_N()
        Xi = series_exp(F)
        bad = []
        n = 0
        for p in range(0, 7, 2):
            for parts in oracle.partitions(p):
                prof = DegreeProfile.from_degrees(parts)
                pc = oracle.partition_coefficient(prof, opts.oracle)
                mono = weight_monomial(prof.as_dict())
                got = _mono_coeff(Xi.coefficient(p // 2), mono)
                n += 1
                if got != pc.coeff:
                    bad.append(f"{prof}: exp(F) {got} vs Wick {pc.coeff}")
        return not bad, "; ".join(bad) or f"{n} profiles with total degree <= 6 agree"

    return [_timed("connected: exp(F) = partition coefficients", run)]


def _mono_coeff(p: WPolynomial, mono) -> WPolynomial:
    """Coefficient of a v-monomial, as a polynomial in N."""
    keep = {}
    target = dict(mono)
    for m, c in p.terms.items():
        d = dict(m)
        nexp = d.pop(N, 0)
        if d == target:
            keep[((N, nexp),) if nexp else ()] = c
    return WPolynomial(keep)


def suite_symmetry(opts: VerifyOptions) -> list[Check]:
    def totals():
        parts = []
        for m in range(1, 5):
            cl = oracle.symmetry_census(m, config=opts.oracle)
            total = sum(math.factorial(2 * m) // c.gamma for c in cl)
            want = oracle.labelled_count(m, config=opts.oracle)
            if total != want:
                return False, f"m={m}: {total} vs {want}"
            parts.append(f"m={m}: {len(cl)} classes, {total} labelled")
        return True, "; ".join(parts)

    def small():
        c1 = oracle.symmetry_census(1, config=opts.oracle)
        c2 = oracle.symmetry_census(2, genus=1, config=opts.oracle)
        ok = sorted(c.gamma for c in c1) == [2, 2] and [(c.gamma, c.count) for c in c2] == [(4, 6)]
        return ok, f"m=1 Gamma {[c.gamma for c in c1]}; m=2 g=1 {[(c.gamma, c.count) for c in c2]}"

    return [_timed("symmetry: orbit-stabilizer totals", totals), _timed("symmetry: small censuses", small)]


def suite_solver(opts: VerifyOptions) -> list[Check]:
    rng = random.Random(opts.seed)

    def cross():
        for i in range(10):
            V = random_weights(rng, 6)
            if solver.solve_rs(V, 10) != solver.solve_rs_joukowsky(V, 10):
                return False, f"trial {i}: {V}"
        return True, "10 random weight specs, T = 10"

    def resolvent():
        V = WeightSpec.formal(range(1, 9))
        table = solver.resolvent_w(V, 4, 8)
        for n in range(1, 9):
            rc = oracle.rooted_counts(4, root_degree=n, config=opts.oracle)[0]
            if table.W[n] != rc:
                return False, f"W_{n} differs from oracle"
        return True, "W_1..W_8 = oracle counts by root degree, m <= 4, formal weights"

    def rooted():
        V = WeightSpec.formal(range(1, 9))
        E = solver.rooted_map_gf(V, 4)
        rc = oracle.rooted_counts(4, config=opts.oracle)[0]
        return E == rc, "E^(0) = oracle rooted planar counts, m <= 4, formal weights"

    return [_timed("solver: solve_rs = joukowsky", cross),
            _timed("solver: resolvent = oracle", resolvent),
            _timed("solver: E^(0) = oracle", rooted)]


def suite_master_equation(opts: VerifyOptions) -> list[Check]:
    rng = random.Random(opts.seed + 1)

    def run(V, T):
        def f():
            res = solver.master_equation_residual(V, T)
            bad = [zp for zp, s in res.items() if s.valuation() is not None]
            return not bad, f"{len(res)} z-coefficients, nonzero at {bad}" if bad else f"{len(res)} z-coefficients vanish"
        return f

    return [
        _timed("master-equation: V = 0", run(WeightSpec(), 8)),
        _timed("master-equation: quartic", run(solver.quartic(), 8)),
        _timed("master-equation: random v1..v4", run(random_weights(rng, 4), 6)),
    ]


def suite_twopoint(opts: VerifyOptions) -> list[Check]:
    def e4():
        R = solver.two_point_r(1, 11)[1]
        E = solver.rooted_map_gf(solver.quartic(), 10)
        return R.divide_t() == E, "R_1 / t = E_4 to t^10"

    def stabilize():
        T = 9
        Rs = solver.two_point_r(6, T)
        Rq, _ = solver.solve_rs(solver.quartic(), T)
        for k in range(T + 1):
            col = [r.coefficient(k).const_value() for r in Rs[1:]]
            if any(a > b for a, b in zip(col, col[1:])):
                return False, f"not monotone at t^{k}: {col}"
            if col[-1] != Rq.coefficient(k).const_value():
                return False, f"t^{k}: R_6 {col[-1]} vs R {Rq.coefficient(k)}"
        catalan = [Fraction(math.comb(2 * k, k) * 3**k, k + 1) for k in range(5)]
        return Rq.numbers()[1::2] == catalan, "R_l nondecreasing in l and equal to R once l > k"

    return [_timed("twopoint: R_1/t = E_4", e4), _timed("twopoint: stabilization", stabilize)]


def suite_bijections(opts: VerifyOptions) -> list[Check]:
    rng = random.Random(opts.seed + 2)

    def grammar():
        for i in range(5):
            V = random_weights(rng, 4)
            R, S = solver.solve_rs(V, 5)
            if bij.enumerate_blossom("R", 5, V)[1] != R or bij.enumerate_blossom("S", 5, V)[1] != S:
                return False, f"trial {i}: {V}"
        return True, "5 random weight specs to order 5"

    def closure():
        V = WeightSpec.formal(range(1, 6))
        trees, _ = bij.enumerate_blossom("S", 4, V)
        keys = set()
        for tree in trees:
            res = bij.closure(tree)
            if genus(res.cmap) != 0:
                return False, f"non-planar closure of {tree}"
            deg = Counter(bij.node_degrees(tree))
            deg[1] += 1
            if degree_profile(res.cmap) != DegreeProfile(deg):
                return False, f"degrees not preserved for {tree}"
            keys.add(bij.marked_key(res))
        return len(keys) == len(trees), f"{len(trees)} S-trees, {len(keys)} distinct marked maps, all planar"

    def labeled():
        T = 7
        series = {ell: bij.enumerate_well_labeled(ell, T)[0] for ell in range(1, 6)}
        t = TSeries.t(T)
        zero = TSeries.zero(T)
        for ell in range(1, 5):
            left = series.get(ell - 1, zero)
            rhs = t + t * series[ell] * (left + series[ell] + series[ell + 1])
            if rhs != series[ell]:
                return False, f"recursion fails at l={ell}"
        tp = solver.two_point_r(4, T)
        return all(tp[ell] == series[ell] for ell in range(1, 5)), "l = 1..4 to order 7"

    return [_timed("bijections: grammar = R, S", grammar),
            _timed("bijections: closure", closure),
            _timed("bijections: well-labeled recursion", labeled)]


SUITES: dict[str, Callable[[VerifyOptions], list[Check]]] = {
    "wick": suite_wick,
    "tetravalent": suite_tetravalent,
    "trivalent": suite_trivalent,
    "eulerian": suite_eulerian,
    "topological": suite_topological,
    "connected": suite_connected,
    "symmetry": suite_symmetry,
    "solver": suite_solver,
    "master-equation": suite_master_equation,
    "twopoint": suite_twopoint,
    "bijections": suite_bijections,
}


def run_suites(names: list[str], opts: VerifyOptions | None = None) -> list[Check]:
    opts = opts or VerifyOptions()
    out = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
        out.extend(SUITES[name](opts))
    return out
