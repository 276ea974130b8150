"""Brute-force ground truth: exhaustive enumeration of labelled maps and Wick pairings.

Every statistic summed here depends on ``(sigma, alpha)`` only through its
conjugacy class, so two shortcuts are available and cross-checked:

* ``fix-alpha``: alpha = (1 2)(3 4)...; sigma runs over S_2m; weight (2m-1)!!.
* ``fix-sigma``: sigma runs over one representative per cycle type; alpha runs
  over all matchings; weight (2m)!/z_k with z_k = prod n^k_n k_n!.

``all-pairs`` enumerates S_2m x I_2m literally (small m only).
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

from .combmap import (
    CombMap,
    DegreeProfile,
    Permutation,
    automorphism_count,
    canonical_code,
    degree_profile,
)
from .combmap import genus as map_genus
from .series import N, GenusSeries, TSeries, WPolynomial, weight_monomial

CycleType = tuple  # sorted ((length, multiplicity), ...)


class TooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class OracleConfig:
    max_edges: int = 5  # full enumeration, default
    hard_max_edges: int = 6
    max_profile_edges: int = 8  # enumeration restricted to one cycle type of sigma
    max_wick_points: int = 12
    strategy: str = "fix-alpha"
    workers: int = 1


DEFAULT = OracleConfig()


def double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def z_factor(ct: CycleType) -> int:
    """Centralizer order; S_p has p!/z_k permutations of cycle type k."""
    return math.prod(n**k * math.factorial(k) for n, k in ct)


def partitions(p: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    if largest is None:
        largest = p
    if p == 0:
        yield ()
        return
    for first in range(min(p, largest), 0, -1):
        for rest in partitions(p - first, first):
            yield (first,) + rest


def cycle_type_of(parts) -> CycleType:
    return tuple(sorted(Counter(parts).items()))


def perm_of_cycle_type(ct: CycleType) -> list[int]:
    """0-based permutation with consecutive cycles of the given type."""
    img = []
    base = 0
    for n, k in ct:
        for _ in range(k):
            img.extend(base + (i + 1) % n for i in range(n))
            base += n
    return img


def matchings(elems: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not elems:
        yield []
        return
    a = elems[0]
    for i in range(1, len(elems)):
        rest = elems[1:i] + elems[i + 1:]
        for m in matchings(rest):
            yield [(a, elems[i])] + m


def involutions(p: int) -> Iterator[list[int]]:
    """All fixed-point-free involutions of 0..p-1 as image lists."""
    for pairs in matchings(list(range(p))):
        img = [0] * p
        for a, b in pairs:
            img[a] = b
            img[b] = a
        yield img


def _ncycles(img) -> int:
    seen = bytearray(len(img))
    c = 0
    for s in range(len(img)):
        if not seen[s]:
            c += 1
            x = s
            while not seen[x]:
                seen[x] = 1
                x = img[x]
    return c


def _cycle_lengths(img) -> list[int]:
    seen = bytearray(len(img))
    out = []
    for s in range(len(img)):
        if not seen[s]:
            n = 0
            x = s
            while not seen[x]:
                seen[x] = 1
                x = img[x]
                n += 1
            out.append(n)
    return out


def _transitive(sig, alp) -> bool:
    p = len(sig)
    seen = bytearray(p)
    seen[0] = 1
    stack = [0]
    cnt = 1
    while stack:
        x = stack.pop()
        for y in (sig[x], alp[x]):
            if not seen[y]:
                seen[y] = 1
                cnt += 1
                stack.append(y)
    return cnt == p


def _chi(sig, alp) -> int:
    phi = [sig[a] for a in alp]
    return _ncycles(sig) - len(sig) // 2 + _ncycles(phi)


def _to_map(sig, alp) -> CombMap:
    return CombMap(Permutation(tuple(x + 1 for x in sig)), Permutation(tuple(x + 1 for x in alp)))


def _check_m(m: int, config: OracleConfig, restricted: bool = False):
    if m < 1:
        raise ValueError("need at least one edge")
    cap = config.max_profile_edges if restricted else min(config.max_edges, config.hard_max_edges)
    if m > cap:
        raise TooLargeError(f"m={m} exceeds the enumeration cap {cap}")


def enumerate_maps(
    m: int,
    genus: int | None = None,
    profile: DegreeProfile | Mapping[int, int] | None = None,
    mode: str | None = None,
    config: OracleConfig = DEFAULT,
) -> Iterator[tuple[CombMap, int]]:
    """Yield ``(map, multiplicity)``; multiplicities sum to the number of labelled maps."""
    mode = mode or config.strategy
    ct = None
    if profile is not None:
        if not isinstance(profile, DegreeProfile):
            profile = DegreeProfile(profile)
        ct = profile.counts
        if profile.total_degree() != 2 * m:
            return
    _check_m(m, config, restricted=(mode == "fix-sigma" and ct is not None))
    p = 2 * m
    if mode == "all-pairs":
        if m > 3:
            raise TooLargeError("all-pairs mode is limited to m <= 3")
        invs = list(involutions(p))
        for sig in itertools.permutations(range(p)):
            if ct is not None and cycle_type_of(_cycle_lengths(sig)) != ct:
                continue
            for alp in invs:
                if _transitive(sig, alp) and (genus is None or _chi(sig, alp) == 2 - 2 * genus):
                    yield _to_map(sig, alp), 1
    elif mode == "fix-alpha":
        alp = [i ^ 1 for i in range(p)]
        mult = double_factorial(p - 1)
        for sig in itertools.permutations(range(p)):
            if ct is not None and cycle_type_of(_cycle_lengths(sig)) != ct:
                continue
            if _transitive(sig, alp) and (genus is None or _chi(sig, alp) == 2 - 2 * genus):
                yield _to_map(sig, alp), mult
    elif mode == "fix-sigma":
        types = [ct] if ct is not None else [cycle_type_of(q) for q in partitions(p)]
        for c in types:
            sig = perm_of_cycle_type(c)
            mult = math.factorial(p) // z_factor(c)
            for alp in involutions(p):
                if _transitive(sig, alp) and (genus is None or _chi(sig, alp) == 2 - 2 * genus):
                    yield _to_map(sig, alp), mult
    else:
        raise ValueError(f"unknown enumeration mode {mode!r}")


def _census_fix_alpha(m: int, first: int | None) -> Counter:
    p = 2 * m
    alp = [i ^ 1 for i in range(p)]
    out: Counter = Counter()
    if first is None:
        perms = itertools.permutations(range(p))
    else:
        rest = [x for x in range(p) if x != first]
        perms = ((first,) + q for q in itertools.permutations(rest))
    for sig in perms:
        if _transitive(sig, alp):
            g = (2 - _chi(sig, alp)) // 2
            out[g, cycle_type_of(_cycle_lengths(sig))] += 1
    return out


def _census_fix_sigma(m: int, ct: CycleType) -> Counter:
    p = 2 * m
    sig = perm_of_cycle_type(ct)
    out: Counter = Counter()
    for alp in involutions(p):
        if _transitive(sig, alp):
            out[(2 - _chi(sig, alp)) // 2] += 1
    return out


_CENSUS_CACHE: dict = {}


def census(
    m: int,
    profile: DegreeProfile | Mapping[int, int] | None = None,
    config: OracleConfig = DEFAULT,
) -> Counter:
    """Labelled map counts keyed by ``(genus, cycle type of sigma)``.

    With ``profile`` only that cycle type is enumerated (always by fix-sigma).
    """
    if profile is not None:
        if not isinstance(profile, DegreeProfile):
            profile = DegreeProfile(profile)
        ct = profile.counts
        if profile.total_degree() != 2 * m:
            return Counter()
        _check_m(m, config, restricted=True)
        key = ("sigma", m, ct)
        if key not in _CENSUS_CACHE:
            mult = math.factorial(2 * m) // z_factor(ct)
            _CENSUS_CACHE[key] = Counter(
                {(g, ct): c * mult for g, c in _census_fix_sigma(m, ct).items()}
            )
        return Counter(_CENSUS_CACHE[key])

    _check_m(m, config)
    key = (config.strategy, m)
    if key in _CENSUS_CACHE:
        return Counter(_CENSUS_CACHE[key])
    p = 2 * m
    out: Counter = Counter()
    if config.strategy == "fix-alpha":
        mult = double_factorial(p - 1)
        if config.workers > 1:
            # partition S_2m by the image of the first half-edge
            with ProcessPoolExecutor(config.workers) as pool:
                parts = pool.map(_census_fix_alpha, [m] * p, range(p))
                raw = sum(parts, Counter())
        else:
            raw = _census_fix_alpha(m, None)
        for k, c in raw.items():
            out[k] = c * mult
    elif config.strategy == "fix-sigma":
        for q in partitions(p):
            ct = cycle_type_of(q)
            mult = math.factorial(p) // z_factor(ct)
            for g, c in _census_fix_sigma(m, ct).items():
                out[g, ct] = c * mult
    elif config.strategy == "all-pairs":
        for cmap, mult in enumerate_maps(m, mode="all-pairs", config=config):
            sig = [x - 1 for x in cmap.sigma.images]
            alp = [x - 1 for x in cmap.alpha.images]
            out[(2 - _chi(sig, alp)) // 2, cycle_type_of(_cycle_lengths(sig))] += mult
    else:
        raise ValueError(f"unknown strategy {config.strategy!r}")
    _CENSUS_CACHE[key] = out
    return Counter(out)


def labelled_count(m: int, genus: int | None = None, profile=None, config: OracleConfig = DEFAULT) -> int:
    return sum(c for (g, _), c in census(m, profile, config).items() if genus is None or g == genus)


def _weight(ct: CycleType, drop: int | None = None) -> WPolynomial:
    d = dict(ct)
    if drop is not None:
        d[drop] -= 1
    return WPolynomial({weight_monomial(d): 1})


def labelled_free_energy(m_max: int, config: OracleConfig = DEFAULT) -> GenusSeries:
    """``F^(g) = sum_m t^m/(2m)! * sum over labelled genus-g maps of prod v_n``."""
    by_genus: dict[int, list] = defaultdict(lambda: [WPolynomial() for _ in range(m_max + 1)])
    for m in range(1, m_max + 1):
        fact = math.factorial(2 * m)
        for (g, ct), c in census(m, config=config).items():
            by_genus[g][m] = by_genus[g][m] + _weight(ct) * Fraction(c, fact)
    return GenusSeries(m_max, {g: TSeries(cs, m_max) for g, cs in by_genus.items()})


def rooted_counts(
    m_max: int, root_degree: int | None = None, config: OracleConfig = DEFAULT
) -> GenusSeries:
    """Rooted maps per genus, weight t per edge.

    Without ``root_degree`` every vertex carries v_n and the genus-0 constant
    term is 1 (the one-vertex map). With ``root_degree = n`` only rootings at
    degree-n vertices count and the root vertex carries no weight.
    """
    by_genus: dict[int, list] = defaultdict(lambda: [WPolynomial() for _ in range(m_max + 1)])
    if root_degree is None or root_degree == 0:
        by_genus[0][0] = WPolynomial.const(1)
    for m in range(1, m_max + 1):
        fact = math.factorial(2 * m)
        for (g, ct), c in census(m, config=config).items():
            if root_degree is None:
                w = _weight(ct) * Fraction(2 * m * c, fact)
            else:
                k = dict(ct).get(root_degree, 0)
                if not k:
                    continue
                w = _weight(ct, drop=root_degree) * Fraction(root_degree * k * c, fact)
            by_genus[g][m] = by_genus[g][m] + w
    return GenusSeries(m_max, {g: TSeries(cs, m_max) for g, cs in by_genus.items()})


def rooted_count_profile(profile, genus: int = 0, config: OracleConfig = DEFAULT) -> Fraction:
    """Rooted maps of the given genus whose vertex degrees are exactly ``profile``."""
    if not isinstance(profile, DegreeProfile):
        profile = DegreeProfile(profile)
    p = profile.total_degree()
    if p % 2:
        return Fraction(0)
    m = p // 2
    labelled = labelled_count(m, genus, profile, config)
    return Fraction(2 * m * labelled, math.factorial(2 * m))


@dataclass(frozen=True)
class NGradedValue:
    """``t^t_power`` times a polynomial in N (and possibly the weights)."""

    t_power: int
    coeff: WPolynomial
    pairings: int = 0

    def is_empty(self) -> bool:
        return self.coeff.is_zero()

    def by_N_exponent(self) -> dict[int, WPolynomial]:
        return {e: c for e, c in self.coeff.by_power_of(N).items() if not c.is_zero()}


def wick_cycle_expectation(ct, config: OracleConfig = DEFAULT) -> NGradedValue:
    """``< prod_n (Tr M^n)^(c_n) >`` for a Gaussian Hermitian matrix of covariance t/N.

    ``ct`` is a multiset of cycle lengths (iterable of parts or a DegreeProfile).
    """
    if isinstance(ct, DegreeProfile):
        ctype = ct.counts
    elif isinstance(ct, Mapping):
        ctype = DegreeProfile(ct).counts
    else:
        ctype = cycle_type_of(ct)
    p = sum(n * k for n, k in ctype)
    if p % 2:
        return NGradedValue(0, WPolynomial(), 0)
    if p > config.max_wick_points:
        raise TooLargeError(f"{p} matrix elements exceeds the Wick cap {config.max_wick_points}")
    sig = perm_of_cycle_type(ctype)
    counts: Counter = Counter()
    npairs = 0
    for alp in involutions(p):
        npairs += 1
        counts[_ncycles([sig[a] for a in alp])] += 1
    # (t/N)^(p/2) * sum_alpha N^c(sigma o alpha)
    coeff = WPolynomial({((N, c - p // 2),): k for c, k in counts.items()})
    return NGradedValue(p // 2, coeff, npairs)


def partition_coefficient(profile, config: OracleConfig = DEFAULT) -> NGradedValue:
    """Coefficient of ``prod v_n^k_n`` in the partition function (disconnected diagrams included)."""
    if not isinstance(profile, DegreeProfile):
        profile = DegreeProfile(profile)
    ct = profile.counts
    if not ct:
        return NGradedValue(0, WPolynomial.const(1), 1)
    w = wick_cycle_expectation(profile, config)
    if w.is_empty():
        return w
    pref = WPolynomial.var(N, profile.num_parts()) * Fraction(1, z_factor(ct))
    return NGradedValue(w.t_power, w.coeff * pref, w.pairings)


def partition_function(max_points: int, config: OracleConfig = DEFAULT) -> TSeries:
    """``Xi_N`` truncated to profiles of total degree <= max_points, as a series in t."""
    T = max_points // 2
    coeffs = [WPolynomial() for _ in range(T + 1)]
    for p in range(0, 2 * T + 1, 2):
        for q in partitions(p):
            ct = cycle_type_of(q)
            v = partition_coefficient(DegreeProfile(ct), config)
            coeffs[v.t_power] = coeffs[v.t_power] + v.coeff * WPolynomial({weight_monomial(dict(ct)): 1})
    return TSeries(coeffs, T)


@dataclass
class CensusClass:
    code: tuple
    gamma: int
    count: int
    genus: int
    profile: DegreeProfile = field(default_factory=DegreeProfile)


def symmetry_census(m: int, genus: int | None = None, config: OracleConfig = DEFAULT) -> list[CensusClass]:
    """Isomorphism classes of labelled maps with their symmetry factors.

    Raises AssertionError if some class size differs from (2m)!/Gamma.
    """
    classes: dict = {}
    counts: Counter = Counter()
    cfg = OracleConfig(**{**config.__dict__, "strategy": "fix-alpha"})
    for cmap, mult in enumerate_maps(m, genus=genus, mode="fix-alpha", config=cfg):
        code = canonical_code(cmap)
        counts[code] += mult
        if code not in classes:
            classes[code] = cmap
    out = []
    fact = math.factorial(2 * m)
    for code in sorted(classes):
        cmap = classes[code]
        gamma = automorphism_count(cmap)
        if counts[code] * gamma != fact:
            raise AssertionError(f"class {code}: {counts[code]} labelled maps but (2m)!/Gamma = {fact // gamma}")
        out.append(CensusClass(code, gamma, counts[code], map_genus(cmap), degree_profile(cmap)))
    return out


def default_workers() -> int:
    return os.cpu_count() or 1


def leaf_marked_series(m_max: int, config: OracleConfig = DEFAULT) -> tuple[TSeries, TSeries]:
    """Planar maps with unweighted marked degree-1 vertices, by brute force.

    First series: an ordered pair of distinct marked degree-1 vertices.
    Second series: one marked degree-1 vertex and one marked face.
    """
    r = [WPolynomial() for _ in range(m_max + 1)]
    s = [WPolynomial() for _ in range(m_max + 1)]
    for m in range(1, m_max + 1):
        fact = math.factorial(2 * m)
        for (g, ct), c in census(m, config=config).items():
            if g:
                continue
            k1 = dict(ct).get(1, 0)
            faces = 2 - sum(k for _, k in ct) + m
            if k1 >= 1:
                s[m] = s[m] + _weight(ct, drop=1) * Fraction(k1 * faces * c, fact)
            if k1 >= 2:
                d = dict(ct)
                d[1] -= 2
                r[m] = r[m] + WPolynomial({weight_monomial(d): 1}) * Fraction(k1 * (k1 - 1) * c, fact)
    return TSeries(r, m_max), TSeries(s, m_max)
