"""Planar (genus 0) solution of the one-matrix model with prescribed vertex degrees.

Weights are given as a ``WeightSpec``: ``v_n`` may be the formal variable, an
exact rational, or any polynomial in other weights. Every series is exact.

Conventions fixed here:

* ``rooted_map_gf`` includes the one-vertex map, so its constant term is 1.
* The root-degree recursion reads ``W_n = t sum_i W_i W_{n-2-i} + t sum_m v_m W_{n+m-2}``.
* ``ResolventTable.tP`` stores ``t * P(z)``; the master equation is checked
  after multiplying through by ``t``, which turns the ``1/t`` constant of
  ``P(z)`` into the series 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .combmap import DegreeProfile
from .series import ONE, ZERO, TSeries, WPolynomial, fixed_point


@dataclass(frozen=True)
class WeightSpec:
    weights: tuple  # sorted ((n, WPolynomial), ...)

    def __init__(self, weights: Mapping[int, object] = None):
        items = []
        for n, w in (weights or {}).items():
            if int(n) < 1:
                raise ValueError(f"weight index must be >= 1, got {n}")
            w = WPolynomial.coerce(w)
            if not w.is_zero():
                items.append((int(n), w))
        object.__setattr__(self, "weights", tuple(sorted(items)))

    @classmethod
    def formal(cls, degrees) -> WeightSpec:
        return cls({n: WPolynomial.var(n) for n in degrees})

    def __getitem__(self, n: int) -> WPolynomial:
        return dict(self.weights).get(n, ZERO)

    def items(self):
        return self.weights

    @property
    def max_degree(self) -> int:
        return max((n for n, _ in self.weights), default=0)

    def is_even(self) -> bool:
        return all(n % 2 == 0 for n, _ in self.weights)


def quartic(formal: bool = False) -> WeightSpec:
    return WeightSpec.formal([4]) if formal else WeightSpec({4: 1})


def cubic(formal: bool = False) -> WeightSpec:
    return WeightSpec.formal([3]) if formal else WeightSpec({3: 1})


def _rs_rhs(V: WeightSpec, R: TSeries, S: TSeries) -> tuple[TSeries, TSeries]:
    T = R.order
    t = TSeries.t(T)
    Rp = [TSeries.one(T)]
    Sp = [TSeries.one(T)]
    for _ in range(V.max_degree):
        Rp.append(Rp[-1] * R)
        Sp.append(Sp[-1] * S)
    sumR = TSeries.zero(T)
    sumS = TSeries.zero(T)
    f = math.factorial
    for n, v in V.items():
        accR = TSeries.zero(T)
        for j in range(1, n // 2 + 1):
            c = f(n - 1) // (f(j) * f(j - 1) * f(n - 2 * j))
            accR = accR + Rp[j] * Sp[n - 2 * j] * c
        accS = TSeries.zero(T)
        for j in range(0, (n - 1) // 2 + 1):
            c = f(n - 1) // (f(j) ** 2 * f(n - 2 * j - 1))
            accS = accS + Rp[j] * Sp[n - 2 * j - 1] * c
        sumR = sumR + accR * v
        sumS = sumS + accS * v
    return t + t * sumR, t * sumS


def solve_rs(V: WeightSpec, T: int) -> tuple[TSeries, TSeries]:
    """The series R, S vanishing at t = 0, to order ``T``."""
    R, S = fixed_point(lambda x: _rs_rhs(V, x[0], x[1]), T, size=2)
    return R, S


def vprime_u_coefficient(V: WeightSpec, R: TSeries, S: TSeries, power: int) -> TSeries:
    """``[u^power] V'(u + S + R/u)`` with ``V'(z) = sum v_n z^(n-1)``."""
    T = R.order
    acc = TSeries.zero(T)
    pw = {0: TSeries.one(T)}
    k_have = 0
    for n, v in V.items():
        while k_have < n - 1:
            k_have += 1
            pw = _laurent_mul(pw, R, S)
        c = pw.get(power)
        if c is not None:
            acc = acc + c * v
    return acc


def _laurent_mul(p: dict[int, TSeries], R: TSeries, S: TSeries) -> dict[int, TSeries]:
    one = TSeries.one(R.order)
    out: dict[int, TSeries] = {}
    for e, c in p.items():
        for de, f in ((1, one), (0, S), (-1, R)):
            term = c * f
            out[e + de] = out[e + de] + term if e + de in out else term
    return out


def solve_rs_joukowsky(V: WeightSpec, T: int) -> tuple[TSeries, TSeries]:
    """Same R, S computed by extracting Laurent coefficients in u of V'(u + S + R/u)."""
    t = TSeries.t(T)

    def system(x):
        R, S = x
        return [
            t + t * vprime_u_coefficient(V, R, S, -1),
            t * vprime_u_coefficient(V, R, S, 0),
        ]

    R, S = fixed_point(system, T, size=2)
    return R, S


def rooted_map_gf(V: WeightSpec, T: int, R: TSeries = None, S: TSeries = None) -> TSeries:
    """Rooted planar maps, weight t per edge and v_n per degree-n vertex, to order ``T``."""
    if R is None:
        R, S = solve_rs(V, T + 1)
    T1 = T + 1
    f = math.factorial
    acc = R + S * S
    Rp = [TSeries.one(T1)]
    Sp = [TSeries.one(T1)]
    for _ in range(V.max_degree + 2):
        Rp.append(Rp[-1] * R)
        Sp.append(Sp[-1] * S)
    for n, v in V.items():
        inner = TSeries.zero(T1)
        for j in range(2, (n + 2) // 2 + 1):
            c = Fraction((2 * n - 3 * j + 2) * f(n - 1), f(j) * f(j - 2) * f(n - 2 * j + 2))
            inner = inner + Rp[j] * Sp[n - 2 * j + 2] * c
        acc = acc - inner * v
    # the "- t" of the closed form would remove the one-vertex map; it is kept
    return acc.divide_t()


def rooted_map_gf_u(V: WeightSpec, T: int) -> TSeries:
    """Third route to E^(0): ``(R + S^2 - [u^-3]V' - 2S [u^-2]V') / t`` (one-vertex map kept)."""
    R, S = solve_rs(V, T + 1)
    acc = R + S * S - vprime_u_coefficient(V, R, S, -3) - S * vprime_u_coefficient(V, R, S, -2) * 2
    return acc.divide_t()


@dataclass
class ResolventTable:
    """``W[n]`` for n = 0..n_max and the coefficients of ``t * P(z)``."""

    order: int
    W: list[TSeries]
    tP: list[TSeries]
    V: WeightSpec = field(default_factory=WeightSpec)


def resolvent_w(V: WeightSpec, T: int, n_max: int) -> ResolventTable:
    """Rooted planar maps by root degree (root vertex unweighted), to order ``T``."""
    D = V.max_degree
    # W_n at t^k reaches W_{n+(D-2)k} at t^0; beyond 2k root degree is impossible anyway
    size = n_max + max(D - 2, 0) * T + 2
    weights = list(V.items())
    coef = [[ZERO] * (T + 1) for _ in range(size + 1)]
    coef[0][0] = ONE
    for k in range(1, T + 1):
        for n in range(1, size + 1):
            acc = ZERO
            for i in range(0, n - 1):
                j = n - 2 - i
                for a in range(0, k):
                    x, y = coef[i][a], coef[j][k - 1 - a]
                    if x.terms and y.terms:
                        acc = acc + x * y
            for m, v in weights:
                idx = n + m - 2
                if idx <= size:
                    y = coef[idx][k - 1]
                    if y.terms:
                        acc = acc + v * y
            coef[n][k] = acc
    W = [TSeries(coef[n], T) for n in range(n_max + 1)]
    # t P(z) = 1 - t sum_n (sum_{m >= n+2} v_m W_{m-2-n}) z^n
    t = TSeries.t(T)
    full = [TSeries(coef[n], T) for n in range(size + 1)]
    tP = []
    for n in range(0, max(D - 1, 1)):
        acc = TSeries.zero(T)
        for m, v in weights:
            if m >= n + 2:
                acc = acc + full[m - 2 - n] * v
        term = -(t * acc)
        if n == 0:
            term = term + 1
        tP.append(term)
    return ResolventTable(T, W, tP, V)


def master_equation_residual(V: WeightSpec, T: int, n_max: int | None = None) -> dict[int, TSeries]:
    """``t * (W^2 - (z/t - V'(z)) W + P)`` as ``{power of z: series}``.

    Only the coefficients fully determined by the truncated tail
    ``sum_{n <= n_max} W_n z^(-n-1)`` are returned; all must vanish.
    """
    D = V.max_degree
    if n_max is None:
        n_max = 2 * T + max(D, 2)
    table = resolvent_w(V, T, n_max)
    W = table.W
    t = TSeries.t(T)
    lowest = -(n_max - max(D, 2) + 2)  # most negative z power still exact
    out: dict[int, TSeries] = {}
    for zp in range(lowest, max(D - 2, 0) + 1):
        acc = TSeries.zero(T)
        if zp < 0:
            k = -zp
            # t W^2
            for a in range(0, k - 1):
                b = k - 2 - a
                acc = acc + t * W[a] * W[b]
            # - z W
            acc = acc - W[k]
        elif zp == 0:
            acc = acc - W[0]
        # + t V'(z) W: v_m z^(m-1) * W_n z^(-n-1) -> z^(m-n-2)
        for m, v in V.items():
            n = m - 2 - zp
            if 0 <= n <= n_max:
                acc = acc + t * W[n] * v
        if 0 <= zp < len(table.tP):
            acc = acc + table.tP[zp]
        out[zp] = acc
    return out


def tetravalent_counts(k_max: int) -> list[int]:
    """Rooted planar 4-regular maps with k vertices: 2 (2k)! 3^k / (k! (k+2)!)."""
    f = math.factorial
    out = []
    for k in range(k_max + 1):
        x = Fraction(2 * f(2 * k) * 3**k, f(k) * f(k + 2))
        assert x.denominator == 1
        out.append(int(x))
    return out


def double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def trivalent_counts(k_max: int) -> list[int]:
    """Rooted planar 3-regular maps with 2k vertices: 2^(2k+1) (3k)!! / ((k+2)! k!!)."""
    out = []
    for k in range(k_max + 1):
        x = Fraction(2 ** (2 * k + 1) * double_factorial(3 * k), math.factorial(k + 2) * double_factorial(k))
        assert x.denominator == 1
        out.append(int(x))
    return out


class InvalidProfileError(ValueError):
    pass


def eulerian_count(profile) -> int:
    """Rooted planar maps with exactly ``profile`` as vertex degrees, all degrees even.

    ``profile`` maps a vertex degree (2n) to the number of such vertices.
    """
    if not isinstance(profile, DegreeProfile):
        profile = DegreeProfile(profile)
    if not profile.counts:
        raise InvalidProfileError("empty profile")
    half = {}
    for d, k in profile.counts:
        if d % 2:
            raise InvalidProfileError(f"odd degree {d} in an Eulerian profile")
        half[d // 2] = k
    f = math.factorial
    edges = sum(n * k for n, k in half.items())
    x = Fraction(2 * f(edges), f(sum((n - 1) * k for n, k in half.items()) + 2))
    for n, k in half.items():
        x *= Fraction(math.comb(2 * n - 1, n) ** k, f(k))
    if x.denominator != 1:
        raise ArithmeticError(f"non-integral count {x}")
    return int(x)


def _two_point_system(L: int, T: int, Rinf: TSeries):
    t = TSeries.t(T)
    zero = TSeries.zero(T)

    def system(x):
        out = []
        for i in range(L):
            left = x[i - 1] if i > 0 else zero
            right = x[i + 1] if i + 1 < L else Rinf
            out.append(t + t * x[i] * (left + x[i] + right))
        return out

    return system


def two_point_r(ell_max: int, T: int) -> list[TSeries]:
    """``[R_0, R_1, ..., R_ell_max]`` with R_0 = 0 and R_l = t + t R_l (R_{l-1} + R_l + R_{l+1}).

    Labels beyond ``ell_max + T`` are frozen to the limit R (quartic, v_4 = 1);
    a second run two labels further out must agree.
    """
    if ell_max < 1 or T < 1:
        raise ValueError("need ell_max >= 1 and T >= 1")
    Rinf, _ = solve_rs(quartic(), T)
    runs = []
    for L in (ell_max + T, ell_max + T + 2):
        runs.append(fixed_point(_two_point_system(L, T, Rinf), T, size=L))
    a, b = runs
    if a[:ell_max] != b[:ell_max]:
        raise AssertionError("two-point boundary leaked into the requested labels")
    return [TSeries.zero(T)] + a[:ell_max]
