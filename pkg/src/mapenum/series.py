"""Exact truncated power series in ``t`` over polynomials in the weights ``v_n``.

Coefficients are :class:`fractions.Fraction`; nothing here ever touches a float.
A monomial is a sorted tuple of ``(variable, exponent)`` pairs. Variable ``n >= 1``
is the vertex weight ``v_n``; variable ``N`` (= 0) is the matrix size, the only
variable allowed a negative exponent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

N = 0

Monomial = tuple  # tuple[tuple[int, int], ...]
Scalar = Union[int, Fraction]


class TruncationMismatch(ValueError):
    pass


class NotContractiveError(ArithmeticError):
    pass


class MissingWeightError(KeyError):
    def __init__(self, n):
        super().__init__(n)
        self.n = n

    def __str__(self):
        return f"no value given for weight v_{self.n}"


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        e2 = d.get(k, 0) + e
        if e2:
            d[k] = e2
        else:
            del d[k]
    return tuple(sorted(d.items()))


def _mono_str(m: Monomial) -> str:
    parts = []
    for k, e in m:
        name = "N" if k == N else f"v{k}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


class WPolynomial:
    """Sparse polynomial in the weights (Laurent in ``N``) with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    m = tuple(sorted((k, e) for k, e in m if e))
                    self.terms[m] = self.terms.get(m, 0) + Fraction(c)
            self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def const(cls, c: Scalar) -> WPolynomial:
        return cls({(): c})

    @classmethod
    def var(cls, n: int, power: int = 1) -> WPolynomial:
        if n != N and power < 0:
            raise ValueError("only N may carry a negative exponent")
        return cls({((n, power),): 1})

    @classmethod
    def coerce(cls, x) -> WPolynomial:
        if isinstance(x, WPolynomial):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to WPolynomial")

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(not m for m in self.terms)

    def const_value(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def variables(self) -> set[int]:
        return {k for m in self.terms for k, _ in m}

    def __add__(self, other):
        other = WPolynomial.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            c2 = out.get(m, 0) + c
            if c2:
                out[m] = c2
            else:
                out.pop(m, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-WPolynomial.coerce(other))

    def __rsub__(self, other):
        return WPolynomial.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return _raw({})
            return _raw({m: c * other for m, c in self.terms.items()})
        other = WPolynomial.coerce(other)
        if not self.terms or not other.terms:
            return _raw({})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return _raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar):
        return self * (1 / Fraction(other))

    def __pow__(self, k: int):
        out = WPolynomial.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WPolynomial.const(other)
        if not isinstance(other, WPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, mono: Mapping[int, int] | Monomial) -> Fraction:
        if isinstance(mono, Mapping):
            mono = tuple(sorted((k, e) for k, e in mono.items() if e))
        return self.terms.get(tuple(mono), Fraction(0))

    def substitute(self, values: Mapping[int, Scalar]) -> WPolynomial:
        """Replace ``v_n`` by ``values[n]``; variables absent from ``values`` are kept."""
        out: dict = {}
        for m, c in self.terms.items():
            rest = []
            for k, e in m:
                if k in values:
                    c = c * Fraction(values[k]) ** e
                else:
                    rest.append((k, e))
            if c:
                r = tuple(rest)
                out[r] = out.get(r, 0) + c
        return _raw({m: c for m, c in out.items() if c})

    def evaluate(self, values: Mapping[int, Scalar]) -> Fraction:
        """Full evaluation; every variable present must have a value."""
        for k in self.variables():
            if k not in values:
                raise MissingWeightError(k)
        return self.substitute(values).const_value()

    def by_power_of(self, var: int) -> dict[int, WPolynomial]:
        """Split into ``{exponent of var: coefficient polynomial}``."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = dict(m).get(var, 0)
            rest = tuple((k, x) for k, x in m if k != var)
            out.setdefault(e, {})[rest] = c
        return {e: _raw(t) for e, t in out.items()}

    def __repr__(self):
        return f"WPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            if not m:
                parts.append(str(c))
            elif c == 1:
                parts.append(_mono_str(m))
            else:
                parts.append(f"{c}*{_mono_str(m)}")
        return " + ".join(parts)


def _raw(terms: dict) -> WPolynomial:
    p = WPolynomial.__new__(WPolynomial)
    p.terms = terms
    return p


ZERO = _raw({})
ONE = WPolynomial.const(1)


class TSeries:
    """Dense series ``c_0 + c_1 t + ... + c_T t^T`` with polynomial coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [WPolynomial.coerce(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = cs[: order + 1]
        cs += [ZERO] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = cs

    @classmethod
    def zero(cls, order: int) -> TSeries:
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> TSeries:
        return cls([ONE], order)

    @classmethod
    def t(cls, order: int) -> TSeries:
        return cls([ZERO, ONE], order)

    @classmethod
    def const(cls, c, order: int) -> TSeries:
        return cls([c], order)

    def _check(self, other: TSeries):
        if self.order != other.order:
            raise TruncationMismatch(f"truncation orders differ: {self.order} vs {other.order}")

    def _lift(self, other):
        if isinstance(other, TSeries):
            self._check(other)
            return other
        return TSeries([other], self.order)

    def __add__(self, other):
        other = self._lift(other)
        return TSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return TSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, TSeries):
            c = WPolynomial.coerce(other)
            return TSeries([a * c for a in self.coeffs], self.order)
        self._check(other)
        T = self.order
        a_nz = [(i, a) for i, a in enumerate(self.coeffs) if a.terms]
        b_nz = [(j, b) for j, b in enumerate(other.coeffs) if b.terms]
        out = [ZERO] * (T + 1)
        for i, a in a_nz:
            for j, b in b_nz:
                if i + j > T:
                    break
                out[i + j] = out[i + j] + a * b
        return TSeries(out, T)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = TSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def agrees_with(self, other: TSeries, upto: int) -> bool:
        """Coefficients ``0..upto`` coincide (ignores truncation orders)."""
        return all(self.coefficient(k) == other.coefficient(k) for k in range(upto + 1))

    def coefficient(self, m: int) -> WPolynomial:
        if not 0 <= m <= self.order:
            raise IndexError(f"t^{m} is outside the truncation order {self.order}")
        return self.coeffs[m]

    def valuation(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if c.terms:
                return k
        return None

    def truncate(self, order: int) -> TSeries:
        if order > self.order:
            raise TruncationMismatch(f"cannot extend order {self.order} to {order}")
        return TSeries(self.coeffs[: order + 1], order)

    def shift(self) -> TSeries:
        """Multiply by ``t`` keeping the order."""
        return TSeries([ZERO] + self.coeffs[:-1], self.order)

    def divide_t(self) -> TSeries:
        """Divide by ``t``; the constant term must vanish and the order drops by one."""
        if self.coeffs[0].terms:
            raise ValueError("series has a nonzero constant term")
        if self.order == 0:
            raise ValueError("cannot divide an order-0 series by t")
        return TSeries(self.coeffs[1:], self.order - 1)

    def map_coeffs(self, f: Callable[[WPolynomial], WPolynomial]) -> TSeries:
        return TSeries([f(c) for c in self.coeffs], self.order)

    def substitute_weights(self, values: Mapping[int, Scalar]) -> TSeries:
        return self.map_coeffs(lambda c: c.substitute(values))

    def evaluate_weights(self, values: Mapping[int, Scalar]) -> list[Fraction]:
        return [c.evaluate(values) for c in self.coeffs]

    def numbers(self) -> list[Fraction]:
        """Coefficients as rationals; all must be constants."""
        out = []
        for k, c in enumerate(self.coeffs):
            if not c.is_const():
                raise ValueError(f"coefficient of t^{k} is not a constant: {c}")
            out.append(c.const_value())
        return out

    def __repr__(self):
        return f"TSeries({self}, order={self.order})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.terms:
                tk = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
                cs = str(c)
                if k and len(c.terms) > 1:
                    cs = f"({cs})"
                parts.append(cs if not tk else (tk if cs == "1" else f"{cs}*{tk}"))
        return " + ".join(parts) + f" + O(t^{self.order + 1})" if parts else f"O(t^{self.order + 1})"


def arith(a: TSeries, b: TSeries, op: str) -> TSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def coefficient(s: TSeries, m: int) -> WPolynomial:
    return s.coefficient(m)


def derivative_t(s: TSeries) -> TSeries:
    if s.order == 0:
        return TSeries.zero(0)
    return TSeries([c * k for k, c in enumerate(s.coeffs) if k], s.order - 1)


def series_exp(s: TSeries) -> TSeries:
    if s.coeffs[0].terms:
        raise ValueError("exp needs a series with zero constant term")
    T = s.order
    e = [ONE] + [ZERO] * T
    # n e_n = sum_k k s_k e_{n-k}
    for n in range(1, T + 1):
        acc = ZERO
        for k in range(1, n + 1):
            if s.coeffs[k].terms and e[n - k].terms:
                acc = acc + s.coeffs[k] * e[n - k] * k
        e[n] = acc / n
    return TSeries(e, T)


def series_log(s: TSeries) -> TSeries:
    if s.coeffs[0] != ONE:
        raise ValueError("log needs a series with constant term 1")
    T = s.order
    lg = [ZERO] * (T + 1)
    # n s_n = sum_k k l_k s_{n-k}
    for n in range(1, T + 1):
        acc = s.coeffs[n] * n
        for k in range(1, n):
            if lg[k].terms and s.coeffs[n - k].terms:
                acc = acc - lg[k] * s.coeffs[n - k] * k
        lg[n] = acc / n
    return TSeries(lg, T)


def substitute_weights(p, values: Mapping[int, Scalar]):
    """Exact evaluation of a polynomial (to a Fraction) or a series (to numbers)."""
    if isinstance(p, WPolynomial):
        return p.evaluate(values)
    if isinstance(p, TSeries):
        for c in p.coeffs:
            for k in c.variables():
                if k not in values:
                    raise MissingWeightError(k)
        return p.substitute_weights(values)
    raise TypeError(type(p).__name__)


def fixed_point(
    system: Callable[[list[TSeries]], Sequence[TSeries]], T: int, size: int = 1
) -> list[TSeries]:
    """Unique solution of ``X = system(X)`` to order ``T`` for a t-adic contraction.

    Iterates from zero. Each step must fix one more coefficient; a change in an
    already-fixed coefficient means ``system`` is not contractive.
    """
    x = [TSeries.zero(T) for _ in range(size)]
    for i in range(T + 2):
        y = list(system(x))
        if len(y) != size:
            raise ValueError(f"system returned {len(y)} series, expected {size}")
        for a, b in zip(x, y):
            if not a.agrees_with(b, min(i - 1, T)):
                raise NotContractiveError(f"coefficient below t^{i} moved at iteration {i}")
        x = y
    if list(system(x)) != x:
        raise NotContractiveError("iteration did not settle")
    return x


@dataclass
class GenusSeries:
    """Genus-graded family ``g -> F^(g)(t)``; the full object is sum N^(2-2g) F^(g)."""

    order: int
    by_genus: dict[int, TSeries] = field(default_factory=dict)

    def __getitem__(self, g: int) -> TSeries:
        return self.by_genus.get(g, TSeries.zero(self.order))

    def genera(self) -> list[int]:
        return sorted(g for g, s in self.by_genus.items() if s.valuation() is not None)

    def collapse_N(self) -> TSeries:
        """The single series ``sum_g N^(2-2g) F^(g)`` with ``N`` as a variable."""
        out = TSeries.zero(self.order)
        for g, s in self.by_genus.items():
            out = out + s * WPolynomial.var(N, 2 - 2 * g)
        return out


def weight_monomial(profile: Mapping[int, int]) -> Monomial:
    return tuple(sorted((n, k) for n, k in profile.items() if k))


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
