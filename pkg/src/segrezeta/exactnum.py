"""Exact univariate arithmetic in a formal variable ``t``.

Scalars are :class:`fractions.Fraction`.  Polynomials are stored as
coefficient tuples (index ``i`` holds the coefficient of ``t**i``) with no
trailing zeros, so structural equality is mathematical equality.  Rational
functions are kept reduced with the constant term of the denominator equal
to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DuplicateAbscissa,
    InconsistentExtraPoint,
    NonUnitConstantTerm,
    ZeroDenominator,
)

Rational = Fraction


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact values")
    return Fraction(x)


def _trim(coeffs: Iterable) -> tuple:
    c = [as_fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class PolyT:
    """Polynomial with rational coefficients, lowest degree first."""

    coeffs: tuple = ()

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def constant(cls, c) -> PolyT:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> PolyT:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> PolyT:
        if isinstance(other, PolyT):
            return other
        return PolyT.constant(other)

    def __add__(self, other) -> PolyT:
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyT(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> PolyT:
        return PolyT(-c for c in self.coeffs)

    def __sub__(self, other) -> PolyT:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> PolyT:
        return self._coerce(other) - self

    def __mul__(self, other) -> PolyT:
        if not isinstance(other, PolyT):
            c = as_fraction(other)
            return PolyT(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return PolyT()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyT(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> PolyT:
        if k < 0:
            raise ValueError("negative power")
        out, base = PolyT.constant(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: PolyT) -> tuple[PolyT, PolyT]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            q = rem[k + dq] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return PolyT(quot), PolyT(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: PolyT) -> PolyT:
        return self.divmod(other)[0]

    def __mod__(self, other: PolyT) -> PolyT:
        return self.divmod(other)[1]

    def monic(self) -> PolyT:
        if not self:
            return self
        return self * (1 / self.leading)

    def shift(self, a) -> PolyT:
        """The polynomial ``p(t + a)``."""
        out = PolyT()
        lin = PolyT((a, 1))
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def __repr__(self) -> str:
        return f"PolyT({format_poly(self)})"


def format_poly(p: PolyT, var: str = "t") -> str:
    if not p:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def poly_gcd(a: PolyT, b: PolyT) -> PolyT:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) is 0."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_arith(a: PolyT, b: PolyT, op: str) -> PolyT:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class RationalFunctionT:
    """Reduced quotient ``num/den`` with ``den(0) == 1``.

    Build through :func:`rf_normalize` (or the arithmetic operators); the
    constructor trusts its arguments.
    """

    num: PolyT
    den: PolyT

    @classmethod
    def from_poly(cls, p: PolyT) -> RationalFunctionT:
        return cls(p, PolyT.constant(1))

    @classmethod
    def constant(cls, c) -> RationalFunctionT:
        return cls(PolyT.constant(c), PolyT.constant(1))

    def is_zero(self) -> bool:
        return not self.num

    def __call__(self, x) -> Fraction:
        return self.num(x) / self.den(x)

    def _coerce(self, other) -> RationalFunctionT:
        if isinstance(other, RationalFunctionT):
            return other
        if isinstance(other, PolyT):
            return RationalFunctionT.from_poly(other)
        return RationalFunctionT.constant(other)

    def __add__(self, other) -> RationalFunctionT:
        other = self._coerce(other)
        if self.den == other.den:
            return rf_normalize(self.num + other.num, self.den)
        return rf_normalize(self.num * other.den + other.num * self.den,
                            self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunctionT:
        return RationalFunctionT(-self.num, self.den)

    def __sub__(self, other) -> RationalFunctionT:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> RationalFunctionT:
        return self._coerce(other) - self

    def __mul__(self, other) -> RationalFunctionT:
        other = self._coerce(other)
        return rf_normalize(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"RationalFunctionT(({format_poly(self.num)}) / ({format_poly(self.den)}))"


def rf_normalize(num: PolyT, den: PolyT) -> RationalFunctionT:
    if not den:
        raise ZeroDenominator("denominator is the zero polynomial")
    if den[0] == 0:
        raise NonUnitConstantTerm(f"denominator {format_poly(den)} vanishes at t=0")
    if not num:
        return RationalFunctionT(PolyT(), PolyT.constant(1))
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num // g, den // g
    scale = 1 / den[0]
    return RationalFunctionT(num * scale, den * scale)


@dataclass(frozen=True)
class SeriesTrunc:
    order: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("series length must be order + 1")


def rf_to_series(f: RationalFunctionT, order: int) -> SeriesTrunc:
    if f.den[0] != 1:
        raise NonUnitConstantTerm("series expansion needs den(0) = 1")
    out: list[Fraction] = []
    for i in range(order + 1):
        c = f.num[i]
        for j in range(1, min(i, f.den.degree) + 1):
            c -= f.den[j] * out[i - j]
        out.append(c)
    return SeriesTrunc(order, tuple(out))


def interpolate_polynomial(points: Sequence, degree_bound: int) -> PolyT:
    """Fit the polynomial of degree <= ``degree_bound`` through the first
    ``degree_bound + 1`` points; any further points are checked against it."""
    pts = [(as_fraction(x), as_fraction(y)) for x, y in points]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa("interpolation abscissae must be distinct")
    if len(pts) < degree_bound + 1:
        raise ValueError(f"need at least {degree_bound + 1} points, got {len(pts)}")
    fit = pts[: degree_bound + 1]
    # Newton divided differences
    xs = [x for x, _ in fit]
    dd = [y for _, y in fit]
    for level in range(1, len(fit)):
        for i in range(len(fit) - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    p = PolyT()
    for i in range(len(fit) - 1, -1, -1):
        p = p * PolyT((-xs[i], 1)) + dd[i]
    for x, y in pts[degree_bound + 1:]:
        if p(x) != y:
            raise InconsistentExtraPoint(
                f"sample ({x}, {y}) is off the fitted polynomial (value {p(x)})")
    return p
