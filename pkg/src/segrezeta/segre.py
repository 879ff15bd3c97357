"""Segre degrees and Segre zeta functions from Newton-Okounkov bodies.

Two independent routes lead to the Segre degrees ``sigma_0..sigma_n`` of a
homogeneous ideal:

* the density integral ``(n+1) * int Vol(slice_s) t^(n+1) / (1+st)^(n+2) ds``
  over the body, evaluated in closed form as a rational function of ``t``
  (it equals ``1 - zeta(t)``);
* for monomial ideals, exact intersection indices of ``I_s`` at ``n+2``
  consecutive degrees, fitted to ``sum_j binom(n,j) sigma_j s^(n-j)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, lcm, prod
from typing import NamedTuple, Sequence

from .errors import (
    DegreeTooSmall,
    IndexOutOfRange,
    NonIntegerDegree,
    NotMonomial,
    ResidualSpuriousPole,
)
from .exactnum import (
    PolyT,
    RationalFunctionT,
    as_fraction,
    interpolate_polynomial,
    rf_normalize,
    rf_to_series,
)
from .polyhedra import (
    PiecewisePolynomial,
    SampledBody,
    VPolyhedron,
    body_from_samples,
    fiber_volume_function,
    newton_polyhedron,
    polytope_normalized_volume,
)
from .polyring import (
    HomogeneousIdeal,
    divides,
    extend_ideal,
    generating_degree,
    is_monomial_ideal,
    minimal_monomial_generators,
    monomials_of_degree,
)
from .valuation import ValuationConfig, extend_valuation, sample_semigroup

log = logging.getLogger(__name__)


class LaurentMonomial(NamedTuple):
    """``coeff * t**power``."""

    coeff: Fraction
    power: int


def beta_integral(n: int, i: int) -> LaurentMonomial:
    """Closed form of ``(n+1) * int_0^oo s^i / (1+st)^(n+2) ds``."""
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"need 0 <= i <= n, got i={i}, n={n}")
    return LaurentMonomial(Fraction(1, comb(n, i)), -(i + 1))


def _inverse_power_sum(coeffs: dict[int, PolyT], x: Fraction) -> RationalFunctionT:
    """``sum_m coeffs[m] / (1 + x t)^m`` as a single reduced fraction."""
    top = max(coeffs)
    lin = PolyT((1, x))
    num = PolyT()
    for m, c in coeffs.items():
        num = num + c * lin ** (top - m)
    return rf_normalize(num, lin ** top)


def integrate_piece(p: PolyT, lo, hi, n: int) -> RationalFunctionT:
    """``(n+1) * int_lo^hi p(s) t^(n+1) / (1+st)^(n+2) ds``; ``hi=None`` means infinity.

    With ``u = 1 + st`` each monomial ``s^k`` becomes ``t^(n-k)`` times a
    combination of ``u^(j-n-2)``, ``j <= k <= n``, whose antiderivatives are
    negative powers of ``u``; no logarithms occur.
    """
    if not p:
        return RationalFunctionT.constant(0)
    if p.degree > n:
        raise ValueError(f"piece of degree {p.degree} exceeds n={n}")
    lo = as_fraction(lo)
    # per endpoint: power m of 1/(1+xt) -> polynomial coefficient in t
    at_hi: dict[int, PolyT] = {}
    at_lo: dict[int, PolyT] = {}
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        tk = PolyT.monomial(n - k, (n + 1) * c)
        for j in range(k + 1):
            m = n + 1 - j
            w = tk * Fraction(comb(k, j) * (-1) ** (k - j), j - n - 1)
            at_lo[m] = at_lo.get(m, PolyT()) - w
            if hi is not None:
                at_hi[m] = at_hi.get(m, PolyT()) + w
    total = _inverse_power_sum(at_lo, lo)
    if hi is not None:
        total = total + _inverse_power_sum(at_hi, as_fraction(hi))
    return total


def rational_roots(p: PolyT) -> list[Fraction]:
    """Distinct rational roots, by the rational root test."""
    if p.degree < 1:
        return []
    den = 1
    for c in p.coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    low = next(i for i, c in enumerate(ints) if c)
    roots = {Fraction(0)} if low else set()
    ints = ints[low:]
    a0, an = abs(ints[0]), abs(ints[-1])
    for num in _divisors(a0):
        for dd in _divisors(an):
            for r in (Fraction(num, dd), Fraction(-num, dd)):
                if p(r) == 0:
                    roots.add(r)
    return sorted(roots)


def _divisors(m: int) -> list[int]:
    out = []
    i = 1
    while i * i <= m:
        if m % i == 0:
            out += [i, m // i]
        i += 1
    return sorted(set(out))


def split_denominator(den: PolyT, degrees: Sequence[int] | None = None) -> tuple[list[int], PolyT]:
    """Peel factors ``1 + d t`` off ``den``.

    Candidates are ``degrees`` when given, otherwise every positive integer
    ``d`` with ``-1/d`` a rational root.  Returns the peeled ``d`` (with
    multiplicity, sorted) and the unfactored remainder.
    """
    if degrees is None:
        cands = sorted({int(-1 / r) for r in rational_roots(den)
                        if r < 0 and (1 / r).denominator == 1})
    else:
        cands = sorted(set(degrees))
    found = []
    rest = den
    for d in cands:
        lin = PolyT((1, d))
        while rest.degree >= 1:
            q, r = rest.divmod(lin)
            if r:
                break
            found.append(d)
            rest = q
    return sorted(found), rest


def density_integral(vol: PiecewisePolynomial, n: int, degrees: Sequence[int] | None = None,
                     exact: bool = True) -> RationalFunctionT:
    """Sum of :func:`integrate_piece` over the fiber-volume function.

    Any pole left after reduction that is not at ``-1/d`` (``d`` among
    ``degrees``, or any positive integer when ``degrees`` is None) raises
    :class:`ResidualSpuriousPole` when ``exact``, and is logged otherwise.
    """
    total = RationalFunctionT.constant(0)
    for lo, hi, poly in vol.intervals():
        total = total + integrate_piece(poly, lo, hi, n)
    _, rest = split_denominator(total.den, degrees)
    if rest.degree > 0:
        msg = f"spurious pole factor {rest!r} survives in the reduced integral"
        if exact:
            raise ResidualSpuriousPole(msg)
        log.warning(msg)
    return total


@dataclass(frozen=True)
class SegreDegrees:
    n: int
    sigma: tuple

    def __post_init__(self):
        if len(self.sigma) != self.n + 1:
            raise ValueError("need sigma_0..sigma_n")


def _to_degrees(values: Sequence[Fraction], n: int) -> SegreDegrees:
    bad = [str(v) for v in values if Fraction(v).denominator != 1]
    if bad:
        raise NonIntegerDegree(f"non-integral Segre degrees: {', '.join(bad)}")
    if values[0] != 1:
        raise NonIntegerDegree(f"sigma_0 = {values[0]}, expected 1")
    return SegreDegrees(n, tuple(int(v) for v in values))


def sigma_from_integral(value: RationalFunctionT, n: int) -> SegreDegrees:
    return _to_degrees(rf_to_series(value, n).coeffs, n)


@dataclass(frozen=True)
class ZetaReport:
    zeta: RationalFunctionT
    degree_sequence_used: tuple
    numerator_A: PolyT
    pole_check: bool
    nonneg_check: bool


def _sub_multisets_containing(pool: Sequence[int], core: Sequence[int]):
    """Sub-multisets of ``pool`` containing ``core``, smallest first."""
    rest = list(pool)
    for d in core:
        rest.remove(d)
    seen = set()
    for size in range(len(rest) + 1):
        for extra in combinations(sorted(rest), size):
            if extra not in seen:
                seen.add(extra)
                yield sorted(list(core) + list(extra))


def zeta_report(value: RationalFunctionT, generator_degrees: Sequence[int]) -> ZetaReport:
    """Check ``zeta = 1 - value`` against ``(A + d_0..d_r t^(r+1)) / prod(1 + d_i t)``."""
    zeta = 1 - value
    pool = sorted(generator_degrees)
    found, rest = split_denominator(zeta.den, pool)
    fits = rest.degree <= 0
    if fits:
        remaining = list(pool)
        for d in found:
            if d in remaining:
                remaining.remove(d)
            else:
                fits = False
    if not fits:
        return ZetaReport(zeta, tuple(found), PolyT(), False, False)

    def numerator_for(ds):
        full = PolyT.constant(1)
        for d in ds:
            full = full * PolyT((1, d))
        q, r = (zeta.num * full).divmod(zeta.den)
        assert not r
        return q - PolyT.monomial(len(ds), prod(ds))

    first = None
    for ds in _sub_multisets_containing(pool, found):
        a = numerator_for(ds)
        if first is None:
            first = (ds, a)
        r = len(ds) - 1
        if a.degree <= r and all(c >= 0 and c.denominator == 1 for c in a.coeffs):
            return ZetaReport(zeta, tuple(ds), a, True, True)
    ds, a = first
    return ZetaReport(zeta, tuple(ds), a, True, False)


@dataclass(frozen=True)
class ShadowClass:
    coefficients: tuple

    def __init__(self, coefficients):
        object.__setattr__(self, "coefficients", tuple(as_fraction(c) for c in coefficients))


def t_transform(g: ShadowClass, a) -> ShadowClass:
    a = as_fraction(a)
    gs = g.coefficients
    return ShadowClass(sum(comb(i, j) * a ** (i - j) * gs[j] for j in range(i + 1))
                       for i in range(len(gs)))


def multidegrees(sig: SegreDegrees, s) -> ShadowClass:
    return t_transform(ShadowClass(sig.sigma), s)


def _require_monomial(ideal):
    if not is_monomial_ideal(ideal):
        raise NotMonomial("this computation needs a monomial ideal")


def _monomials_in_power(gens: Sequence[tuple], power: int, degree: int, nvars: int) -> list[tuple]:
    sums = {tuple(map(sum, zip(*combo)))
            for combo in combinations_with_replacement(gens, power)}
    return [m for m in monomials_of_degree(nvars, degree)
            if any(divides(g, m) for g in sums)]


def _index_of_power(ideal: HomogeneousIdeal, power: int, degree: int) -> Fraction:
    gens = minimal_monomial_generators(ideal)
    mons = _monomials_in_power(gens, power, degree, ideal.num_vars)
    return polytope_normalized_volume([m[1:] for m in mons])


def intersection_index_monomial(ideal: HomogeneousIdeal, s: int) -> Fraction:
    """Normalized volume of the hull of dehomogenized exponents of ``I_s``."""
    _require_monomial(ideal)
    d = generating_degree(ideal)
    if s < d:
        raise DegreeTooSmall(f"s={s} is below the generating degree {d}")
    return _index_of_power(ideal, 1, s)


def rational_index(ideal: HomogeneousIdeal, q, denominator: int | None = None) -> Fraction:
    """Index of ``(I^a)_b`` divided by ``a^n`` for ``q = b/a``.

    ``denominator`` selects the representation ``a`` (default: lowest terms).
    """
    _require_monomial(ideal)
    q = as_fraction(q)
    a = denominator or q.denominator
    b = q * a
    if a < 1 or b.denominator != 1:
        raise ValueError(f"{q} is not representable with denominator {a}")
    d = generating_degree(ideal)
    if q < d:
        raise DegreeTooSmall(f"q={q} is below the generating degree {d}")
    return _index_of_power(ideal, a, int(b)) / Fraction(a) ** ideal.n


def sigma_by_interpolation(ideal: HomogeneousIdeal) -> SegreDegrees:
    _require_monomial(ideal)
    n = ideal.n
    d = generating_degree(ideal)
    pts = [(s, intersection_index_monomial(ideal, s)) for s in range(d, d + n + 2)]
    poly = interpolate_polynomial(pts, n)
    return _to_degrees([poly[n - j] / comb(n, j) for j in range(n + 1)], n)


@dataclass(frozen=True)
class ZetaComputation:
    """Everything the full pipeline produces for one ideal."""

    ideal: HomogeneousIdeal
    sampled: SampledBody
    fiber_volume: PiecewisePolynomial
    integral: RationalFunctionT
    sigma: SegreDegrees | None
    report: ZetaReport
    oracle_sigma: SegreDegrees | None = None
    warnings: tuple = field(default=())

    @property
    def crosscheck(self) -> str:
        if self.oracle_sigma is None:
            return "skipped"
        return "pass" if self.oracle_sigma == self.sigma else "fail"

    @property
    def exact(self) -> bool:
        return self.sampled.exact

    @property
    def body(self) -> VPolyhedron:
        return self.sampled.polyhedron

    @property
    def stabilized(self) -> bool | None:
        return self.sampled.stabilized

    @property
    def zeta(self) -> RationalFunctionT:
        return self.report.zeta


def compute_body(ideal: HomogeneousIdeal, cfg: ValuationConfig | None = None, t_max: int = 1,
                 s_max: int | None = None) -> SampledBody:
    """Newton polyhedron for monomial ideals, sampled inner approximation otherwise."""
    if is_monomial_ideal(ideal):
        return SampledBody(newton_polyhedron(ideal), t_max, True, exact=True)
    cfg = cfg or ValuationConfig(ideal.num_vars)
    if s_max is None:
        s_max = default_s_max(ideal, t_max)
    return body_from_samples(sample_semigroup(ideal, cfg, t_max, s_max))


def default_s_max(ideal: HomogeneousIdeal, t_max: int = 1) -> int:
    d = generating_degree(ideal)
    return max(d + ideal.n + 2, t_max * d)


def segre_zeta(ideal: HomogeneousIdeal, cfg: ValuationConfig | None = None, t_max: int = 1,
               s_max: int | None = None, crosscheck: bool = True) -> ZetaComputation:
    """Run the integral pipeline (and, for monomial ideals, the oracle)."""
    sampled = compute_body(ideal, cfg, t_max, s_max)
    exact = sampled.exact
    n = ideal.n
    warnings = []
    vol = fiber_volume_function(sampled.polyhedron)
    value = density_integral(vol, n, ideal.degrees, exact=exact)
    if not exact:
        _, rest = split_denominator(value.den, ideal.degrees)
        if rest.degree > 0:
            warnings.append("spurious pole in approximate integral")
    try:
        sigma = sigma_from_integral(value, n)
    except NonIntegerDegree as err:
        if exact:
            raise
        warnings.append(str(err))
        sigma = None
    report = zeta_report(value, ideal.degrees)
    oracle = sigma_by_interpolation(ideal) if (exact and crosscheck) else None
    return ZetaComputation(ideal, sampled, vol, value, sigma, report, oracle, tuple(warnings))


def integral_for(ideal: HomogeneousIdeal, cfg: ValuationConfig | None = None, t_max: int = 1,
                 s_max: int | None = None) -> RationalFunctionT:
    sampled = compute_body(ideal, cfg, t_max, s_max)
    vol = fiber_volume_function(sampled.polyhedron)
    return density_integral(vol, ideal.n, ideal.degrees, exact=sampled.exact)


def zeta_extension_check(ideal: HomogeneousIdeal, cfg: ValuationConfig | None = None,
                         extra: int = 1, t_max: int = 1, s_max: int | None = None) -> bool:
    """Compare the integral for ``I`` with the one for ``I`` in ``extra`` more variables.

    Monomial ideals must give identical rational functions; sampled bodies
    are compared through their series up to order ``n``.
    """
    if extra == 0:
        return True
    cfg = cfg or ValuationConfig(ideal.num_vars)
    big_cfg = cfg
    for _ in range(extra):
        big_cfg = extend_valuation(big_cfg)
    big = extend_ideal(ideal, extra)
    small_val = integral_for(ideal, cfg, t_max, s_max)
    big_val = integral_for(big, big_cfg, t_max, s_max)
    if is_monomial_ideal(ideal):
        return small_val == big_val
    n = ideal.n
    return rf_to_series(small_val, n) == rf_to_series(big_val, n)
