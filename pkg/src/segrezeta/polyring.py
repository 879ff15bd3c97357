"""Multivariate polynomials over Q and homogeneous ideals.

Graded pieces of ideal powers are produced by enumeration: ``(I^t)_s`` is
spanned by products of ``t`` generators multiplied by monomials that fill
the degree up to ``s``.  No Groebner machinery is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import BudgetExceeded, NotHomogeneous, TooFewVariables, ZeroPolynomial
from .exactnum import as_fraction

DEFAULT_BUDGET = 200_000


class MultiPoly:
    """Immutable polynomial, a map from exponent tuples to nonzero rationals.

    Terms are kept sorted lexicographically by exponent.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | Iterable = (), nvars: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple, Fraction] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            acc[exp] = acc.get(exp, Fraction(0)) + as_fraction(c)
        clean = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        lengths = {len(e) for e, _ in clean}
        if nvars is None:
            if not lengths:
                raise ValueError("cannot infer the number of variables of the zero polynomial")
            nvars = lengths.pop()
        if lengths - {nvars}:
            raise ValueError("exponent vectors must all have length nvars")
        if any(x < 0 for e, _ in clean for x in e):
            raise ValueError("negative exponent")
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> MultiPoly:
        exp = tuple(exp)
        return cls({exp: coeff}, nvars=len(exp))

    @classmethod
    def variable(cls, i: int, nvars: int) -> MultiPoly:
        return cls.monomial(tuple(int(j == i) for j in range(nvars)))

    @classmethod
    def constant(cls, c, nvars: int) -> MultiPoly:
        return cls({(0,) * nvars: c}, nvars=nvars)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[tuple, Fraction]]:
        return iter(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.terms))
        return self._hash

    def as_dict(self) -> dict[tuple, Fraction]:
        return dict(self.terms)

    @property
    def exponents(self) -> list[tuple]:
        return [e for e, _ in self.terms]

    def degrees(self) -> set[int]:
        return {sum(e) for e, _ in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        """Total degree (-1 for zero)."""
        return max(self.degrees(), default=-1)

    def __add__(self, other: MultiPoly) -> MultiPoly:
        return MultiPoly(self.terms + other.terms, nvars=self.nvars)

    def __neg__(self) -> MultiPoly:
        return MultiPoly(((e, -c) for e, c in self.terms), nvars=self.nvars)

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            c = as_fraction(other)
            return MultiPoly(((e, c * a) for e, a in self.terms), nvars=self.nvars)
        acc: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(acc, nvars=self.nvars)

    __rmul__ = __mul__

    def shift_monomial(self, exp: Sequence[int]) -> MultiPoly:
        """Multiply by the monomial with exponent ``exp``."""
        return MultiPoly(
            ((tuple(a + b for a, b in zip(e, exp)), c) for e, c in self.terms),
            nvars=self.nvars,
        )

    def pad(self, extra: int) -> MultiPoly:
        return MultiPoly(((e + (0,) * extra, c) for e, c in self.terms),
                         nvars=self.nvars + extra)

    def __repr__(self) -> str:
        return f"MultiPoly({format_multipoly(self)})"


def format_multipoly(p: MultiPoly, names: Sequence[str] | None = None) -> str:
    if not p:
        return "0"
    names = names or [f"x{i}" for i in range(p.nvars)]
    out = []
    for exp, c in sorted(p.terms, reverse=True):
        factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, exp) if k]
        mono = "*".join(factors)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        sign = "-" if c < 0 else "+"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def monomials_of_degree(nvars: int, s: int) -> Iterator[tuple]:
    """All exponent vectors of total degree ``s``, in lexicographic order."""
    if nvars == 1:
        yield (s,)
        return
    for first in range(s, -1, -1):
        for rest in monomials_of_degree(nvars - 1, s - first):
            yield (first,) + rest


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class HomogeneousIdeal:
    num_vars: int
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if self.num_vars < 2:
            raise TooFewVariables("need at least two variables")
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        for g in gens:
            if not g:
                raise ZeroPolynomial("generators must be nonzero")
            if g.nvars != self.num_vars:
                raise ValueError("generator lives in a ring of the wrong size")
            if not g.is_homogeneous():
                raise NotHomogeneous(f"generator {format_multipoly(g)} is not homogeneous")

    @classmethod
    def from_monomials(cls, exponents: Iterable[Sequence[int]]) -> HomogeneousIdeal:
        gens = tuple(MultiPoly.monomial(e) for e in exponents)
        return cls(gens[0].nvars, gens)

    @property
    def n(self) -> int:
        """Dimension of the ambient projective space."""
        return self.num_vars - 1

    @property
    def degrees(self) -> list[int]:
        return [g.degree for g in self.generators]


@dataclass(frozen=True)
class GradedPieceBasis:
    power: int
    degree: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)


def is_monomial_ideal(ideal: HomogeneousIdeal) -> bool:
    return all(len(g) == 1 for g in ideal.generators)


def minimal_monomial_generators(ideal: HomogeneousIdeal) -> list[tuple]:
    exps = sorted({g.exponents[0] for g in ideal.generators}, key=lambda e: (sum(e), e))
    keep: list[tuple] = []
    for e in exps:
        if not any(divides(k, e) for k in keep):
            keep.append(e)
    return keep


def spanning_set(ideal: HomogeneousIdeal, t: int, s: int,
                 budget: int = DEFAULT_BUDGET) -> list[MultiPoly]:
    """Monomial multiples of ``t``-fold generator products, all of degree ``s``."""
    if t < 1 or s < 0:
        raise ValueError("need t >= 1 and s >= 0")
    gens = ideal.generators
    degs = ideal.degrees
    work = 0
    seen: set[MultiPoly] = set()
    out: list[MultiPoly] = []
    fillers: dict[int, list[tuple]] = {}
    for combo in combinations_with_replacement(range(len(gens)), t):
        deg = sum(degs[i] for i in combo)
        if deg > s:
            continue
        prod = reduce(lambda a, b: a * b, (gens[i] for i in combo))
        fill = fillers.get(s - deg)
        if fill is None:
            fill = fillers[s - deg] = list(monomials_of_degree(ideal.num_vars, s - deg))
        work += len(prod) * len(fill)
        if work > budget:
            raise BudgetExceeded(
                f"spanning set for (I^{t})_{s} exceeds {budget} monomial operations")
        for m in fill:
            p = prod.shift_monomial(m)
            if p not in seen:
                seen.add(p)
                out.append(p)
    return out


def _default_config(num_vars: int):
    from .valuation import ValuationConfig
    return ValuationConfig(num_vars)


def echelon_by_value(polys: Iterable[MultiPoly], cfg) -> dict[tuple, MultiPoly]:
    """Eliminate until the valuation values (lex-least terms) are distinct.

    Returns a map from the order key of each basis element's least term to
    the element.
    """
    key = cfg.order_key
    rows: dict[tuple, tuple[dict, tuple]] = {}
    for p in polys:
        cur = p.as_dict()
        while cur:
            lead_exp = min(cur, key=key)
            lead_key = key(lead_exp)
            hit = rows.get(lead_key)
            if hit is None:
                c = cur[lead_exp]
                rows[lead_key] = ({e: v / c for e, v in cur.items()}, lead_exp)
                break
            row, _ = hit
            c = cur[lead_exp]
            for e, v in row.items():
                w = cur.get(e, Fraction(0)) - c * v
                if w:
                    cur[e] = w
                else:
                    cur.pop(e, None)
    nvars = cfg.num_vars
    return {k: MultiPoly(row, nvars=nvars) for k, (row, _) in rows.items()}


def graded_piece_basis(ideal: HomogeneousIdeal, t: int, s: int, cfg=None,
                       budget: int = DEFAULT_BUDGET) -> GradedPieceBasis:
    cfg = cfg or _default_config(ideal.num_vars)
    rows = echelon_by_value(spanning_set(ideal, t, s, budget), cfg)
    return GradedPieceBasis(t, s, tuple(rows[k] for k in sorted(rows)))


def _in_span(p: MultiPoly, rows: dict[tuple, dict]) -> bool:
    cur = p.as_dict()
    while cur:
        lead = max(cur)
        row = rows.get(lead)
        if row is None:
            return False
        c = cur[lead]
        for e, v in row.items():
            w = cur.get(e, Fraction(0)) - c * v
            if w:
                cur[e] = w
            else:
                cur.pop(e, None)
    return True


def _add_row(p: MultiPoly, rows: dict[tuple, dict]) -> None:
    cur = p.as_dict()
    while cur:
        lead = max(cur)
        row = rows.get(lead)
        if row is None:
            c = cur[lead]
            rows[lead] = {e: v / c for e, v in cur.items()}
            return
        c = cur[lead]
        for e, v in row.items():
            w = cur.get(e, Fraction(0)) - c * v
            if w:
                cur[e] = w
            else:
                cur.pop(e, None)


def generating_degree(ideal: HomogeneousIdeal) -> int:
    """Generating degree; exact for monomial ideals, an upper bound otherwise."""
    if is_monomial_ideal(ideal):
        return max(sum(e) for e in minimal_monomial_generators(ideal))
    order = sorted(range(len(ideal.generators)), key=lambda i: ideal.degrees[i])
    kept: list[MultiPoly] = []
    for i in order:
        g = ideal.generators[i]
        e = g.degree
        rows: dict[tuple, dict] = {}
        for h in kept:
            for m in monomials_of_degree(ideal.num_vars, e - h.degree):
                _add_row(h.shift_monomial(m), rows)
        if not _in_span(g, rows):
            kept.append(g)
    return max(g.degree for g in kept)


def extend_ideal(ideal: HomogeneousIdeal, extra_vars: int) -> HomogeneousIdeal:
    if extra_vars < 0:
        raise ValueError("extra_vars must be nonnegative")
    if extra_vars == 0:
        return ideal
    return HomogeneousIdeal(ideal.num_vars + extra_vars,
                            tuple(g.pad(extra_vars) for g in ideal.generators))
