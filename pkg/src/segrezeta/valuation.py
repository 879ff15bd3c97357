"""Lexicographic valuation on dehomogenized polynomials and the value semigroup.

A polynomial in ``x_0..x_n`` is dehomogenized by dropping the exponent of
one variable; its value is the least surviving exponent vector in a
lexicographic order.  Coordinates of the value follow ``variable_order``;
the order in which those coordinates are compared is ``priority`` (identity
unless the configuration came from :func:`extend_valuation`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DegreeTooSmall, ZeroPolynomial
from .polyring import (
    DEFAULT_BUDGET,
    GradedPieceBasis,
    HomogeneousIdeal,
    MultiPoly,
    generating_degree,
    graded_piece_basis,
)


@dataclass(frozen=True)
class ValuationConfig:
    num_vars: int
    dehomogenize_index: int = 0
    variable_order: tuple = None
    priority: tuple = None

    def __post_init__(self):
        if not 0 <= self.dehomogenize_index < self.num_vars:
            raise ValueError("dehomogenize_index out of range")
        rest = [i for i in range(self.num_vars) if i != self.dehomogenize_index]
        order = tuple(rest) if self.variable_order is None else tuple(self.variable_order)
        if sorted(order) != rest:
            raise ValueError("variable_order must permute the non-dehomogenized variables")
        prio = tuple(range(len(rest))) if self.priority is None else tuple(self.priority)
        if sorted(prio) != list(range(len(rest))):
            raise ValueError("priority must be a permutation of value coordinates")
        object.__setattr__(self, "variable_order", order)
        object.__setattr__(self, "priority", prio)

    @property
    def n(self) -> int:
        return self.num_vars - 1

    def dehomogenize(self, exp: Sequence[int]) -> tuple:
        return tuple(exp[i] for i in self.variable_order)

    def key_of_value(self, value: Sequence[int]) -> tuple:
        return tuple(value[j] for j in self.priority)

    def order_key(self, exp: Sequence[int]) -> tuple:
        """Sort key of a monomial exponent; the least key is the value."""
        return self.key_of_value(self.dehomogenize(exp))

    def value_of_key(self, key: Sequence[int]) -> tuple:
        value = [0] * len(key)
        for pos, j in enumerate(self.priority):
            value[j] = key[pos]
        return tuple(value)


def value_of(p: MultiPoly, cfg: ValuationConfig) -> tuple:
    if not p:
        raise ZeroPolynomial("the valuation is undefined on 0")
    return cfg.dehomogenize(min(p.exponents, key=cfg.order_key))


def value_image(space: GradedPieceBasis | Iterable[MultiPoly], cfg: ValuationConfig) -> list[tuple]:
    basis = space.basis if isinstance(space, GradedPieceBasis) else list(space)
    return sorted({value_of(b, cfg) for b in basis}, key=cfg.key_of_value)


def extend_valuation(cfg: ValuationConfig) -> ValuationConfig:
    """Valuation on one more variable: ``x_new^e * g`` maps to ``(v(g|x_new=0), e)``.

    The new exponent is appended as the last coordinate but compared first,
    which makes the least monomial carry the least power of the new variable.
    """
    new = cfg.num_vars
    return ValuationConfig(
        num_vars=cfg.num_vars + 1,
        dehomogenize_index=cfg.dehomogenize_index,
        variable_order=cfg.variable_order + (new,),
        priority=(len(cfg.variable_order),) + cfg.priority,
    )


def tau(value: Sequence[int], s) -> tuple:
    """Lift a value at degree ``s`` to R^{n+1} by prepending ``s - sum(value)``."""
    return (s - sum(value),) + tuple(value)


@dataclass(frozen=True)
class SemigroupSample:
    t_level: int
    s_range: tuple
    points: frozenset = field(default_factory=frozenset)

    def tau_points(self) -> list[tuple]:
        return sorted(tau(a, s) for a, s in self.points)


def sample_semigroup(ideal: HomogeneousIdeal, cfg: ValuationConfig, t_max: int, s_max: int,
                     budget: int = DEFAULT_BUDGET) -> list[SemigroupSample]:
    """Exact value sets ``v((I^t)_s)`` for ``1 <= t <= t_max`` and ``0 <= s <= s_max``."""
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    d = generating_degree(ideal)
    if s_max < t_max * d:
        raise DegreeTooSmall(f"s_max={s_max} is below t_max * generating degree = {t_max * d}")
    low = min(ideal.degrees)
    out = []
    for t in range(1, t_max + 1):
        pts = set()
        for s in range(t * low, s_max + 1):
            basis = graded_piece_basis(ideal, t, s, cfg, budget)
            pts.update((a, s) for a in value_image(basis, cfg))
        out.append(SemigroupSample(t, (0, s_max), frozenset(pts)))
    return out
