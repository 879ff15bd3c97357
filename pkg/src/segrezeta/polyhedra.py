"""Exact rational polyhedra: hulls, slices, volumes and fiber-volume functions.

Conversion between vertex/ray and inequality descriptions uses the double
description method on homogenized integer vectors.  All bodies built here
have the nonnegative orthant as recession cone, so they are pointed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ConsistencyError, DimensionTooLarge, NotMonomial
from .exactnum import PolyT, as_fraction, interpolate_polynomial
from .polyring import HomogeneousIdeal, is_monomial_ideal, minimal_monomial_generators

# Ambient dimension limit.  Six leaves room for a 4-variable ideal extended
# by two variables.
MAX_DIM = 6


def _primitive(v: Sequence[int]) -> tuple:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def _integral(v: Sequence) -> tuple:
    """Positive multiple of a rational vector with coprime integer entries."""
    den = 1
    for x in v:
        den = math.lcm(den, Fraction(x).denominator)
    return _primitive([int(Fraction(x) * den) for x in v])


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def double_description(rows: Sequence[Sequence[int]], dim: int) -> tuple[list, list]:
    """Lines and extreme rays of the cone ``{y : r.y >= 0 for r in rows}``.

    Rows are integer vectors.  Returned vectors are primitive integer tuples;
    rays are extreme modulo the lineality space spanned by the lines.
    """
    lines = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[tuple] = []
    zeros: list[int] = []  # bitmask of processed rows each ray is tight on
    processed = 0
    for k, a in enumerate(rows):
        if not any(a):
            continue
        bit = 1 << k
        pivot = None
        for idx, l in enumerate(lines):
            if _dot(a, l):
                pivot = idx
                break
        if pivot is not None:
            l = lines.pop(pivot)
            al = _dot(a, l)
            if al < 0:
                l, al = tuple(-x for x in l), -al
            lines = [_primitive([al * x - _dot(a, m) * y for x, y in zip(m, l)]) for m in lines]
            new_rays = []
            for r in rays:
                ar = _dot(a, r)
                new_rays.append(_primitive([al * x - ar * y for x, y in zip(r, l)]) if ar else r)
            rays = new_rays + [l]
            zeros = [z | bit for z in zeros] + [processed]
            processed |= bit
            continue
        vals = [_dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_zeros = [zeros[i] for i in pos] + [zeros[i] | bit for i in zer]
        need = dim - len(lines) - 2
        for i in pos:
            for j in neg:
                common = zeros[i] & zeros[j]
                if bin(common).count("1") < need:
                    continue
                if any(m != i and m != j and (zeros[m] & common) == common
                       for m in range(len(rays))):
                    continue
                vi, vj = vals[i], -vals[j]
                r = _primitive([vi * y + vj * x for x, y in zip(rays[i], rays[j])])
                new_rays.append(r)
                new_zeros.append(common | bit)
        rays, zeros = new_rays, new_zeros
        processed |= bit
    return lines, rays


@dataclass(frozen=True)
class HPolyhedron:
    """``{x : normal . x >= offset}`` for each halfspace, plus equations."""

    ambient_dim: int
    halfspaces: tuple
    equations: tuple = ()

    def contains(self, x: Sequence, tol_ray: bool = False) -> bool:
        if tol_ray:
            return (all(_dot(a, x) >= 0 for a, _ in self.halfspaces)
                    and all(_dot(a, x) == 0 for a, _ in self.equations))
        return (all(_dot(a, x) >= b for a, b in self.halfspaces)
                and all(_dot(a, x) == b for a, b in self.equations))


def _v_to_h(points: Sequence[Sequence], rays: Sequence[Sequence], dim: int) -> HPolyhedron:
    gens = [_integral((1,) + tuple(p)) for p in points]
    gens += [_integral((0,) + tuple(r)) for r in rays]
    lines, dual_rays = double_description(gens, dim + 1)
    halfspaces = []
    for y in dual_rays:
        normal = tuple(Fraction(x) for x in y[1:])
        if not any(normal):
            continue  # the trivial inequality 1 >= 0
        halfspaces.append((normal, Fraction(-y[0])))
    equations = [(tuple(Fraction(x) for x in y[1:]), Fraction(-y[0])) for y in lines]
    return HPolyhedron(dim, tuple(sorted(halfspaces)), tuple(sorted(equations)))


def _h_to_v(h: HPolyhedron) -> tuple[list, list]:
    rows = [_integral((-b,) + tuple(a)) for a, b in h.halfspaces]
    for a, b in h.equations:
        e = _integral((-b,) + tuple(a))
        rows += [e, tuple(-x for x in e)]
    rows.append(tuple(int(i == 0) for i in range(h.ambient_dim + 1)))
    lines, rays = double_description(rows, h.ambient_dim + 1)
    if lines:
        raise ValueError("polyhedron contains a line")
    verts, recs = [], []
    for r in rays:
        if r[0] > 0:
            verts.append(tuple(Fraction(x, r[0]) for x in r[1:]))
        else:
            recs.append(tuple(Fraction(x) for x in r[1:]))
    return sorted(verts), sorted(recs)


def orthant_rays(dim: int) -> list[tuple]:
    return [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]


@dataclass(frozen=True)
class VPolyhedron:
    ambient_dim: int
    vertices: tuple
    rays: tuple

    @cached_property
    def hrep(self) -> HPolyhedron:
        return _v_to_h(self.vertices, self.rays, self.ambient_dim)

    def contains_point(self, x: Sequence) -> bool:
        return self.hrep.contains([as_fraction(c) for c in x])

    def contains(self, other: VPolyhedron) -> bool:
        h = self.hrep
        return (all(h.contains(v) for v in other.vertices)
                and all(h.contains(r, tol_ray=True) for r in other.rays))

    def same_set(self, other: VPolyhedron) -> bool:
        return self.contains(other) and other.contains(self)

    @property
    def vertex_levels(self) -> list[Fraction]:
        return sorted({sum(v) for v in self.vertices})


def _prune_dominated(points: list[tuple]) -> list[tuple]:
    pts = sorted(set(points), key=lambda p: (sum(p), p))
    keep: list[tuple] = []
    for p in pts:
        if not any(all(x <= y for x, y in zip(q, p)) for q in keep):
            keep.append(p)
    return keep


def convex_hull(points: Iterable[Sequence], rays: Iterable[Sequence] = (),
                max_dim: int = MAX_DIM) -> VPolyhedron:
    pts = [tuple(as_fraction(x) for x in p) for p in points]
    if not pts:
        raise ValueError("convex_hull needs at least one point")
    dim = len(pts[0])
    if dim > max_dim:
        raise DimensionTooLarge(f"ambient dimension {dim} exceeds {max_dim}")
    rs = [tuple(Fraction(x) for x in _integral(r)) for r in rays]
    rs = sorted(set(r for r in rs if any(r)))
    if set(rs) == set(orthant_rays(dim)):
        pts = _prune_dominated(pts)
    if len(pts) == 1 and not rs:
        return VPolyhedron(dim, (pts[0],), ())
    h = _v_to_h(pts, rs, dim)
    verts, recs = _h_to_v(h)
    recs = sorted(set(tuple(Fraction(x) for x in _integral(r)) for r in recs))
    return VPolyhedron(dim, tuple(verts), tuple(recs))


def newton_polyhedron(ideal: HomogeneousIdeal) -> VPolyhedron:
    if not is_monomial_ideal(ideal):
        raise NotMonomial("the Newton polyhedron is defined for monomial ideals")
    dim = ideal.num_vars
    return convex_hull(minimal_monomial_generators(ideal), orthant_rays(dim))


@dataclass(frozen=True)
class SampledBody:
    polyhedron: VPolyhedron
    t_max: int
    stabilized: bool | None
    exact: bool = False


def body_from_samples(samples) -> SampledBody:
    """Hull of the rescaled lifted value sets plus the orthant.

    ``stabilized`` compares the hulls at the top two power levels; it is
    ``None`` when only one level was sampled.
    """
    samples = sorted(samples, key=lambda smp: smp.t_level)
    if not samples or not any(smp.points for smp in samples):
        raise ValueError("no sample points")

    def hull_upto(t_top):
        pts = []
        for smp in samples:
            if smp.t_level <= t_top:
                pts += [tuple(Fraction(x, smp.t_level) for x in p) for p in smp.tau_points()]
        dim = len(pts[0])
        return convex_hull(pts, orthant_rays(dim))

    t_max = samples[-1].t_level
    body = hull_upto(t_max)
    stabilized = None
    if len(samples) > 1 and any(smp.points for smp in samples[:-1]):
        stabilized = hull_upto(samples[-2].t_level).same_set(body)
    return SampledBody(body, t_max, stabilized)


@dataclass(frozen=True)
class SlicePolytope:
    level: Fraction
    vertices: tuple

    @property
    def is_empty(self) -> bool:
        return not self.vertices


def slice_at_level(body: VPolyhedron, s) -> SlicePolytope:
    """``body`` cut by ``a_0 + ... + a_n = s``, in the coordinates ``a_1..a_n``."""
    s = as_fraction(s)
    dim = body.ambient_dim
    if not body.vertices or s < min(body.vertex_levels):
        return SlicePolytope(s, ())
    h = body.hrep
    # substitute a_0 = s - (a_1 + ... + a_n)
    halfspaces = tuple((tuple(a[i] - a[0] for i in range(1, dim)), b - a[0] * s)
                       for a, b in h.halfspaces)
    equations = tuple((tuple(a[i] - a[0] for i in range(1, dim)), b - a[0] * s)
                      for a, b in h.equations)
    sliced = HPolyhedron(dim - 1, halfspaces, equations)
    verts, recs = _h_to_v(sliced)
    if recs:
        raise ValueError("slice is unbounded; body recession cone must be the orthant")
    return SlicePolytope(s, tuple(verts))


def _affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    rank = 0
    ncols = len(base)
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            if f:
                f = f / pr[col]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        rank += 1
    return rank


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c]
            if f:
                f = f / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def pulling_triangulation(vertices: Sequence[Sequence[Fraction]],
                          facets: Sequence[frozenset]) -> list[tuple]:
    """Simplices (as vertex index tuples) of a pulling triangulation.

    ``facets`` lists the vertex index sets of the facets of the full
    dimensional polytope.
    """
    dim = len(vertices[0])
    rank_cache: dict[frozenset, int] = {}

    def rank(face):
        r = rank_cache.get(face)
        if r is None:
            r = rank_cache[face] = _affine_rank([vertices[i] for i in sorted(face)])
        return r

    memo: dict[frozenset, list] = {}

    def tri(face: frozenset, fdim: int) -> list:
        if face in memo:
            return memo[face]
        if fdim == 0:
            out = [(min(face),)]
        else:
            v0 = min(face)
            subfaces = set()
            for f in facets:
                sub = face & f
                if v0 in sub or len(sub) < fdim or sub == face:
                    continue
                if rank(sub) == fdim - 1:
                    subfaces.add(sub)
            out = [(v0,) + simp for sub in sorted(subfaces, key=sorted)
                   for simp in tri(sub, fdim - 1)]
        memo[face] = out
        return out

    return tri(frozenset(range(len(vertices))), dim)


def polytope_normalized_volume(polytope) -> Fraction:
    """``n!`` times the Euclidean volume of a bounded polytope in R^n."""
    verts = polytope.vertices if hasattr(polytope, "vertices") else polytope
    verts = sorted({tuple(as_fraction(x) for x in v) for v in verts})
    if not verts:
        return Fraction(0)
    dim = len(verts[0])
    if dim == 0 or len(verts) <= dim or _affine_rank(verts) < dim:
        return Fraction(0)
    if dim == 1:
        return verts[-1][0] - verts[0][0]
    h = _v_to_h(verts, [], dim)
    facets = [frozenset(i for i, v in enumerate(verts) if _dot(a, v) == b)
              for a, b in h.halfspaces]
    total = Fraction(0)
    for simp in pulling_triangulation(verts, facets):
        base = verts[simp[0]]
        m = [[x - y for x, y in zip(verts[i], base)] for i in simp[1:]]
        total += abs(_det(m))
    return total


@dataclass(frozen=True)
class PiecewisePolynomial:
    """Function of ``s``: 0 below ``breakpoints[0]``, ``pieces[i]`` on
    ``[breakpoints[i], breakpoints[i+1]]`` and ``tail`` from the last breakpoint."""

    breakpoints: tuple
    pieces: tuple
    tail: PolyT
    checks: tuple = field(default=(), compare=False)

    def __call__(self, s) -> Fraction:
        s = as_fraction(s)
        if not self.breakpoints or s < self.breakpoints[0]:
            return Fraction(0)
        if s >= self.breakpoints[-1]:
            return self.tail(s)
        for i, piece in enumerate(self.pieces):
            if s <= self.breakpoints[i + 1]:
                return piece(s)
        return self.tail(s)

    def intervals(self) -> list[tuple]:
        """``(lo, hi, poly)`` triples; ``hi`` is ``None`` for the tail."""
        out = [(self.breakpoints[i], self.breakpoints[i + 1], p)
               for i, p in enumerate(self.pieces)]
        out.append((self.breakpoints[-1], None, self.tail))
        return out


@dataclass(frozen=True)
class InterpolationCheck:
    lo: Fraction
    hi: Fraction | None
    verify_at: Fraction
    value: Fraction
    passed: bool


def fiber_volume_function(body: VPolyhedron) -> PiecewisePolynomial:
    n = body.ambient_dim - 1
    levels = body.vertex_levels
    checks = []

    def fit(lo, hi):
        if hi is None:
            xs = [lo + j for j in range(1, n + 3)]
        else:
            xs = [lo + (hi - lo) * Fraction(j, n + 3) for j in range(1, n + 3)]
        pts = [(x, polytope_normalized_volume(slice_at_level(body, x))) for x in xs]
        p = interpolate_polynomial(pts, n)
        checks.append(InterpolationCheck(lo, hi, xs[-1], pts[-1][1], p(xs[-1]) == pts[-1][1]))
        return p

    pieces = tuple(fit(levels[i], levels[i + 1]) for i in range(len(levels) - 1))
    tail = fit(levels[-1], None)
    if tail.degree != n or tail.leading != 1:
        raise ConsistencyError(f"tail volume polynomial is not monic of degree {n}")
    ends = list(pieces) + [tail]
    for i in range(1, len(ends)):
        at = levels[i]
        if ends[i - 1](at) != ends[i](at):
            raise ConsistencyError(f"fiber volume is discontinuous at s={at}")
    return PiecewisePolynomial(tuple(levels), pieces, tail, tuple(checks))
