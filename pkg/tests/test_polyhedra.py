import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from conftest import F, mono
from segrezeta.errors import DimensionTooLarge, NotMonomial
from segrezeta.exactnum import PolyT
from segrezeta.polyhedra import (
    _h_to_v,
    body_from_samples,
    convex_hull,
    fiber_volume_function,
    newton_polyhedron,
    orthant_rays,
    polytope_normalized_volume,
    slice_at_level,
)
from segrezeta.polyring import HomogeneousIdeal, MultiPoly, generating_degree, spanning_set
from segrezeta.segre import rational_index
from segrezeta.valuation import ValuationConfig, sample_semigroup


def V(*pts):
    return {tuple(F(x) for x in p) for p in pts}


def test_convex_hull_examples():
    p = convex_hull([(1, 1, 0)], orthant_rays(3))
    assert set(p.vertices) == V((1, 1, 0)) and len(p.rays) == 3
    p = convex_hull([(2, 0), (1, 1), (0, 5)], orthant_rays(2))
    assert set(p.vertices) == V((2, 0), (1, 1), (0, 5))
    p = convex_hull([(1, 0), (2, 0)], orthant_rays(2))
    assert set(p.vertices) == V((1, 0))


def test_convex_hull_drops_interior_points():
    p = convex_hull([(0, 0), (4, 0), (0, 4), (1, 1)])
    assert set(p.vertices) == V((0, 0), (4, 0), (0, 4))


def test_convex_hull_dimension_cap():
    with pytest.raises(DimensionTooLarge):
        convex_hull([(0,) * 7])


def test_newton_polyhedron_examples():
    assert set(newton_polyhedron(mono((1, 1, 0))).vertices) == V((1, 1, 0))
    assert set(newton_polyhedron(mono((2, 0, 0), (0, 3, 0))).vertices) == V((2, 0, 0), (0, 3, 0))
    assert set(newton_polyhedron(mono((1, 1), (2, 1))).vertices) == V((1, 1))
    x = [MultiPoly.variable(i, 2) for i in range(2)]
    with pytest.raises(NotMonomial):
        newton_polyhedron(HomogeneousIdeal(2, (x[0] + x[1],)))


def test_body_from_samples_examples():
    cfg = ValuationConfig(3)
    ideal = mono((1, 1, 0))
    body = body_from_samples(sample_semigroup(ideal, cfg, 1, 4))
    assert body.polyhedron.same_set(newton_polyhedron(ideal))
    assert body.stabilized is None

    x = [MultiPoly.variable(i, 2) for i in range(2)]
    lin = HomogeneousIdeal(2, (x[0] + x[1],))
    body = body_from_samples(sample_semigroup(lin, ValuationConfig(2), 2, 4))
    assert set(body.polyhedron.vertices) == V((1, 0))
    assert body.stabilized is True

    ideal = mono((2, 0, 0), (0, 1, 1))
    body = body_from_samples(sample_semigroup(ideal, cfg, 2, 5))
    assert body.stabilized is True
    assert body.polyhedron.same_set(newton_polyhedron(ideal))


def test_slice_examples():
    body = newton_polyhedron(mono((1, 1, 0)))
    assert set(slice_at_level(body, 2).vertices) == V((1, 0))
    tri = slice_at_level(body, 4)
    assert set(tri.vertices) == V((1, 0), (3, 0), (1, 2))
    assert slice_at_level(body, 1).is_empty


def test_volume_examples():
    assert polytope_normalized_volume([(1, 0), (3, 0), (1, 2)]) == 4
    assert polytope_normalized_volume([(1, 2)]) == 0
    for n in range(1, 5):
        simplex = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(0,) * n]
        assert polytope_normalized_volume(simplex) == 1


def test_fiber_volume_examples():
    vol = fiber_volume_function(newton_polyhedron(mono((1, 1, 0))))
    assert vol.breakpoints == (2,)
    assert vol.tail == PolyT((4, -4, 1))
    assert vol(1) == 0 and vol(5) == 9
    vol = fiber_volume_function(newton_polyhedron(mono((1, 0))))
    assert vol.tail == PolyT((-1, 1))
    vol = fiber_volume_function(newton_polyhedron(mono((2, 0, 0), (0, 3, 0))))
    assert vol.tail == PolyT((-6, 0, 1))
    assert vol(Fraction(5, 2)) == 3 * Fraction(1, 2) ** 2


def _shoelace(pts):
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    pts = sorted(pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
    area = 0
    for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1]):
        area += x1 * y2 - x2 * y1
    return abs(area) / 2


lattice2 = st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=3, max_size=8)


@given(lattice2)
@settings(max_examples=60, deadline=None)
def test_area_matches_shoelace(points):
    exact = polytope_normalized_volume(points)
    if exact == 0:
        return
    verts = [tuple(map(float, v)) for v in convex_hull(points).vertices]
    assert math.isclose(float(exact), 2 * _shoelace(verts), rel_tol=1e-12)


def test_volume_matches_scipy_in_3d():
    rng = random.Random(7)
    for _ in range(25):
        pts = [tuple(rng.randint(0, 5) for _ in range(3)) for _ in range(rng.randint(5, 10))]
        exact = polytope_normalized_volume(pts)
        if exact == 0:
            continue
        assert math.isclose(float(exact), 6 * ConvexHull(pts).volume, rel_tol=1e-9)


def test_volume_matches_scipy_in_4d():
    rng = random.Random(11)
    for _ in range(10):
        pts = [tuple(rng.randint(0, 3) for _ in range(4)) for _ in range(rng.randint(6, 10))]
        exact = polytope_normalized_volume(pts)
        if exact == 0:
            continue
        assert math.isclose(float(exact), 24 * ConvexHull(pts).volume, rel_tol=1e-9)


def test_v_to_h_to_v_duality(corpus):
    rng = random.Random(3)
    for ideal in corpus[:25]:
        p = newton_polyhedron(ideal)
        verts, rays = _h_to_v(p.hrep)
        assert set(verts) == set(p.vertices)
        assert {r for r in rays} == set(orthant_rays(p.ambient_dim))
        for v in p.vertices:
            assert p.contains_point(v)
            inner = [x + Fraction(rng.randint(1, 3), 7) for x in v]
            assert p.contains_point(inner)
            # a vertex minus a recession direction leaves the polyhedron
            outer = list(v)
            outer[0] -= Fraction(1, 100)
            outer[1] -= Fraction(1, 100)
            assert not p.contains_point(outer)


def test_sampled_body_monotone_in_t():
    x = [MultiPoly.variable(i, 3) for i in range(3)]
    ideal = HomogeneousIdeal(3, (x[0] * x[0] + x[1] * x[2], x[0] * x[1]))
    cfg = ValuationConfig(3)
    bodies = [body_from_samples(sample_semigroup(ideal, cfg, t, 2 * t + 2)).polyhedron
              for t in (1, 2, 3)]
    for small, big in zip(bodies, bodies[1:]):
        assert big.contains(small)


def test_sampled_body_equals_newton_polyhedron(corpus):
    checked = 0
    for ideal in corpus:
        if ideal.num_vars > 3:
            continue
        d = generating_degree(ideal)
        n = ideal.num_vars - 1
        cfg = ValuationConfig(ideal.num_vars)
        body = body_from_samples(sample_semigroup(ideal, cfg, 1, d + n + 1))
        assert body.polyhedron.same_set(newton_polyhedron(ideal))
        checked += 1
    assert checked >= 10


@pytest.mark.parametrize("exps,a,b", [
    (((1, 1, 0),), 2, 5),
    (((2, 0, 0), (0, 1, 1)), 2, 5),
    (((2, 0, 0), (0, 3, 0)), 3, 10),
    (((1, 2, 0), (0, 0, 3)), 2, 7),
])
def test_slice_at_rational_level_scales_lattice_hull(exps, a, b):
    ideal = mono(*exps)
    q = F(b) / a
    assert q > generating_degree(ideal)
    slc = slice_at_level(newton_polyhedron(ideal), q)
    pts = [tuple(Fraction(e, a) for e in m.exponents[0][1:]) for m in spanning_set(ideal, a, b)]
    assert set(slc.vertices) == set(convex_hull(pts).vertices)


def test_fiber_volume_is_continuous_and_monic(corpus):
    for ideal in corpus[:30]:
        n = ideal.num_vars - 1
        vol = fiber_volume_function(newton_polyhedron(ideal))
        assert all(c.passed for c in vol.checks)
        assert vol.tail.degree == n and vol.tail.leading == 1
        for i, (lo, hi, p) in enumerate(vol.intervals()):
            if i > 0:
                assert p(lo) == vol.intervals()[i - 1][2](lo)


def test_tail_agrees_with_exact_slices(corpus):
    for ideal in corpus[:20]:
        vol = fiber_volume_function(newton_polyhedron(ideal))
        q = vol.breakpoints[-1] + Fraction(1, 3)
        assert vol.tail(q) == polytope_normalized_volume(slice_at_level(newton_polyhedron(ideal), q))


def test_tail_agrees_with_rational_index():
    for exps in [((1, 1, 0),), ((2, 0, 0), (0, 3, 0)), ((1, 0, 0), (0, 2, 1))]:
        ideal = mono(*exps)
        d = generating_degree(ideal)
        q = d + Fraction(1, 2)
        vol = fiber_volume_function(newton_polyhedron(ideal))
        assert vol(q) == rational_index(ideal, q)
