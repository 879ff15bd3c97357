from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from segrezeta.errors import (
    DuplicateAbscissa,
    InconsistentExtraPoint,
    NonUnitConstantTerm,
    ZeroDenominator,
)
from segrezeta.exactnum import (
    PolyT,
    RationalFunctionT,
    interpolate_polynomial,
    poly_arith,
    poly_gcd,
    rf_normalize,
    rf_to_series,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.lists(small, max_size=4).map(PolyT)


def P(*c):
    return PolyT(c)


def test_poly_arith_examples():
    assert poly_arith(P(1, 2), P(1, 3), "mul") == P(1, 5, 6)
    assert poly_arith(P(3, 1, 4), PolyT(), "mul") == PolyT()
    assert poly_arith(P(1, 1), P(1, 1), "sub") == PolyT()
    assert poly_arith(P(1, 1), P(0, 0, 1), "add") == P(1, 1, 1)


def test_trailing_zeros_are_trimmed():
    assert P(1, 0, 0).coeffs == (1,)
    assert PolyT().degree == -1


def test_divmod_and_gcd():
    q, r = P(1, 5, 6).divmod(P(1, 2))
    assert q == P(1, 3) and r == PolyT()
    assert poly_gcd(P(2, 10, 12), P(4, 8)) == P(Fraction(1, 2), 1)


def test_rf_normalize_examples():
    f = rf_normalize(P(0, 2, 4), P(2, 4))
    assert f.num == P(0, 1) and f.den == P(1)
    z = rf_normalize(PolyT(), P(1, 1))
    assert z.num == PolyT() and z.den == P(1)
    g = rf_normalize(P(0, 0, 6), P(1, 2) * P(1, 3))
    assert g.num == P(0, 0, 6) and g.den == P(1, 5, 6)


def test_rf_normalize_errors():
    with pytest.raises(ZeroDenominator):
        rf_normalize(P(1), PolyT())
    with pytest.raises(NonUnitConstantTerm):
        rf_normalize(P(1), P(0, 1))


def test_rf_to_series_examples():
    assert rf_to_series(rf_normalize(P(1), P(1, 2)), 3).coeffs == (1, -2, 4, -8)
    assert rf_to_series(rf_normalize(P(0, 1), P(1, 1)), 2).coeffs == (0, 1, -1)
    assert rf_to_series(rf_normalize(P(0, 0, 6), P(1, 5, 6)), 3).coeffs == (0, 0, 6, -30)


def test_rf_to_series_against_sympy():
    t = sympy.symbols("t")
    f = rf_normalize(P(2, -1, 3), P(1, 3, 0, 2))
    expected = sympy.series((2 - t + 3 * t**2) / (1 + 3 * t + 2 * t**3), t, 0, 7).removeO()
    want = [Fraction(str(expected.coeff(t, i))) for i in range(7)]
    assert list(rf_to_series(f, 6).coeffs) == want


def test_interpolate_examples():
    assert interpolate_polynomial([(2, 0), (3, 1), (4, 4)], 2) == P(4, -4, 1)
    assert interpolate_polynomial([(0, Fraction(7, 3))], 0) == P(Fraction(7, 3))
    with pytest.raises(InconsistentExtraPoint):
        interpolate_polynomial([(0, 0), (1, 1), (2, 4), (3, 10)], 2)
    with pytest.raises(DuplicateAbscissa):
        interpolate_polynomial([(1, 0), (1, 1)], 1)


def test_rf_arithmetic():
    a = rf_normalize(P(1), P(1, 2))
    b = rf_normalize(P(0, 2), P(1, 2))
    assert a + b == RationalFunctionT.constant(1)
    assert 1 - b == a


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


@given(polys, polys.filter(lambda p: p[0] != 0), st.integers(0, 8))
@settings(max_examples=60)
def test_series_resums(num, den, order):
    f = rf_normalize(num, den)
    s = rf_to_series(f, order)
    prod = PolyT(s.coeffs) * f.den
    for i in range(order + 1):
        assert prod[i] == f.num[i]


@given(polys, polys.filter(lambda p: p[0] != 0))
def test_normalize_idempotent(num, den):
    f = rf_normalize(num, den)
    assert rf_normalize(f.num, f.den) == f
    assert f.den[0] == 1


@given(st.lists(st.tuples(small, small), min_size=1, max_size=6, unique_by=lambda p: p[0]))
def test_interpolation_reproduces_points(points):
    p = interpolate_polynomial(points, len(points) - 1)
    for x, y in points:
        assert p(x) == y
