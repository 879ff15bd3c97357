"""Acceptance criteria, one test each.  Every test prints a single
``PASS``/``FAIL`` line before asserting, so ``pytest tests/test_acceptance.py``
doubles as a report."""

import random
import time
from fractions import Fraction
from math import comb

import pytest

from conftest import mono
from segrezeta.exactnum import PolyT, RationalFunctionT, rf_normalize
from segrezeta.polyhedra import body_from_samples, newton_polyhedron
from segrezeta.polyring import HomogeneousIdeal, MultiPoly, generating_degree
from segrezeta.segre import (
    ShadowClass,
    beta_integral,
    integrate_piece,
    rational_index,
    segre_zeta,
    t_transform,
    zeta_extension_check,
)
from segrezeta.valuation import ValuationConfig, sample_semigroup


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        return ok
    return emit


def small_corpus(corpus):
    return [i for i in corpus if i.n <= 3]


def rf(num, den):
    return rf_normalize(PolyT(num), PolyT(den))


def test_criterion_1_hypersurface(report):
    t0 = time.perf_counter()
    comp = segre_zeta(mono((1, 1, 0)))
    elapsed = time.perf_counter() - t0
    ok = (comp.integral == rf([1], [1, 2])
          and comp.sigma.sigma == (1, -2, 4)
          and comp.oracle_sigma.sigma == (1, -2, 4)
          and elapsed < 1.0)
    assert report(1, ok, f"(x0x1): integral {comp.integral}, sigma {comp.sigma.sigma}, "
                         f"oracle {comp.oracle_sigma.sigma}, {elapsed:.3f}s")


def test_criterion_2_complete_intersections(report):
    lines = []
    ok = True
    for d0, d1 in [(1, 1), (2, 3), (3, 3)]:
        for nvars in (3, 4):
            e0 = (d0,) + (0,) * (nvars - 1)
            e1 = (0, d1) + (0,) * (nvars - 2)
            t0 = time.perf_counter()
            comp = segre_zeta(mono(e0, e1))
            elapsed = time.perf_counter() - t0
            want = rf([0, 0, d0 * d1], [1, d0 + d1, d0 * d1])
            good = comp.zeta == want and elapsed < 5.0
            ok &= good
            lines.append(f"({d0},{d1}) in {nvars} vars {'ok' if good else 'BAD'} {elapsed:.2f}s")
    assert report(2, ok, "; ".join(lines))


def test_criterion_3_oracle_corpus(corpus, report):
    ideals = small_corpus(corpus)
    t0 = time.perf_counter()
    bad = []
    for k, ideal in enumerate(ideals):
        comp = segre_zeta(ideal)
        if not (comp.crosscheck == "pass" and comp.sigma.sigma[0] == 1
                and all(isinstance(x, int) for x in comp.sigma.sigma)
                and comp.report.pole_check):
            bad.append(k)
    elapsed = time.perf_counter() - t0
    ok = len(ideals) >= 50 and not bad and elapsed < 60
    assert report(3, ok, f"{len(ideals)} ideals, {len(bad)} failures, {elapsed:.2f}s")


def test_criterion_4_dimension_independence(corpus, report):
    ideals = small_corpus(corpus)
    bad = [k for k, ideal in enumerate(ideals)
           if not (zeta_extension_check(ideal, extra=1) and zeta_extension_check(ideal, extra=2))]
    assert report(4, not bad, f"{len(ideals)} ideals extended by 1 and 2 variables, "
                              f"{len(bad)} mismatches")


def test_criterion_5_beta_and_t_action(report):
    beta_ok = True
    for n in range(5):
        for i in range(n + 1):
            c, power = beta_integral(n, i)
            beta_ok &= c == Fraction(1, comb(n, i)) and power == -(i + 1)
            got = integrate_piece(PolyT.monomial(i), 0, None, n)
            beta_ok &= got == RationalFunctionT(PolyT.monomial(n - i, c), PolyT.constant(1))
    rng = random.Random(20261019)
    action_ok = True
    for _ in range(100):
        g = ShadowClass([rng.randint(-30, 30) for _ in range(rng.randint(1, 6))])
        a, b, s = (rng.randint(-12, 12) for _ in range(3))
        action_ok &= t_transform(t_transform(g, b), a) == t_transform(g, a + b)
        action_ok &= t_transform(t_transform(g, s), -s) == g
    assert report(5, beta_ok and action_ok,
                  f"beta lemma {'ok' if beta_ok else 'BAD'} for i <= n <= 4, "
                  f"T-action {'ok' if action_ok else 'BAD'} on 100 classes")


def test_criterion_6_sampled_body_is_newton_polyhedron(corpus, report):
    ideals = small_corpus(corpus)
    bad = []
    for k, ideal in enumerate(ideals):
        s_max = generating_degree(ideal) + ideal.n + 1
        body = body_from_samples(sample_semigroup(ideal, ValuationConfig(ideal.num_vars), 1, s_max))
        if not body.polyhedron.same_set(newton_polyhedron(ideal)):
            bad.append(k)
    assert report(6, not bad, f"{len(ideals)} ideals, {len(bad)} differ")


def test_criterion_7_non_monomial(report):
    x = [MultiPoly.variable(i, 2) for i in range(2)]
    lin = HomogeneousIdeal(2, (x[0] + x[1],))
    y = [MultiPoly.variable(i, 3) for i in range(3)]
    mixed = HomogeneousIdeal(3, (y[0] * y[0] + y[1] * y[2], y[0] * y[1]))
    monotone = True
    for ideal in (lin, mixed):
        cfg = ValuationConfig(ideal.num_vars)
        d = generating_degree(ideal)
        bodies = [body_from_samples(sample_semigroup(ideal, cfg, t, t * d + ideal.n + 2)).polyhedron
                  for t in (1, 2, 3)]
        monotone &= all(big.contains(small) for small, big in zip(bodies, bodies[1:]))
    comp = segre_zeta(lin, t_max=2)
    ok = monotone and comp.stabilized is True and comp.integral == rf([1], [1, 1])
    assert report(7, ok, f"monotone {monotone}, (x0+x1) stabilized {comp.stabilized}, "
                         f"integral {comp.integral}")


def test_criterion_8_fiber_volume_certification(corpus, report):
    ideals = small_corpus(corpus)
    checks = tails = spots = 0
    bad = []
    for k, ideal in enumerate(ideals):
        comp = segre_zeta(ideal, crosscheck=False)
        vol = comp.fiber_volume
        checks += len(vol.checks)
        tail_ok = vol.tail.degree == ideal.n and vol.tail.leading == 1
        tails += tail_ok
        q = generating_degree(ideal) + Fraction(1, 2)
        spot_ok = rational_index(ideal, q) == vol.tail(q)
        spots += spot_ok
        if not (all(c.passed for c in vol.checks) and tail_ok and spot_ok):
            bad.append(k)
    assert report(8, not bad, f"{checks} interpolation checks, {tails} monic tails, "
                              f"{spots} rational-index spot checks over {len(ideals)} ideals")
