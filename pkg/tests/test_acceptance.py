"""One pass/fail test per acceptance criterion, at the stated tolerances."""
from __future__ import annotations

import random
import time
from fractions import Fraction

import mpmath

from polyzeta.atone import decompose_at_one
from polyzeta.bricks import Brick, LaTerm, certify_bounds, decompose_brick
from polyzeta.exact import MPoly
from polyzeta.identities import HORRIBLE, VERY_WELL_POISED, even_zeta_fit
from polyzeta.mzv import MZVExpr, regularize_sh, shuffle, word_of_composition
from polyzeta.negexp import eliminate_nonpositive
from polyzeta.numeval import (brick_numeric, decomposition_numeric, monomial_value, mzv_numeric, mzvexpr_numeric,
                              polylog_numeric, series_numeric, to_mpf)
from polyzeta.pfd import pfd_terms, recombine_check
from polyzeta.series import MultSeries, check_convergence, normalize_shifts, series_from_text
from polyzeta.sorokin import QuadratureConfig, SorokinIntegral, quadrature_check, series_from_integral


def _label_comp(label):
    if label.startswith("z("):
        return tuple(int(x) for x in label[2:-1].split(","))
    return (int(label[1:]),)


def _random_brick(rng, positive=False):
    N = rng.randint(1, 3)
    s = tuple(rng.randint(1 if positive else -2, 3) for _ in range(N))
    m = (0,) + tuple(rng.randint(0, 2) for _ in range(N - 1))
    j = tuple(rng.randint(0, 3) for _ in range(N))
    args = tuple(tuple(1 if a == i else 0 for a in range(N)) for i in range(N))
    return Brick(s, m, j, args)


def _random_series(rng, p):
    while True:
        A = tuple(rng.randint(1, 3) for _ in range(p))
        n = tuple(rng.randint(0, 2) for _ in range(p))
        r = tuple(rng.randint(0, 1) for _ in range(p))
        terms = {tuple(rng.randint(0, 3) for _ in range(p)): rng.randint(1, 5) * rng.choice((-1, 1))
                 for _ in range(rng.randint(1, 4))}
        s = MultSeries(p, MPoly(p, terms), A, n, r)
        if check_convergence(normalize_shifts(s)):
            return s


def test_criterion_1_mixed_degree_identity():
    t0 = time.perf_counter()
    e = decompose_at_one(HORRIBLE.series())
    elapsed = time.perf_counter() - t0
    expected = MZVExpr(HORRIBLE.rhs["1"], {_label_comp(k): v for k, v in HORRIBLE.rhs.items() if k != "1"})
    assert e == expected  # same basis, so coefficients agree exactly
    with mpmath.workprec(128):
        v = mzvexpr_numeric(e)
        assert abs(v - HORRIBLE.rhs_value()) <= 1e-8
        assert abs(v - series_numeric(HORRIBLE.series())[0]) <= 1e-8
    assert elapsed < 60


def test_criterion_2_very_well_poised():
    for ident in VERY_WELL_POISED:
        s = ident.series()
        with mpmath.workprec(128):
            assert abs(series_numeric(s)[0] - ident.rhs_value()) <= ident.tolerance, ident.name
        e = decompose_at_one(s)
        fits = [even_zeta_fit(lambda prec: mzvexpr_numeric(e, prec), list(ident.rhs), digits)
                for digits in (100, 150)]
        for fit in fits:
            assert fit.found and fit.even_free, (ident.name, fit.relation)
        assert fits[0].coeffs == fits[1].coeffs == ident.rhs, ident.name


def test_criterion_3_euler_and_integral():
    s = series_from_text("1", (2, 1), (0, 0))
    e = decompose_at_one(s)
    assert e == MZVExpr(0, {(2, 1): 1, (3,): 1})
    two_zeta3 = 2 * mpmath.zeta(3)
    assert abs(mzvexpr_numeric(e) - two_zeta3) <= 1e-10
    I = SorokinIntegral.S3(0)
    pref, s3 = series_from_integral(I)
    e3 = decompose_at_one(s3)
    assert e3 * pref.value(1) == e
    gauss = quadrature_check(I, 1, QuadratureConfig(method="gauss", nodes=64))
    assert abs(gauss.value - two_zeta3) <= 1e-6
    # the Gauss-Legendre branch carries the 1e-6 requirement; Monte Carlo only has to sit inside its bar
    mc = quadrature_check(I, 1, QuadratureConfig(method="montecarlo", samples=400_000))
    assert abs(mc.value - two_zeta3) <= mc.error


def test_criterion_4_pfd_recombination():
    rng = random.Random(4)
    t0 = time.perf_counter()
    for i in range(200):
        p = 1 + i % 3
        A = tuple(rng.randint(1, 3) for _ in range(p))
        n = tuple(rng.randint(0, 2) for _ in range(p))
        terms = {tuple(rng.randint(0, 6) for _ in range(p)): Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 4))
                 for _ in range(rng.randint(1, 5))}
        s = MultSeries(p, MPoly(p, terms), A, n)
        assert not recombine_check(s, pfd_terms(s))
    assert time.perf_counter() - t0 < 30


def test_criterion_5_brick_identities():
    rng = random.Random(5)
    zv = [Fraction(2), Fraction(3), Fraction(5)]
    with mpmath.workprec(128):
        for _ in range(100):
            b = _random_brick(rng)
            d = decompose_brick(b)
            z = zv[: b.N]
            assert abs(decomposition_numeric(d, z) - brick_numeric(b.s, b.m, b.j, z)) <= 1e-20, b


def test_criterion_6_bound_certificates():
    rng = random.Random(6)
    failures = []
    for _ in range(200):
        b = _random_brick(rng, positive=True)
        cert = certify_bounds(b, decompose_brick(b))
        if not cert.ok:
            failures.append((b.s, b.m, b.j, cert.max_z1_degree, cert.degree_bound))
    assert not failures, f"{len(failures)} bricks exceed the z_1-degree bound K_N, e.g. {failures[:3]}"


def test_criterion_7_shuffle_regularization():
    assert regularize_sh("1").is_zero()
    assert regularize_sh(word_of_composition((1, 2))) == MZVExpr(0, {(2, 1): -2})
    rng = random.Random(7)

    def comp():
        return (rng.randint(2, 4),) + tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 1)))

    with mpmath.workprec(128):
        for _ in range(50):
            u, v = comp(), comp()
            rhs = mpmath.fsum(c * mzvexpr_numeric(regularize_sh(w))
                              for w, c in shuffle(word_of_composition(u), word_of_composition(v)).items())
            assert abs(mzv_numeric(u) * mzv_numeric(v) - rhs) <= 1e-10, (u, v)


def test_criterion_8_non_enrichment():
    rng = random.Random(8)
    pool = [Fraction(1, 3), Fraction(2, 5), Fraction(1, 2), Fraction(-1, 4), Fraction(3, 7)]
    with mpmath.workprec(128):
        for _ in range(100):
            p = rng.randint(1, 3)
            s = [rng.randint(-3, 3) for _ in range(p)]
            if all(x >= 1 for x in s):
                s[rng.randrange(p)] = rng.randint(-3, 0)
            args = tuple(tuple(1 if a == i else 0 for a in range(p)) for i in range(p))
            zv = rng.sample(pool, p)
            t = LaTerm(tuple(s), args)
            want = polylog_numeric(t.s, [monomial_value(a, zv) for a in args])
            got = mpmath.mpf(0)
            for c, term in eliminate_nonpositive(t):
                assert all(x >= 1 for x in term.s)
                assert term.weight <= t.weight
                val = 1 if not term.s else polylog_numeric(term.s, [monomial_value(a, zv) for a in term.args])
                got += to_mpf(c.evaluate(zv)) * val
            assert abs(got - want) <= 1e-25, t


def test_criterion_9_weight_bound():
    rng = random.Random(9)
    violations = []
    for i in range(30):
        s = _random_series(rng, 1 + i % 3)
        e = decompose_at_one(s)
        violations += [k for k in e.terms if sum(k) > sum(s.A)]
        assert abs(mzvexpr_numeric(e) - series_numeric(s)[0]) <= 1e-8
    assert not violations
