from __future__ import annotations

from fractions import Fraction

import mpmath
from hypothesis import given, strategies as st

from polyzeta.bricks import CONSTANT, Brick, certify_bounds, decompose_brick, q_poly, theorem_bounds
from polyzeta.exact import LaurentPoly
from polyzeta.numeval import brick_numeric, decomposition_numeric


def lp(nv, d):
    return LaurentPoly(nv, d)


def test_q_poly_examples():
    assert q_poly((2,), 1, ((1,),)) == lp(1, {(-1,): 1})
    assert q_poly((2,), 0, ((1,),)) == LaurentPoly(1)
    got = q_poly((1, 1), 2, ((1, 0), (0, 1)))
    # enumerate k1 >= k2 in {1, 2} with weights 1/(k1 k2)
    assert got == lp(2, {(-1, -1): 1, (-2, -1): Fraction(1, 2), (-2, -2): Fraction(1, 4)})
    assert q_poly((), 5, ((1,),), 1) == LaurentPoly.constant(1, 1)


def test_shifted_depth_one():
    d = decompose_brick(Brick((2,), (0,), (1,), ((1,),)))
    assert d.terms == {CONSTANT: lp(1, {(0,): -1}), ((2,), ((-1,),)): lp(1, {(1,): 1})}


def test_identity_cases():
    d = decompose_brick(Brick((3,), (0,), (0,), ((1,),)))
    assert d.terms == {((3,), ((-1,),)): LaurentPoly.constant(1, 1)}
    d = decompose_brick(Brick((2, 1), (0, 0), (0, 0), ((1, 0), (0, 1))))
    assert d.terms == {((2, 1), ((-1, 0), (0, -1))): LaurentPoly.constant(1, 2)}


def test_certificate_examples():
    b = Brick((2,), (0,), (1,), ((1,),))
    cert = certify_bounds(b, decompose_brick(b))
    assert cert.ok and cert.scale == 1 and cert.max_z1_degree == 1
    b = Brick((3,), (0,), (2,), ((1,),))
    d = decompose_brick(b)
    assert q_poly((3,), 2, ((1,),)) == lp(1, {(-1,): 1, (-2,): Fraction(1, 8)})
    # constant part is -z^2 Q(2; z)
    assert d.constant == -lp(1, {(1,): 1, (0,): Fraction(1, 8)})
    cert = certify_bounds(b, d)
    assert cert.ok and cert.scale == 8
    b = Brick((2, 3), (0, 0), (0, 0), ((1, 0), (0, 1)))
    d = decompose_brick(b)
    assert not d.constant and certify_bounds(b, d).ok


def test_theorem_bounds_shape():
    assert theorem_bounds(Brick((1, 2), (0, 3), (1, 2), ((1,), (1,)))) == (5, 2, 5, 3)
    assert theorem_bounds(Brick((1, 2, 1), (0, 3, 1), (1, 2, 3), ((1,),) * 3)) == (7, 3, 5, 4)


@st.composite
def bricks(draw, positive=False):
    N = draw(st.integers(1, 3))
    lo = 1 if positive else -2
    s = tuple(draw(st.integers(lo, 3)) for _ in range(N))
    m = (0,) + tuple(draw(st.integers(0, 2)) for _ in range(N - 1))
    j = tuple(draw(st.integers(0, 3)) for _ in range(N))
    args = tuple(tuple(1 if a == i else 0 for a in range(N)) for i in range(N))
    return Brick(s, m, j, args)


ZV = [Fraction(2), Fraction(3), Fraction(5)]


@given(bricks())
def test_brick_decomposition_numeric(b):
    d = decompose_brick(b)
    zv = ZV[: b.N]
    with mpmath.workprec(128):
        diff = abs(decomposition_numeric(d, zv) - brick_numeric(b.s, b.m, b.j, zv))
    assert diff < mpmath.mpf(10) ** -25


@given(bricks(positive=True))
def test_positive_bricks_within_weak_bounds(b):
    cert = certify_bounds(b, decompose_brick(b))
    assert cert.denominator_ok and cert.modulated_ok
    if b.N <= 2 or not any(b.m):
        assert cert.ok


def test_modulated_degree_exceeds_k_bound():
    # numerically exact decomposition whose z_1-degree is I_N = 2 > K_N = 1
    b = Brick((1, 1, 1), (0, 1, 0), (0, 0, 1), ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    d = decompose_brick(b)
    zv = ZV
    assert abs(decomposition_numeric(d, zv) - brick_numeric(b.s, b.m, b.j, zv)) < 1e-40
    assert d.terms[((1,), ((-1, -1, -1),))].terms[(2, 1, 1)] == Fraction(1, 2)
    cert = certify_bounds(b, d)
    assert theorem_bounds(b)[:3] == (2, 1, 1)
    assert cert.denominator_ok and not cert.degree_ok and cert.modulated_ok


@given(bricks())
def test_shared_memo_is_transparent(b):
    memo: dict = {}
    first = decompose_brick(b, memo)
    assert decompose_brick(b, memo) == first == decompose_brick(b)


@given(st.lists(st.integers(-2, 3), min_size=1, max_size=3), st.integers(0, 6))
def test_q_poly_brute_force(s, K):
    from itertools import product

    N = len(s)
    args = tuple(tuple(1 if a == i else 0 for a in range(N)) for i in range(N))
    expect: dict = {}
    for ks in product(range(1, K + 1), repeat=N):
        if any(ks[i] < ks[i + 1] for i in range(N - 1)):
            continue
        c = Fraction(1)
        for k, e in zip(ks, s):
            c *= Fraction(k) ** (-e)
        mono = tuple(-k for k in ks)
        expect[mono] = expect.get(mono, 0) + c
    assert q_poly(tuple(s), K, args) == LaurentPoly(N, expect)
