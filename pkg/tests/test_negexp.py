from __future__ import annotations

from fractions import Fraction

import mpmath
from hypothesis import given, strategies as st

from polyzeta.bricks import LaTerm
from polyzeta.exact import LaurentPoly
from polyzeta.negexp import RationalZCoeff, eliminate_nonpositive, tail_power_sum, trunc_power_sum
from polyzeta.numeval import monomial_value, polylog_numeric, to_mpf


def _as_dict(out):
    return {(t.s, t.args): c for c, t in out}


def _upoly(p, x):
    return sum(c * x ** d for d, c in enumerate(p))


def test_trunc_power_sum_s0():
    a1, a2 = trunc_power_sum(0)
    assert a1 == {0: (0, -1)} and a2 == {0: (0, 1)}


def test_trunc_power_sum_closed_forms():
    x = Fraction(2, 7)
    for s in range(6):
        a1, a2 = trunc_power_sum(s)
        for K in range(0, 8):
            got = sum((x ** K * _upoly(a1.get(l, ()), x) + _upoly(a2.get(l, ()), x)) * K ** l
                      for l in set(a1) | set(a2)) / (1 - x) ** (s + 1)
            assert got == sum(Fraction(k) ** s * x ** k for k in range(1, K + 1))
    # s = 1: x(1 - (K+1)x^K + K x^{K+1})/(1-x)^2
    a1, a2 = trunc_power_sum(1)
    for K in range(5):
        got = sum((x ** K * _upoly(a1.get(l, ()), x) + _upoly(a2.get(l, ()), x)) * K ** l
                  for l in set(a1) | set(a2))
        assert got == x * (1 - (K + 1) * x ** K + K * x ** (K + 1))


def test_tail_power_sum():
    x = mpmath.mpf(1) / 3
    for s in range(5):
        q = tail_power_sum(s)
        for L in (1, 2, 5):
            got = x ** L * sum(to * L ** j for j, poly in q.items() for to in [_upoly(poly, x)]) / (1 - x) ** (s + 1)
            want = mpmath.nsum(lambda k: k ** s * x ** k, [L, mpmath.inf])
            assert abs(got - want) < 1e-30


def test_depth_one_examples():
    z = (1,)
    out = _as_dict(eliminate_nonpositive(LaTerm((0,), (z,))))
    assert list(out) == [((), ())]
    zv = [Fraction(1, 3)]
    assert out[((), ())].evaluate(zv) == Fraction(1, 2)  # z/(1-z)
    out = _as_dict(eliminate_nonpositive(LaTerm((-1,), (z,))))
    assert out[((), ())].evaluate(zv) == Fraction(3, 4)  # z/(1-z)^2


def test_depth_two_example():
    x, y = (1, 0), (0, 1)
    out = _as_dict(eliminate_nonpositive(LaTerm((1, 0), (x, y))))
    assert set(out) == {((1,), (x,)), ((1,), ((1, 1),))}
    zv = [Fraction(1, 5), Fraction(2, 7)]
    assert out[((1,), (x,))].evaluate(zv) == Fraction(2, 5)   # y/(1-y)
    assert out[((1,), ((1, 1),))].evaluate(zv) == -Fraction(2, 5)


def test_rational_coeff_algebra():
    c = RationalZCoeff.one(1).over((1,), 2) * LaurentPoly(1, {(1,): 1})
    assert c.denominators() == [(((1,), 2),)]
    assert c.evaluate([Fraction(1, 2)]) == 2
    assert not (c + c * -1)
    assert "(1-z1)^2" in repr(c)


@st.composite
def neg_terms(draw):
    p = draw(st.integers(1, 3))
    s = [draw(st.integers(-3, 3)) for _ in range(p)]
    if all(x >= 1 for x in s):
        s[draw(st.integers(0, p - 1))] = draw(st.integers(-3, 0))
    args = tuple(tuple(1 if a == i else 0 for a in range(p)) for i in range(p))
    return LaTerm(tuple(s), args)


@given(neg_terms())
def test_elimination_numeric_and_weight(t):
    zv = [Fraction(1, 3), Fraction(2, 5), Fraction(1, 2)][: len(t.s)]
    out = eliminate_nonpositive(t)
    with mpmath.workprec(128):
        want = polylog_numeric(t.s, [monomial_value(a, zv) for a in t.args])
        got = 0
        for c, term in out:
            assert all(x >= 1 for x in term.s)
            assert term.weight <= t.weight and term.depth <= t.depth
            v = 1 if not term.s else polylog_numeric(term.s, [monomial_value(a, zv) for a in term.args])
            got += to_mpf(c.evaluate(zv)) * v
        assert abs(got - want) < mpmath.mpf(10) ** -30
