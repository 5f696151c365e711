from __future__ import annotations

from fractions import Fraction

from hypothesis import given, strategies as st

from polyzeta.exact import MPoly
from polyzeta.pfd import (elementary_series, key_quadruplet, pfd_terms, quadruplet_key, recombine_check,
                          univariate_pfd)
from polyzeta.series import MultSeries, series_from_text


def test_entire_part_example():
    s = series_from_text("k1^2", (1,), (1,))
    assert pfd_terms(s) == {((0, 0),): 1, ((1, 1),): -1}


def test_telescoping_kernel():
    assert pfd_terms(series_from_text("1", (1,), (1,))) == {((0, 1),): 1, ((1, 1),): -1}


def test_product_of_univariate():
    s = series_from_text("1", (1, 1), (1, 0))
    assert pfd_terms(s) == {((0, 1), (0, 1)): 1, ((1, 1), (0, 1)): -1}


def test_univariate_pfd_pointwise():
    for a in range(6):
        for n in range(3):
            for A in range(1, 3):
                for x in (Fraction(7, 3), Fraction(-5, 2)):
                    den = Fraction(1)
                    for i in range(n + 1):
                        den *= (x + i) ** A
                    total = Fraction(0)
                    for (j, s), c in univariate_pfd(a, n, A):
                        total += c * (x ** (-s) if s <= 0 else (x + j) ** (-s))
                    assert total == x ** a / den


def test_quadruplet_round_trip():
    key = ((0, 2), (0, -1), (3, 1))
    q = key_quadruplet(key)
    assert q.I == frozenset({2}) and q.shat[2] == 1 and q.j[3] == 3
    assert quadruplet_key(q, 3) == key


def test_elementary_series_shapes():
    zeta21 = elementary_series(key_quadruplet(((0, 2), (0, 1))), ((1, 0), (0, 1)))
    assert zeta21.numer_exps == (0, 0)
    mixed = elementary_series(key_quadruplet(((0, 2), (0, -1))), ((1, 0), (0, 1)))
    assert mixed.numer_exps == (0, 1) and mixed.poles == (((0, 2),), ())
    shifted = elementary_series(key_quadruplet(((3, 1),)), ((1,),))
    assert shifted.poles == (((3, 1),),)


def test_paper_numerator_recombines():
    s = series_from_text("5*k2^2 - k1^2 - 4*k1*k2 - 3*k1 + 7*k2", (4, 3), (2, 4))
    assert not recombine_check(s, pfd_terms(s))


@st.composite
def random_series(draw):
    p = draw(st.integers(1, 3))
    A = tuple(draw(st.integers(1, 3)) for _ in range(p))
    n = tuple(draw(st.integers(0, 2)) for _ in range(p))
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 5)] * p), st.integers(-9, 9), min_size=1, max_size=4))
    return MultSeries(p, MPoly(p, terms) + MPoly.constant(1, p), A, n)


@given(random_series())
def test_recombination_is_exact(s):
    assert not recombine_check(s, pfd_terms(s))
