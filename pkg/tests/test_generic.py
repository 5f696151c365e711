from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from polyzeta.generic import decompose_generic, rational_decomposition_numeric
from polyzeta.numeval import decomposition_numeric, series_numeric
from polyzeta.series import series_from_text

CASES = [
    ("5*k2^2 - k1^2 - 4*k1*k2 - 3*k1 + 7*k2", (4, 3), (2, 3), (0, 1), [Fraction(2), Fraction(3)]),
    ("k1^3*k2", (1, 1), (0, 0), None, [Fraction(3), Fraction(2)]),
    ("(k1-k2)^2*k3", (2, 1, 2), (1, 0, 1), None, [Fraction(5, 2), Fraction(3), Fraction(7, 4)]),
]


@pytest.mark.parametrize("P,A,n,r,z", CASES)
def test_generic_matches_series(P, A, n, r, z):
    s = series_from_text(P, A, n, r)
    want = series_numeric(s, z)[0]
    d = decompose_generic(s)
    assert abs(decomposition_numeric(d, z) - want) < mpmath.mpf(10) ** -30
    e = decompose_generic(s, eliminate=True)
    assert all(x >= 1 for sv, _ in e for x in sv)
    assert abs(rational_decomposition_numeric(e, z) - want) < mpmath.mpf(10) ** -30


def test_generic_la_weights_bounded():
    s = series_from_text("k1^3*k2", (1, 1), (0, 0))
    d = decompose_generic(s)
    assert all(t.weight <= 2 for _, t in d.la_terms())
