from __future__ import annotations

from fractions import Fraction

import pytest

from polyzeta.exact import MPoly
from polyzeta.parsing import ParseError, parse_polynomial


def test_paper_numerator():
    P = parse_polynomial("5*k2^2 - k1^2 - 4*k1*k2 - 3*k1 + 7*k2")
    assert P == MPoly(2, {(0, 2): 5, (2, 0): -1, (1, 1): -4, (1, 0): -3, (0, 1): 7})


def test_pochhammer_forms():
    a = parse_polynomial("poch(k1-k2-1,3)")
    b = parse_polynomial("(k1-k2-1)_3")
    k1, k2 = MPoly.var(0, 2), MPoly.var(1, 2)
    d = k1 - k2
    assert a == b == (d - 1) * d * (d + 1)


def test_constants_and_rationals():
    assert parse_polynomial("1") == MPoly.constant(1, 1)
    assert parse_polynomial("(k1+1/2)*2") == MPoly(1, {(1,): 2, (0,): 1})
    assert parse_polynomial("-k1^2", 2) == MPoly(2, {(2, 0): -1})
    assert parse_polynomial("3/4").constant_value() == Fraction(3, 4)


def test_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse_polynomial("k1 + k3", 2)
    assert err.value.pos == 5
    with pytest.raises(ParseError):
        parse_polynomial("k1 / k2")
    with pytest.raises(ParseError):
        parse_polynomial("(k1 + 2")
    with pytest.raises(ParseError):
        parse_polynomial("k1 $ 2")


def test_round_trip_text():
    P = parse_polynomial("(k1-k2-1)_3*(k1+k2+1)_3")
    assert parse_polynomial(P.to_text(), 2) == P
