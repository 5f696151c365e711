from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polyzeta.atone import (AtOneConfig, BudgetExceeded, ContractViolation, ElementarySum, bernoulli_reduce,
                            classify_term, decompose_at_one, regularized_value)
from polyzeta.exact import MPoly
from polyzeta.mzv import MZVExpr
from polyzeta.numeval import mzvexpr_numeric, series_numeric
from polyzeta.series import DivergentSeriesError, MultSeries, check_convergence, normalize_shifts, series_from_text


def test_classification_examples():
    assert classify_term(((0, 2), (0, 1))) == "E0"
    assert classify_term(((1, 1), (0, -1))) == "E1"
    assert classify_term(((2, 1), (1, 1))) == "E0"
    assert classify_term(ElementarySum.from_key(((0, 2), (0, 1)))) == "E0"


def test_elementary_sum_round_trip():
    key = ((3, 2), (0, -4), (1, 1))
    t = ElementarySum.from_key(key, Fraction(2, 3))
    assert t.numer_exps == (0, 4, 0) and t.poles[0] == (3, 2) and t.key == key


def _eval_terms(terms, ks):
    total = Fraction(0)
    for key, c in terms.items():
        v = c
        for k, (j, s) in zip(ks, key):
            v *= Fraction(k) ** (-s) if s <= 0 else Fraction(k + j) ** (-s)
        total += v
    return total


def test_bernoulli_reduce_counting():
    # sum_{k2=1}^{k1} 1 = k1 and sum_{k2=1}^{k1} k2 = k1(k1+1)/2
    assert bernoulli_reduce(((0, 2), (0, 0)), 2) == {((0, 1),): 1}
    out = bernoulli_reduce(((0, 3), (0, -1)), 2)
    for k1 in range(1, 8):
        assert _eval_terms(out, (k1,)) == Fraction(k1 * (k1 + 1), 2) / k1 ** 3


@pytest.mark.parametrize("key,t", [
    (((0, 3), (0, -2), (0, 2)), 2),
    (((2, 1), (0, -3), (1, 1)), 2),
    (((0, 2), (1, 1), (0, -1)), 3),
    (((1, 2), (0, -1), (0, -2)), 2),
])
def test_bernoulli_reduce_against_sums(key, t):
    out = bernoulli_reduce(key, t)
    p = len(key)
    for outer in [(5, 3), (4, 4), (6, 1), (3, 2)]:
        ks = outer[: p - 1]
        if t == p:
            lo, hi = 1, ks[-1]
        else:
            hi, lo = ks[t - 2], ks[t - 1]
        want = Fraction(0)
        for kt in range(lo, hi + 1):
            full = ks[: t - 1] + (kt,) + ks[t - 1:]
            want += _eval_terms({key: 1}, full)
        assert _eval_terms(out, ks) == want


def test_regularized_examples():
    assert regularized_value({((0, 2), (0, 1)): 1}) == MZVExpr(0, {(2, 1): 1, (3,): 1})
    assert regularized_value([ElementarySum.from_key(((1, 1),))]) == MZVExpr(-1)
    assert regularized_value({((0, 1),): 1}).is_zero()


def test_decompose_small():
    assert decompose_at_one(series_from_text("1", (2, 1), (0, 0))) == MZVExpr(0, {(2, 1): 1, (3,): 1})
    assert decompose_at_one(series_from_text("1", (2,), (0,))) == MZVExpr(0, {(2,): 1})
    with pytest.raises(DivergentSeriesError):
        decompose_at_one(series_from_text("1", (1,), (0,)))


def test_contract_violation_for_outer_monomial():
    with pytest.raises(ContractViolation):
        regularized_value({((0, -1), (0, 2)): 1})


def test_budget():
    with pytest.raises(BudgetExceeded):
        decompose_at_one(series_from_text("k2^4", (3, 2), (1, 1)), AtOneConfig(budget=5))


@st.composite
def convergent_series(draw):
    p = draw(st.integers(1, 3))
    while True:
        A = tuple(draw(st.integers(1, 3)) for _ in range(p))
        n = tuple(draw(st.integers(0, 2)) for _ in range(p))
        r = tuple(draw(st.integers(0, 1)) for _ in range(p))
        terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 3)] * p), st.integers(-5, 5).filter(bool),
                                     min_size=1, max_size=3))
        s = MultSeries(p, MPoly(p, terms), A, n, r)
        if check_convergence(normalize_shifts(s)):
            return s


@given(convergent_series())
def test_random_series_match_numerics(s):
    e = decompose_at_one(s)
    assert e.max_weight() <= sum(s.A) and e.max_depth() <= s.p
    assert abs(mzvexpr_numeric(e) - series_numeric(s)[0]) < 1e-25
