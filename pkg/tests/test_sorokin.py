from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from polyzeta.atone import decompose_at_one
from polyzeta.exact import MPoly
from polyzeta.numeval import mzvexpr_numeric, series_numeric, to_mpf
from polyzeta.sorokin import QuadratureConfig, SorokinIntegral, quadrature_check, series_from_integral


def test_s3_series_shape():
    pref, s = series_from_integral(SorokinIntegral.S3(0))
    assert pref.coeff == 1 and pref.zpow == -1
    assert s.A == (2, 1) and s.n == (0, 0) and s.P == MPoly.constant(1, 2)
    assert decompose_at_one(s).terms == {(2, 1): 1, (3,): 1}


def test_s3_general_n():
    pref, s = series_from_integral(SorokinIntegral.S3(2))
    assert pref.coeff == Fraction(2 ** 3, 2 * 2) and pref.zpow == -5
    assert s.n == (2, 2) and s.r == (2, 2)
    k1, k2 = MPoly.var(0, 2), MPoly.var(1, 2)
    d = k1 - k2
    assert s.P == (d + 1) * (d + 2) * k2 * (k2 + 1)


def test_depth_one_log():
    I = SorokinIntegral(1, 1, (0,), (0,), (0,), (1,))
    pref, s = series_from_integral(I)
    assert pref.zpow == 0 and pref.coeff == 1
    assert abs(series_numeric(s, [2])[0] - mpmath.log(2)) < 1e-35
    q = quadrature_check(I, 2)
    assert abs(q.value - mpmath.log(2)) < 1e-10


def test_s3_quadrature_gauss():
    q = quadrature_check(SorokinIntegral.S3(0), 1, QuadratureConfig(nodes=64))
    assert q.method == "gauss"
    assert abs(q.value - 2 * mpmath.zeta(3)) < 1e-6


def test_s3_quadrature_montecarlo():
    q = quadrature_check(SorokinIntegral.S3(0), 1, QuadratureConfig(method="montecarlo", samples=400_000))
    assert abs(q.value - 2 * mpmath.zeta(3)) < max(1e-2, q.error)


@pytest.mark.parametrize("I,z", [
    (SorokinIntegral.S3(1), Fraction(3, 2)),
    (SorokinIntegral(3, 2, (1, 0), (0, 2), (1, 1), (1, 3)), Fraction(10)),
    (SorokinIntegral(2, 2, (0, 1), (1, 0), (0, 1), (1, 2)), Fraction(2)),
])
def test_integral_matches_series(I, z):
    pref, s = series_from_integral(I)
    want = series_numeric(s, [z])[0] * to_mpf(pref.value(z))
    q = quadrature_check(I, z)
    assert abs(q.value - want) < max(1e-8, 3 * q.error)


def test_depth_five_value_includes_diagonal():
    # d = (3, 5): the series is sum_{k1 >= k2} 1/(k1^3 k2^2) = zeta(3,2) + zeta(5)
    I = SorokinIntegral(5, 2, (0, 0), (0, 0), (0, 0), (3, 5))
    pref, s = series_from_integral(I)
    e = decompose_at_one(s)
    assert pref.coeff == 1 and pref.zpow == -1
    assert e.terms == {(3, 2): 1, (5,): 1} and not e.constant
    value = mzvexpr_numeric(e)
    assert abs(value - mzv_numeric_32()) > 1
    q = quadrature_check(I, 1, QuadratureConfig(method="montecarlo", samples=300_000))
    assert abs(q.value - value) < max(1e-2, 3 * q.error)


def mzv_numeric_32():
    from polyzeta.numeval import mzv_numeric

    return mzv_numeric((3, 2))


def test_invalid_integrals():
    with pytest.raises(ValueError):
        SorokinIntegral(3, 2, (0, 0), (0, 0), (0, 0), (3, 3))
    with pytest.raises(ValueError):
        SorokinIntegral(3, 2, (0,), (0, 0), (0, 0), (2, 3))
