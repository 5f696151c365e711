"""Decomposition at generic arguments (|z_1| > 1) into multiple polylogarithms.

Each partial-fraction term of the series is a brick with m = 0: entire
factors k^e become exponents -e with shift 0.  Optionally the resulting
non-positive exponents are removed, which needs every La argument of
modulus < 1 and yields coefficients with (1 - monomial)^{-1} factors.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional

from .bricks import CONSTANT, Brick, Decomposition, LaKey, LaTerm, decompose_brick
from .negexp import RationalZCoeff, eliminate_nonpositive
from .pfd import pfd_terms
from .series import MultSeries, normalize_shifts

__all__ = ["decompose_generic", "RationalDecomposition", "rational_decomposition_numeric"]

RationalDecomposition = Dict[LaKey, RationalZCoeff]


def decompose_generic(s: MultSeries, eliminate: bool = False, memo: Optional[dict] = None):
    """Series as sum coeff * La_s(args); a Decomposition, or with ``eliminate``
    a dict LaKey -> RationalZCoeff whose La terms have exponents >= 1."""
    s = normalize_shifts(s)
    nv = s.nbase
    memo = {} if memo is None else memo
    out = Decomposition(nv)
    for key, c in pfd_terms(s).items():
        b = Brick(tuple(x for _, x in key), (0,) * s.p, tuple(j for j, _ in key), s.args)
        d = decompose_brick(b, memo, nv)
        out.add_scaled(d, (0,) * nv, Fraction(c))
    if not eliminate:
        return out
    res: RationalDecomposition = {}
    for (sv, args), coeff in out.items():
        pieces = [(RationalZCoeff.from_laurent(coeff), LaTerm(sv, args))]
        if sv and any(x <= 0 for x in sv):
            pieces = [(RationalZCoeff.from_laurent(coeff) * c, t) for c, t in eliminate_nonpositive(LaTerm(sv, args))]
        for c, t in pieces:
            k = t.key if t.s else CONSTANT
            cur = res.get(k)
            new = c if cur is None else cur + c
            if new:
                res[k] = new
            else:
                res.pop(k, None)
    return res


def rational_decomposition_numeric(d: RationalDecomposition, zvals, prec: int = 128):
    import mpmath

    from .numeval import GUARD, monomial_value, polylog_numeric, to_mpf

    with mpmath.workprec(prec + GUARD):
        total = mpmath.mpf(0)
        for (sv, args), c in d.items():
            v = to_mpf(c.evaluate(zvals))
            if sv:
                v *= polylog_numeric(sv, [monomial_value(a, zvals) for a in args], prec=prec)
            total += v
        return +total
