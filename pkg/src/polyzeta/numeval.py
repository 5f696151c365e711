"""Independent high-precision numerics (mpmath).

Nothing here calls the symbolic engine.  Infinite sums at z = 1 are closed by
asymptotic expansion: a tail sum_{m >= n} m^{-e} has the Euler-Maclaurin
expansion

    n^{1-e}/(e-1) + n^{-e}/2 + sum_k B_{2k}/(2k)! (e)_{2k-1} n^{1-e-2k},

and products of such expansions with rational summands stay power series in
1/n.  Nested sums are then evaluated exactly below a cutoff M by backward
recursion from the asymptotic value at M.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

import mpmath
from mpmath import mpf

from .exact import bernoulli_number, binom

DEFAULT_PREC = 128
GUARD = 48

__all__ = [
    "DEFAULT_PREC", "to_mpf", "hurwitz_tail", "mzv_numeric", "series_numeric",
    "polylog_numeric", "brick_numeric", "laurent_numeric", "decomposition_numeric",
    "mzvexpr_numeric", "monomial_value", "nested_power_tail",
]


def to_mpf(x) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


# -- asymptotic series in 1/n: dict exponent e -> coefficient of n^{-e} -----

Series = Dict[int, mpf]


def _ser_mul(a: Series, b: Series, cap: int) -> Series:
    out: Series = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            if e <= cap:
                out[e] = out.get(e, 0) + c1 * c2
    return out


def _ser_shift(a: Series, s: int) -> Series:
    return {e + s: c for e, c in a.items()}


@lru_cache(maxsize=None)
def _em_coeffs(e: int, cap_extra: int) -> Tuple[Tuple[int, Fraction], ...]:
    """sum_{m >= n} m^{-e} as exact pairs (exponent, coefficient)."""
    if e < 2:
        raise ValueError("tail sum of m^-e needs e >= 2")
    out = [(e - 1, Fraction(1, e - 1)), (e, Fraction(1, 2))]
    k = 1
    while 2 * k - 1 <= cap_extra:
        poch = 1
        for i in range(2 * k - 1):
            poch *= e + i
        out.append((e + 2 * k - 1, bernoulli_number(2 * k) * poch / math.factorial(2 * k)))
        k += 1
    return tuple(out)


def _ser_tail(a: Series, cap: int, strict: bool) -> Series:
    out: Series = {}
    for e, c in a.items():
        if not c:
            continue
        for e2, b in _em_coeffs(e, cap - e + 2):
            if e2 <= cap:
                out[e2] = out.get(e2, 0) + c * to_mpf(b)
        if strict:
            out[e] = out.get(e, 0) - c
    return out


def _ser_eval(a: Series, n: int) -> Tuple[mpf, mpf]:
    x = mpf(1) / n
    total = mpf(0)
    last = mpf(0)
    top = max(a) if a else 0
    for e, c in a.items():
        v = c * x ** e
        total += v
        if e >= top - 3:
            last += abs(v)
    return total, last


def _cutoffs(prec: int, extra_radius: int = 0) -> Tuple[int, int]:
    M = max(40, prec // 2 + 16, 8 * extra_radius + 40)
    L = prec // 3 + 24
    return M, L


# -- Hurwitz tails and MZVs ---------------------------------------------------

def hurwitz_tail(s: int, K: int, prec: int = DEFAULT_PREC) -> mpf:
    """sum_{k >= K} k^{-s} by direct summation plus Euler-Maclaurin."""
    if s < 2:
        raise ValueError("hurwitz_tail needs s >= 2")
    if K < 1:
        raise ValueError("K must be >= 1")
    with mpmath.workprec(prec + GUARD):
        M, L = _cutoffs(prec)
        M = max(M, K)
        head = mpmath.fsum(mpf(k) ** (-s) for k in range(K, M))
        tail, _ = _ser_eval(_ser_tail({s: mpf(1)}, s + L, strict=False), M)
        out = head + tail
    return +out


def mzv_numeric(s: Sequence[int], prec: int = DEFAULT_PREC, with_error: bool = False):
    """zeta(s_1, ..., s_d) = sum_{k_1 > ... > k_d >= 1} prod k_i^{-s_i}."""
    s = tuple(int(x) for x in s)
    if not s:
        return mpf(1)
    if s[0] < 2 or any(x < 1 for x in s):
        raise ValueError(f"divergent composition {s}")
    with mpmath.workprec(prec + GUARD):
        M, L = _cutoffs(prec)
        vals = None
        ser: Series = {}
        err = mpf(0)
        for level, si in enumerate(s):
            cap = sum(s[: level + 1]) - level + L
            if level == 0:
                ser = _ser_tail({si: mpf(1)}, cap, strict=True)
            else:
                ser = _ser_tail(_ser_shift(ser, si), cap, strict=True)
            vM, eM = _ser_eval(ser, M)
            err += eM
            # T(n) = sum_{m > n} m^{-si} T_prev(m), for n = M down to 0
            new = [mpf(0)] * (M + 1)
            new[M] = vM
            for n in range(M - 1, -1, -1):
                w = mpf(n + 1) ** (-si)
                new[n] = new[n + 1] + (w if vals is None else w * vals[n + 1])
            vals = new
        out = +vals[0]
    return (out, err) if with_error else out


def nested_power_tail(b: Sequence[int], cutoff: int, prec: int = DEFAULT_PREC) -> mpf:
    """sum over k_1 >= ... >= k_p >= 1 with k_1 > cutoff of prod k_i^{-b_i}.

    Used as a rigorous majorant of series tails: every summand is positive.
    """
    with mpmath.workprec(prec + GUARD):
        M, L = _cutoffs(prec)
        M = max(M, cutoff + 1)
        gs = [lambda m, bi=bi: mpf(m) ** (-bi) for bi in b]
        sers = [{bi: mpf(1)} for bi in b]
        full = _nested_nonstrict(gs, sers, M, L, None)
        part = _nested_nonstrict(gs, sers, M, L, cutoff)
        return +(full - part)


def _nested_nonstrict(gs, sers, M: int, L: int, cutoff: Optional[int] = None) -> mpf:
    """sum_{k_1 >= ... >= k_p >= 1} prod g_i(k_i), g_i ~ sers[i] at infinity.

    With ``cutoff`` the outer index is restricted to k_1 <= cutoff (no closure).
    """
    vals = None
    ser: Series = {}
    hi = M if cutoff is None else cutoff
    for level, (g, sg) in enumerate(zip(gs, sers)):
        if cutoff is None:
            top = min(sg) + (min(ser) if level else 0) + L
            prod = sg if level == 0 else _ser_mul(sg, ser, top)
            if any(e < 2 for e, c in prod.items() if c):
                raise ValueError("sum does not converge")
            ser = _ser_tail(prod, top, strict=False)
            start, _ = _ser_eval(ser, hi + 1)
        else:
            start = mpf(0)
        new = [mpf(0)] * (hi + 2)
        new[hi + 1] = start
        for n in range(hi, 0, -1):
            w = g(n)
            new[n] = new[n + 1] + (w if vals is None else w * vals[n])
        vals = new
    return vals[1]


# -- multiple series ----------------------------------------------------------

def monomial_value(mono: Sequence[int], zvals: Sequence) -> mpf:
    v = mpf(1)
    for e, z in zip(mono, zvals):
        if e:
            v *= to_mpf(z) ** e
    return v


@lru_cache(maxsize=None)
def _inv_poch_expansion(n: int, A: int, L: int) -> Tuple[Fraction, ...]:
    """prod_{j=1}^{n} (1 + j/m)^{-A} as coefficients of m^{-r}, r < L."""
    out = [Fraction(1)] + [Fraction(0)] * (L - 1)
    for j in range(1, n + 1):
        f = [Fraction(binom(-A, r)) * j ** r for r in range(L)]
        new = [Fraction(0)] * L
        for a, x in enumerate(out):
            if x:
                for b in range(L - a):
                    new[a + b] += x * f[b]
        out = new
    return tuple(out)


def _rational_g(Q: Dict[int, Fraction], n: int, A: int, x, L: int):
    """g(m) = Q(m) x^m / (m)_{n+1}^A with its expansion at infinity (x = 1 only)."""
    Qm = [(a, to_mpf(c)) for a, c in Q.items()]

    def g(m):
        mm = mpf(m)
        num = mpmath.fsum(c * mm ** a for a, c in Qm)
        den = mpf(1)
        for j in range(n + 1):
            den *= (mm + j)
        out = num / den ** A
        if x is not None:
            out *= x ** m
        return out

    ser: Series = {}
    if x is None:
        base = A * (n + 1)
        exp = _inv_poch_expansion(n, A, L)
        for a, c in Q.items():
            for r, d in enumerate(exp):
                if d:
                    e = base - a + r
                    ser[e] = ser.get(e, 0) + to_mpf(c * d)
    return g, ser


def series_numeric(series, zvals: Optional[Sequence] = None, cutoff: Optional[int] = None,
                   prec: int = DEFAULT_PREC) -> Tuple[mpf, mpf]:
    """Value of a series at the argument point, with an error estimate.

    At z = 1 (every argument monomial evaluates to 1) the sum is closed by
    asymptotic expansion; ``cutoff`` then restricts to k_1 <= cutoff instead.
    Otherwise the outer argument must satisfy |1/z_1| < 1 and the partial sum
    up to ``cutoff`` (chosen from the geometric rate when None) is returned.
    """
    if not series.is_normalized:
        from .series import normalize_shifts
        series = normalize_shifts(series)
    p = series.p
    with mpmath.workprec(prec + GUARD):
        if zvals is None:
            xs = [mpf(1)] * p
        else:
            xs = [1 / monomial_value(a, zvals) for a in series.args]
        at_one = all(x == 1 for x in xs)
        if at_one:
            from .series import check_convergence
            if not check_convergence(series):
                raise ValueError("series diverges at z = 1")
            M, L = _cutoffs(prec, max(series.n))
            value = _series_at_one(series, M, L, cutoff)
            if cutoff is None:
                ref = _series_at_one(series, M // 2 + 8, L, None)
                err = abs(value - ref) + mpf(2) ** (-prec)
            else:
                err = abs(_series_at_one(series, M, L, None) - value)
            return +value, +err
        rho = abs(xs[0])
        for x in xs[1:]:
            rho *= max(1, abs(x))
        if rho >= 1:
            raise ValueError("outer argument must have modulus > 1")
        W = int(sum(max(0, series.P.degree(i)) for i in range(p))) + p
        K = cutoff or _geometric_cutoff(rho, prec, W)
        value = _series_partial(series, xs, K)
        step = max(4, K // 8)
        shorter = _series_partial(series, xs, K - step)
        # geometric tail: tail(K) ~ |S(K) - S(K - step)| * rho^step / (1 - rho^step)
        r = rho ** step
        err = abs(value - shorter) * r / (1 - r) + mpf(2) ** (-prec)
        return +value, +err


def _split_prefix(poly_terms: Dict[Tuple[int, ...], Fraction]) -> Dict[int, Dict[Tuple[int, ...], Fraction]]:
    out: Dict[int, Dict[Tuple[int, ...], Fraction]] = {}
    for e, c in poly_terms.items():
        out.setdefault(e[0], {})[e[1:]] = c
    return out


def _series_at_one(series, M: int, L: int, cutoff: Optional[int]) -> mpf:
    p = series.p

    def rec(level: int, vals, ser: Series, terms) -> mpf:
        n, A = series.n[level], series.A[level]
        hi = M if cutoff is None else cutoff
        if level == p - 1:
            groups = [({e[0]: c for e, c in terms.items()}, None)]
        else:
            groups = [({a: Fraction(1)}, sub) for a, sub in sorted(_split_prefix(terms).items())]
        total = mpf(0)
        for Q, sub in groups:
            g, sg = _rational_g(Q, n, A, None, L)
            if cutoff is None:
                top = min(sg) + (min(ser) if level else 0) + L
                prod = sg if level == 0 else _ser_mul(sg, ser, top)
                if any(e < 2 for e, c in prod.items() if abs(c) > 0):
                    raise ValueError("term does not converge at z = 1")
                new_ser = _ser_tail(prod, top, strict=False)
                start, _ = _ser_eval(new_ser, hi + 1)
            else:
                new_ser, start = {}, mpf(0)
            new = [mpf(0)] * (hi + 2)
            new[hi + 1] = start
            for k in range(hi, 0, -1):
                w = g(k)
                new[k] = new[k + 1] + (w if vals is None else w * vals[k])
            if level == p - 1:
                total += new[1]
            else:
                total += rec(level + 1, new, new_ser, sub)
        return total

    return rec(0, None, {}, dict(series.P.terms))


def _geometric_cutoff(rho, prec: int, W: int) -> int:
    lr = -mpmath.log(rho)
    K = int((prec + 20) * math.log(2) / lr) + 10
    for _ in range(6):
        K = int(((prec + 20) * math.log(2) + W * math.log(max(K, 2))) / lr) + 10
    return K


def _series_partial(series, xs, K: int) -> mpf:
    """Partial sum over K >= k_1 >= ... >= k_p >= 1 with weights x_i^{k_i}."""
    p = series.p

    def rec(level: int, vals, terms) -> mpf:
        n, A = series.n[level], series.A[level]
        if level == p - 1:
            groups = [({e[0]: c for e, c in terms.items()}, None)]
        else:
            groups = [({a: Fraction(1)}, sub) for a, sub in sorted(_split_prefix(terms).items())]
        total = mpf(0)
        for Q, sub in groups:
            g, _ = _rational_g(Q, n, A, xs[level], 1)
            new = [mpf(0)] * (K + 2)
            for k in range(K, 0, -1):
                w = g(k)
                new[k] = new[k + 1] + (w if vals is None else w * vals[k])
            total += new[1] if level == p - 1 else rec(level + 1, new, sub)
        return total

    return rec(0, None, dict(series.P.terms))


# -- polylogarithms, bricks, decompositions -----------------------------------

def polylog_numeric(s: Sequence[int], argvals: Sequence, strict: bool = False,
                    prec: int = DEFAULT_PREC, cutoff: Optional[int] = None) -> mpf:
    """La_s(x) (weakly decreasing indices) or Li_s(x) (strict) at numeric arguments."""
    s = tuple(s)
    if not s:
        return mpf(1)
    with mpmath.workprec(prec + GUARD):
        xs = [to_mpf(x) if not isinstance(x, (mpmath.mpc, complex)) else mpmath.mpc(x) for x in argvals]
        rho = abs(xs[0])
        for x in xs[1:]:
            rho *= max(1, abs(x))
        if rho >= 1:
            raise ValueError("outer argument modulus must be < 1")
        K = cutoff or _geometric_cutoff(rho, prec, sum(abs(x) for x in s) + len(s))
        d = len(s)
        vals = None
        for level in range(d - 1, -1, -1):
            x, si = xs[level], s[level]
            new = [mpf(0)] * (K + 1)
            acc = mpf(0)
            xp = mpf(1)
            for k in range(1, K + 1):
                xp *= x
                w = xp * (mpf(k) ** (-si))
                inner = 1 if vals is None else (vals[k - 1] if strict else vals[k])
                acc += w * inner
                new[k] = acc
            vals = new
        return +vals[K]


def brick_numeric(s, m, j, zvals_args: Sequence, prec: int = DEFAULT_PREC,
                  cutoff: Optional[int] = None) -> mpf:
    """B_N[s, m, j | z] by nested prefix sums; zvals_args are the numeric z_i."""
    N = len(s)
    if N == 0:
        return mpf(1)
    with mpmath.workprec(prec + GUARD):
        zs = [to_mpf(z) for z in zvals_args]
        rho = 1 / abs(zs[0])
        for z in zs[1:]:
            rho *= max(1, 1 / abs(z))
        if rho >= 1:
            raise ValueError("need |z_1| > 1 and |z_i| >= 1")
        K = cutoff or _geometric_cutoff(rho, prec, sum(abs(x) for x in s) + N + sum(m) + 2)
        tops = [K]
        for i in range(1, N):
            tops.append(tops[-1] + m[i])
        # F_{i}(k) = sum_{k_i = 1}^{k + m_i} t_i(k_i) F_{i+1}(k_i); prefix sums C_i
        F_next = None
        for i in range(N - 1, -1, -1):
            top = tops[i]
            C = [mpf(0)] * (top + 1)
            acc = mpf(0)
            zi = zs[i]
            for k in range(1, top + 1):
                t = zi ** (-k) * mpf(k + j[i]) ** (-s[i])
                acc += t * (1 if F_next is None else F_next[k])
                C[k] = acc
            if i == 0:
                return +C[K]
            mi = m[i]
            prev_top = tops[i - 1]
            F_next = [C[min(k + mi, top)] for k in range(prev_top + 1)]


def laurent_numeric(lp, zvals: Sequence) -> mpf:
    return mpmath.fsum(to_mpf(c) * monomial_value(e, zvals) for e, c in lp.terms.items())


def decomposition_numeric(decomp, zvals: Sequence, prec: int = DEFAULT_PREC) -> mpf:
    """Evaluate sum coeff(z) * La_s(args(z)) for a Decomposition."""
    with mpmath.workprec(prec + GUARD):
        total = mpf(0)
        for (s, args), coeff in decomp.terms.items():
            c = laurent_numeric(coeff, zvals)
            if not s:
                total += c
                continue
            xs = [monomial_value(a, zvals) for a in args]
            total += c * polylog_numeric(s, xs, prec=prec)
        return +total


def mzvexpr_numeric(expr, prec: int = DEFAULT_PREC) -> mpf:
    with mpmath.workprec(prec + GUARD):
        total = to_mpf(expr.constant)
        for comp, c in expr.terms.items():
            total += to_mpf(c) * mzv_numeric(comp, prec)
        return +total
