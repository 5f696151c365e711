"""Removal of non-positive exponents from La_s(x) when every |x_i| < 1.

The coefficients live in Q[z^{+-1}][(1 - monomial)^{-1}].  The workhorse is the
truncated power sum

    P_s(K, x) = sum_{k=1}^{K} k^s x^k
              = sum_l (x^K a_{1,l}(x) + a_{2,l}(x)) K^l / (1 - x)^{s+1},

obtained by applying theta = x d/dx to (x - x^{K+1})/(1 - x).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .bricks import LaTerm
from .exact import LaurentPoly, ZMonomial, binom, mono_inv, mono_mul, mono_pow

DenKey = Tuple[Tuple[ZMonomial, int], ...]  # sorted (monomial, power) pairs
UPoly = Tuple[Fraction, ...]

__all__ = ["RationalZCoeff", "trunc_power_sum", "tail_power_sum", "eliminate_nonpositive"]


class RationalZCoeff:
    """sum over denominators D of N_D(z) / D, D = prod (1 - mono)^k."""

    __slots__ = ("nvars", "parts")

    def __init__(self, nvars: int, parts: Optional[Dict[DenKey, LaurentPoly]] = None):
        self.nvars = nvars
        self.parts: Dict[DenKey, LaurentPoly] = {k: v for k, v in (parts or {}).items() if v}

    @classmethod
    def from_laurent(cls, lp: LaurentPoly) -> "RationalZCoeff":
        return cls(lp.nvars, {(): lp})

    @classmethod
    def one(cls, nvars: int) -> "RationalZCoeff":
        return cls.from_laurent(LaurentPoly.constant(1, nvars))

    def __bool__(self):
        return bool(self.parts)

    def __add__(self, other: "RationalZCoeff") -> "RationalZCoeff":
        out = dict(self.parts)
        for k, v in other.parts.items():
            w = out[k] + v if k in out else v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return RationalZCoeff(self.nvars, out)

    def __mul__(self, other) -> "RationalZCoeff":
        if isinstance(other, LaurentPoly):
            return RationalZCoeff(self.nvars, {k: v * other for k, v in self.parts.items()})
        if not isinstance(other, RationalZCoeff):
            c = Fraction(other)
            return RationalZCoeff(self.nvars, {k: v * c for k, v in self.parts.items()} if c else {})
        out = RationalZCoeff(self.nvars)
        for k1, v1 in self.parts.items():
            for k2, v2 in other.parts.items():
                out = out + RationalZCoeff(self.nvars, {_den_mul(k1, k2): v1 * v2})
        return out

    def over(self, mono: ZMonomial, k: int) -> "RationalZCoeff":
        """Divide by (1 - mono)^k."""
        if not any(mono):
            raise ValueError("denominator 1 - 1")
        return RationalZCoeff(self.nvars, {_den_mul(d, ((mono, k),)): v for d, v in self.parts.items()})

    def denominators(self) -> List[DenKey]:
        return sorted(self.parts)

    def evaluate(self, zvals: Sequence):
        """Exact for rational arguments, mpf otherwise."""
        if all(isinstance(x, (int, Fraction)) for x in zvals):
            pt = [Fraction(x) for x in zvals]
            total = Fraction(0)
            for den, num in self.parts.items():
                v = num.evaluate(pt)
                for mono, k in den:
                    v /= (1 - LaurentPoly(self.nvars, {mono: 1}).evaluate(pt)) ** k
                total += v
            return total
        from .numeval import laurent_numeric, monomial_value

        total = 0
        for den, num in self.parts.items():
            v = laurent_numeric(num, zvals)
            for mono, k in den:
                v /= (1 - monomial_value(mono, zvals)) ** k
            total += v
        return total

    def __repr__(self):
        parts = []
        for den, num in sorted(self.parts.items()):
            d = "".join(f"/(1-{_mono_text(m)})^{k}" for m, k in den)
            parts.append(f"({num.to_text()}){d}")
        return " + ".join(parts) or "0"


def _mono_text(m: ZMonomial) -> str:
    return "*".join(f"z{i + 1}^{e}" if e != 1 else f"z{i + 1}" for i, e in enumerate(m) if e) or "1"


def _den_mul(a: DenKey, b: DenKey) -> DenKey:
    acc: Dict[ZMonomial, int] = dict(a)
    for m, k in b:
        acc[m] = acc.get(m, 0) + k
    return tuple(sorted(acc.items()))


# -- power sums as polynomials in K with coefficients in Q[x] -------------------

def _theta(poly: UPoly) -> List[Fraction]:
    return [d * c for d, c in enumerate(poly)]


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _one_minus_x(a):
    return _padd(list(a) + [Fraction(0)], [Fraction(0)] + [-c for c in a])


def _shift_up(a):
    return [Fraction(0)] + list(a)


def _step(alpha: Dict[int, List[Fraction]], n: int, with_K: bool) -> Dict[int, List[Fraction]]:
    """Apply theta to x^K alpha(K, x)/(1-x)^n (or alpha/(1-x)^n if not with_K).

    alpha maps a power of K to a polynomial in x; the result has denominator
    (1-x)^{n+1}.
    """
    out: Dict[int, List[Fraction]] = {}

    def put(l, poly):
        out[l] = _padd(out.get(l, []), poly)

    for l, a in alpha.items():
        # (theta a)(1 - x) + n x a
        put(l, _padd(_one_minus_x(_theta(a)), [n * c for c in _shift_up(a)]))
        if with_K:
            put(l + 1, _one_minus_x(a))  # K a (1 - x)
    return {l: _trim(p) for l, p in out.items() if any(p)}


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


@lru_cache(maxsize=None)
def trunc_power_sum(s: int) -> Tuple[Dict[int, UPoly], Dict[int, UPoly]]:
    """(a1, a2): powers of K -> polynomials in x with
    P_s(K, x) = sum_l (x^K a1[l] + a2[l]) K^l / (1 - x)^{s+1}."""
    if s < 0:
        raise ValueError("s must be >= 0")
    a1 = {0: (Fraction(0), Fraction(-1))}
    a2 = {0: (Fraction(0), Fraction(1))}
    n = 1
    for _ in range(s):
        a1 = _step(a1, n, True)
        a2 = _step(a2, n, False)
        n += 1
    return a1, a2


@lru_cache(maxsize=None)
def tail_power_sum(s: int) -> Dict[int, UPoly]:
    """q with sum_{k >= L} k^s x^k = x^L sum_j q[j] L^j / (1 - x)^{s+1}."""
    if s < 0:
        raise ValueError("s must be >= 0")
    q = {0: (Fraction(1),)}
    n = 1
    for _ in range(s):
        q = _step(q, n, True)
        n += 1
    return q


def _upoly_at(poly: UPoly, mono: ZMonomial, nvars: int) -> LaurentPoly:
    return LaurentPoly(nvars, {mono_pow(mono, d): c for d, c in enumerate(poly) if c})


# -- elimination -------------------------------------------------------------

Out = Dict[Tuple[Tuple[int, ...], Tuple[ZMonomial, ...]], RationalZCoeff]


def _put(out: Out, s, args, coeff: RationalZCoeff):
    key = (tuple(s), tuple(args))
    cur = out.get(key)
    new = coeff if cur is None else cur + coeff
    if new:
        out[key] = new
    else:
        out.pop(key, None)


def _one_step(s: Tuple[int, ...], args: Tuple[ZMonomial, ...], nv: int) -> Out:
    p = len(s)
    q = next(i for i, x in enumerate(s) if x <= 0)  # 0-based position q = paper's q
    sig = -s[q]
    x = args[q]
    base = RationalZCoeff.one(nv).over(x, sig + 1)
    out: Out = {}
    if q == 0:
        for jj, poly in tail_power_sum(sig).items():
            c = base * _upoly_at(poly, x, nv)
            if p == 1:
                _put(out, (), (), c * LaurentPoly(nv, {x: 1}))
            else:
                _put(out, (s[1] - jj,) + s[2:], (mono_mul(x, args[1]),) + args[2:], c)
        return out
    a1, a2 = trunc_power_sum(sig)
    head_s, head_a = s[: q - 1], args[: q - 1]
    tail_s, tail_a = s[q + 1:], args[q + 1:]
    merged = mono_mul(args[q - 1], x)
    for l, poly in a1.items():
        _put(out, head_s + (s[q - 1] - l,) + tail_s, head_a + (merged,) + tail_a,
             base * _upoly_at(poly, x, nv))
    for l, poly in a2.items():
        _put(out, head_s + (s[q - 1] - l,) + tail_s, head_a + (args[q - 1],) + tail_a,
             base * _upoly_at(poly, x, nv))
    if q == p - 1:
        return out
    # subtract P_sig(k_{q+2} - 1, x), expanding (k - 1)^l
    pre_s, pre_a = s[:q], args[:q]
    nxt = s[q + 1]
    after_s, after_a = s[q + 2:], args[q + 2:]
    inv_x = LaurentPoly(nv, {mono_inv(x): 1})
    for l, poly in a1.items():
        c = base * (_upoly_at(poly, x, nv) * inv_x)
        for m in range(l + 1):
            w = -binom(l, m) * (-1) ** (l - m)
            _put(out, pre_s + (nxt - m,) + after_s, pre_a + (mono_mul(x, args[q + 1]),) + after_a, c * w)
    for l, poly in a2.items():
        c = base * _upoly_at(poly, x, nv)
        for m in range(l + 1):
            w = -binom(l, m) * (-1) ** (l - m)
            _put(out, pre_s + (nxt - m,) + after_s, pre_a + (args[q + 1],) + after_a, c * w)
    return out


def eliminate_nonpositive(t: LaTerm) -> List[Tuple[RationalZCoeff, LaTerm]]:
    """Rewrite La_s(x) with some s_i <= 0 using only exponents >= 1.

    Valid when every argument has modulus < 1.  A depth-0 LaTerm stands for 1.
    """
    s, args = tuple(t.s), tuple(tuple(a) for a in t.args)
    if not s:
        raise ValueError("depth must be >= 1")
    if all(x >= 1 for x in s):
        raise ValueError("all exponents are already >= 1")
    nv = len(args[0])
    if any(not any(a) for a in args):
        raise ValueError("argument 1 has modulus 1")
    done: Out = {}
    todo: Out = {(s, args): RationalZCoeff.one(nv)}
    while todo:
        nxt: Out = {}
        for (s1, a1), c in todo.items():
            if all(x >= 1 for x in s1):
                _put(done, s1, a1, c)
                continue
            for (s2, a2), c2 in _one_step(s1, a1, nv).items():
                _put(nxt, s2, a2, c * c2)
        todo = nxt
    return [(c, LaTerm(k[0], k[1])) for k, c in sorted(done.items(), key=lambda kv: (len(kv[0][0]), kv[0]))]
