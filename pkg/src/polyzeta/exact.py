"""Exact arithmetic layer.

Rationals are :class:`fractions.Fraction`.  Sparse polynomials map exponent
tuples to nonzero Fractions; :class:`MPoly` has non-negative exponents over
the summation variables X_1..X_p, :class:`LaurentPoly` allows negative
exponents over the argument variables z_1..z_q.  Univariate polynomials are
plain coefficient lists, lowest degree first.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Dict, Iterable, List, Sequence, Tuple, Union

Rat = Fraction
Exps = Tuple[int, ...]
ZMonomial = Tuple[int, ...]
Number = Union[int, Fraction]

__all__ = [
    "Rat", "ZMonomial", "MPoly", "LaurentPoly",
    "mono_mul", "mono_inv", "mono_pow", "mono_one", "mono_var",
    "bernoulli_number", "bernoulli_polynomial", "power_sum",
    "pfd_univariate", "lcm_upto", "binom",
    "upoly_mul", "upoly_add", "upoly_scale", "upoly_eval", "upoly_taylor_shift",
    "upoly_divmod", "poch_upoly",
]


def binom(n: int, k: int) -> int:
    """Binomial coefficient valid for negative upper index."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k) if k <= n else 0
    # C(-m, k) = (-1)^k C(m+k-1, k)
    return (-1) ** k * comb(-n + k - 1, k)


def lcm_upto(n: int) -> int:
    """d_n = lcm(1, ..., n), with d_0 = 1."""
    out = 1
    for k in range(2, n + 1):
        out = out * k // gcd(out, k)
    return out


# -- monomials ---------------------------------------------------------------

def mono_one(nvars: int) -> ZMonomial:
    return (0,) * nvars


def mono_var(i: int, nvars: int) -> ZMonomial:
    return tuple(1 if k == i else 0 for k in range(nvars))


def mono_mul(a: ZMonomial, b: ZMonomial) -> ZMonomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_inv(a: ZMonomial) -> ZMonomial:
    return tuple(-x for x in a)


def mono_pow(a: ZMonomial, k: int) -> ZMonomial:
    return tuple(k * x for x in a)


# -- sparse polynomials ------------------------------------------------------

class _Sparse:
    """Map exponent-tuple -> nonzero Fraction over a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Exps, Number] | None = None):
        self.nvars = nvars
        t: Dict[Exps, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != nvars:
                        raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                    t[tuple(e)] = Fraction(c)
        self.terms = t

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exps, Fraction]):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, c: Number, nvars: int):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Exps, c: Number = 1):
        return cls(len(exps), {tuple(exps): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = type(self).constant(other, self.nvars)
        if not isinstance(other, _Sparse):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other):
        if isinstance(other, _Sparse):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return type(self).constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return type(self)._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return type(self)._raw(self.nvars, {})
            return type(self)._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        t: Dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return type(self)._raw(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = type(self).constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_monomial(self, exps: Exps, c: Number = 1):
        c = Fraction(c)
        if not c:
            return type(self)._raw(self.nvars, {})
        return type(self)._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in self.terms.items()},
        )

    def degree(self, i: int) -> float:
        """Degree in variable i; -inf for the zero polynomial."""
        if not self.terms:
            return float("-inf")
        return max(e[i] for e in self.terms)

    def min_degree(self, i: int) -> float:
        if not self.terms:
            return float("inf")
        return min(e[i] for e in self.terms)

    def evaluate(self, point: Sequence):
        """Evaluate at a point; works for Fractions, ints, floats or mpf."""
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def sorted_items(self) -> List[Tuple[Exps, Fraction]]:
        return sorted(self.terms.items())

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()})"

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [self._default_name(i) for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}" if k > 0 else f"{name}^({k})")
            mono = "*".join(factors)
            if not mono:
                parts.append(_fmt_rat(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{_fmt_rat(c)}*{mono}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def _default_name(self, i: int) -> str:
        return f"x{i + 1}"


def _fmt_rat(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"({c.numerator}/{c.denominator})"


class MPoly(_Sparse):
    """Polynomial in X_1..X_p with non-negative exponents."""

    __slots__ = ()

    @classmethod
    def var(cls, i: int, nvars: int) -> "MPoly":
        return cls(nvars, {mono_var(i, nvars): 1})

    def _default_name(self, i: int) -> str:
        return f"k{i + 1}"

    def substitute(self, i: int, value: "MPoly") -> "MPoly":
        """Replace X_i by a polynomial in the same variables."""
        out = MPoly(self.nvars)
        powers: Dict[int, MPoly] = {}
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value ** k
            rest = e[:i] + (0,) + e[i + 1:]
            out = out + powers[k].mul_monomial(rest, c)
        return out

    def coefficients_in(self, i: int) -> Dict[int, "MPoly"]:
        """Split by the exponent of X_i; values have X_i removed."""
        out: Dict[int, Dict[Exps, Fraction]] = {}
        for e, c in self.terms.items():
            out.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: MPoly._raw(self.nvars, t) for k, t in out.items()}

    def univariate(self, i: int) -> List[Fraction]:
        """Coefficient list in X_i; requires no other variable to appear."""
        deg = self.degree(i)
        if deg == float("-inf"):
            return []
        out = [Fraction(0)] * (int(deg) + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial is not univariate")
            out[e[i]] = c
        return out


class LaurentPoly(_Sparse):
    """Laurent polynomial over argument variables z_1..z_q."""

    __slots__ = ()

    def _default_name(self, i: int) -> str:
        return f"z{i + 1}"

    def min_max_exponent(self, i: int) -> Tuple[int, int]:
        vals = [e[i] for e in self.terms]
        return (min(vals), max(vals)) if vals else (0, 0)

    def substitute_ones(self, keep: Iterable[int]) -> "LaurentPoly":
        """Set every variable outside ``keep`` to 1 (exponents dropped)."""
        keep = set(keep)
        t: Dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            e2 = tuple(k if i in keep else 0 for i, k in enumerate(e))
            v = t.get(e2, 0) + c
            if v:
                t[e2] = v
            else:
                t.pop(e2, None)
        return LaurentPoly._raw(self.nvars, t)

    def value_at_ones(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))


# -- univariate polynomials as coefficient lists -----------------------------

UPoly = List[Fraction]


def _trim(p: UPoly) -> UPoly:
    while p and not p[-1]:
        p.pop()
    return p


def upoly_add(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def upoly_scale(a: UPoly, c: Number) -> UPoly:
    return _trim([x * c for x in a])


def upoly_mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def upoly_eval(a: UPoly, x):
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


def upoly_taylor_shift(a: UPoly, h: Number) -> UPoly:
    """Coefficients of a(X + h)."""
    out = [Fraction(0)] * len(a)
    for k, c in enumerate(a):
        if c:
            for b in range(k + 1):
                out[b] += c * comb(k, b) * Fraction(h) ** (k - b)
    return _trim(out)


def upoly_divmod(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        if c:
            q[k] = c
            for i, y in enumerate(b):
                a[k + i] -= c * y
    return _trim(q), _trim(a[: len(b) - 1])


def poch_upoly(shift: Number, length: int) -> UPoly:
    """(X + shift)_length = (X+shift)(X+shift+1)...(X+shift+length-1)."""
    out: UPoly = [Fraction(1)]
    for i in range(length):
        out = upoly_mul(out, [Fraction(shift) + i, Fraction(1)])
    return out


# -- Bernoulli / Faulhaber ---------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2 (so that B_n(X+1) - B_n(X) = n X^{n-1})."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    # sum_{k<n} C(n+1, k) B_k + (n+1) B_n = 0
    s = sum((comb(n + 1, k) * bernoulli_number(k) for k in range(n)), Fraction(0))
    return -s / (n + 1)


@lru_cache(maxsize=None)
def _bernoulli_poly_cached(s: int) -> Tuple[Fraction, ...]:
    return tuple(comb(s, k) * bernoulli_number(s - k) for k in range(s + 1))


def bernoulli_polynomial(s: int) -> UPoly:
    """B_s(X) as a coefficient list, lowest degree first."""
    if s < 0:
        raise ValueError("s must be >= 0")
    return list(_bernoulli_poly_cached(s))


def faulhaber(s: int) -> UPoly:
    """F(X) = B_{s+1}(X)/(s+1), so that sum_{k=a}^{b} k^s = F(b+1) - F(a)."""
    return upoly_scale(bernoulli_polynomial(s + 1), Fraction(1, s + 1))


def power_sum(s: int, a, b):
    """sum_{k=a}^{b} k^s.

    With integer bounds the result is a Fraction (0 for b = a - 1).  If a or b
    is an :class:`MPoly` the result is the polynomial identity in the bounds.
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    F = faulhaber(s)
    if isinstance(a, MPoly) or isinstance(b, MPoly):
        nv = a.nvars if isinstance(a, MPoly) else b.nvars
        A = a if isinstance(a, MPoly) else MPoly.constant(a, nv)
        B = b if isinstance(b, MPoly) else MPoly.constant(b, nv)
        return upoly_eval(F, B + 1) - upoly_eval(F, A)
    if b < a - 1:
        raise ValueError("need b >= a - 1")
    return upoly_eval(F, Fraction(b + 1)) - upoly_eval(F, Fraction(a))


# -- two-factor partial fractions --------------------------------------------

def pfd_univariate(e: int, f: int, i: Number, j: Number) -> List[Tuple[str, object, int, Fraction]]:
    """Expand 1/((X+i)^e (X+j)^f).

    Returns entries ``("pole", shift, s, c)`` for c/(X+shift)^s with s >= 1,
    and ``("mono", 0, k, c)`` for c*X^k.  Exactly one of four cases applies:
    equal shifts, one non-positive exponent (either orientation), both
    non-positive, or distinct shifts with both exponents positive.
    """
    i, j = Fraction(i), Fraction(j)
    out: List[Tuple[str, object, int, Fraction]] = []
    if i == j:
        return _merge_pfd(_pole_or_mono(i, e + f, Fraction(1)))
    if e <= 0 and f >= 1:
        E = -e
        for u in range(E + 1):
            c = Fraction(comb(E, u)) * (i - j) ** (E - u)
            out.extend(_pole_or_mono(j, f - u, c))
        return _merge_pfd(out)
    if f <= 0 and e >= 1:
        F = -f
        for u in range(F + 1):
            c = Fraction(comb(F, u)) * (j - i) ** (F - u)
            out.extend(_pole_or_mono(i, e - u, c))
        return _merge_pfd(out)
    if e <= 0 and f <= 0:
        E, F = -e, -f
        for u in range(E + 1):
            for v in range(F + 1):
                c = Fraction(comb(E, u) * comb(F, v)) * i ** (E - u) * j ** (F - v)
                out.append(("mono", 0, u + v, c))
        return _merge_pfd(out)
    # i != j, e, f >= 1
    for u in range(1, e + 1):
        c = Fraction(comb(e + f - 1 - u, f - 1) * (-1) ** f) / (i - j) ** (e + f - u)
        out.append(("pole", i, u, c))
    for v in range(1, f + 1):
        c = Fraction(comb(e + f - 1 - v, e - 1) * (-1) ** e) / (j - i) ** (e + f - v)
        out.append(("pole", j, v, c))
    return _merge_pfd(out)


def _pole_or_mono(shift: Fraction, s: int, c: Fraction):
    """c/(X+shift)^s, expanding into monomials when s <= 0."""
    if s >= 1:
        return [("pole", shift, s, c)]
    k = -s
    return [("mono", 0, b, c * comb(k, b) * shift ** (k - b)) for b in range(k + 1)]


def _merge_pfd(items):
    acc: Dict[Tuple[str, object, int], Fraction] = {}
    for kind, sh, s, c in items:
        key = (kind, sh, s)
        acc[key] = acc.get(key, Fraction(0)) + c
    return [(k[0], k[1], k[2], c) for k, c in sorted(acc.items(), key=lambda kv: (kv[0][0], str(kv[0][1]), kv[0][2])) if c]
