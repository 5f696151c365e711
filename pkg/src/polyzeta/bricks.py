"""Shifted-modulated bricks

    B_N[s, m, j | z] = sum_{k_1 >= 1} sum_{k_2 = 1}^{k_1 + m_2} ... sum_{k_N = 1}^{k_{N-1} + m_N}
                       prod_i z_i^{-k_i} / (k_i + j_i)^{s_i}

and their decomposition into large polylogarithms

    La_s(x_1..x_N) = sum_{k_1 >= ... >= k_N >= 1} prod_i x_i^{k_i} / k_i^{s_i}

with Laurent-polynomial coefficients.  ``args`` of a brick are the z_i as
monomials in base variables; La terms store their literal arguments, so the
leading term of a brick carries the inverted monomials 1/z_i.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from .exact import LaurentPoly, ZMonomial, binom, lcm_upto, mono_inv, mono_mul, mono_one, mono_pow

LaKey = Tuple[Tuple[int, ...], Tuple[ZMonomial, ...]]
CONSTANT: LaKey = ((), ())

__all__ = [
    "Brick", "LaTerm", "Decomposition", "CONSTANT",
    "q_poly", "decompose_brick", "certify_bounds", "BoundCertificate", "theorem_bounds",
]


@dataclass(frozen=True)
class Brick:
    s: Tuple[int, ...]
    m: Tuple[int, ...]
    j: Tuple[int, ...]
    args: Tuple[ZMonomial, ...]

    def __post_init__(self):
        for name in ("s", "m", "j"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "args", tuple(tuple(a) for a in self.args))
        N = len(self.s)
        if not (len(self.m) == len(self.j) == len(self.args) == N):
            raise ValueError("brick vectors must share one length")
        if N and self.m[0] != 0:
            raise ValueError("first modulation must be 0")
        if any(x < 0 for x in self.m) or any(x < 0 for x in self.j):
            raise ValueError("modulations and shifts must be >= 0")

    @property
    def N(self) -> int:
        return len(self.s)


@dataclass(frozen=True)
class LaTerm:
    s: Tuple[int, ...]
    args: Tuple[ZMonomial, ...]

    @property
    def depth(self) -> int:
        return len(self.s)

    @property
    def weight(self) -> int:
        return sum(max(x, 0) for x in self.s)

    @property
    def key(self) -> LaKey:
        return (self.s, self.args)


def _sort_key(key: LaKey):
    s, args = key
    return (len(s), sum(max(x, 0) for x in s), s, args)


class Decomposition:
    """sum coeff * La_s(args) with the depth-0 key holding the constant part."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[LaKey, LaurentPoly]] = None):
        self.nvars = nvars
        self.terms: Dict[LaKey, LaurentPoly] = {}
        for k, v in (terms or {}).items():
            if v:
                self.terms[k] = v

    @classmethod
    def one(cls, nvars: int) -> "Decomposition":
        return cls(nvars, {CONSTANT: LaurentPoly.constant(1, nvars)})

    def add(self, key: LaKey, coeff: LaurentPoly) -> None:
        cur = self.terms.get(key)
        new = coeff if cur is None else cur + coeff
        if new:
            self.terms[key] = new
        else:
            self.terms.pop(key, None)

    def add_scaled(self, other: "Decomposition", mono: ZMonomial, c: Fraction = Fraction(1),
                   factor: Optional[LaurentPoly] = None) -> None:
        """self += c * z^mono * factor * other."""
        for key, v in other.terms.items():
            w = v.mul_monomial(mono, c)
            if factor is not None:
                w = w * factor
            self.add(key, w)

    @property
    def constant(self) -> LaurentPoly:
        return self.terms.get(CONSTANT, LaurentPoly(self.nvars))

    def la_terms(self) -> List[Tuple[LaurentPoly, LaTerm]]:
        return [(self.terms[k], LaTerm(*k)) for k in sorted(self.terms, key=_sort_key) if k != CONSTANT]

    def items(self) -> Iterator[Tuple[LaKey, LaurentPoly]]:
        for k in sorted(self.terms, key=_sort_key):
            yield k, self.terms[k]

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, Decomposition) and self.terms == other.terms

    def __repr__(self):
        parts = []
        for k, v in self.items():
            if k == CONSTANT:
                parts.append(f"({v.to_text()})")
            else:
                parts.append(f"({v.to_text()})*La{list(k[0])}")
        return "Decomposition(" + " + ".join(parts) + ")"


def q_poly(s: Tuple[int, ...], K: int, args: Tuple[ZMonomial, ...], nvars: Optional[int] = None) -> LaurentPoly:
    """Q(K) = sum_{K >= k_1 >= ... >= k_r >= 1} prod z_i^{-k_i} / k_i^{s_i}; 1 for empty s."""
    nv = nvars if nvars is not None else len(args[0])
    if not s:
        return LaurentPoly.constant(1, nv)
    if K <= 0:
        return LaurentPoly(nv)
    inner = [LaurentPoly.constant(1, nv)] * (K + 1)
    for si, zi in zip(reversed(s), reversed(args)):
        zinv = mono_inv(zi)
        cur = LaurentPoly(nv)
        row = [cur]
        for k in range(1, K + 1):
            term = inner[k].mul_monomial(mono_pow(zinv, k), Fraction(1, k ** si) if si >= 0 else k ** (-si))
            cur = cur + term
            row.append(cur)
        inner = row
    return inner[K]


def _r_bricks(s, m, j, p: int, K: int) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]], Fraction]:
    """Sub-bricks of R_{N,p}(K) (p is 1-based, 2 <= p <= N), with coefficients."""
    N = len(s)
    a, b = s[p - 2], s[p - 1]
    jj = j[p - 2]
    cols: List[Tuple[Fraction, int, int]] = []  # (coefficient, exponent, shift)
    if K == jj:
        cols.append((Fraction(1), a + b, jj))
    elif a <= 0 and b >= 1:
        for u in range(-a + 1):
            cols.append((Fraction(binom(-a, u)) * Fraction(jj - K) ** (-a - u), b - u, K))
    elif a >= 1 and b <= 0:
        for u in range(-b + 1):
            cols.append((Fraction(binom(-b, u)) * Fraction(K - jj) ** (-b - u), a - u, jj))
    elif a <= 0 and b <= 0:
        for u in range(-a + 1):
            for v in range(-b + 1):
                c = Fraction(binom(-a, u) * binom(-b, v)) * Fraction(jj) ** (-a - u) * Fraction(K) ** (-b - v)
                cols.append((c, -(u + v), 0))
    else:
        for u in range(1, a + 1):
            c = Fraction(binom(a + b - 1 - u, b - 1) * (-1) ** b) / Fraction(jj - K) ** (a + b - u)
            cols.append((c, u, jj))
        for v in range(1, b + 1):
            c = Fraction(binom(a + b - 1 - v, a - 1) * (-1) ** a) / Fraction(K - jj) ** (a + b - v)
            cols.append((c, v, K))
    tail = N - p
    out: Dict[Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]], Fraction] = {}
    for c, e, sh in cols:
        if not c:
            continue
        s2 = s[: p - 2] + (e,) + s[p:]
        m2 = m[: p - 2] + (m[p - 2],) + ((K,) + (0,) * (tail - 1) if tail else ())
        j2 = j[: p - 2] + (sh,) + (0,) * tail
        key = (s2, m2, j2)
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


class _Engine:
    def __init__(self, nvars: int, memo: Optional[dict] = None):
        self.nvars = nvars
        self.memo = memo if memo is not None else {}

    def run(self, s, m, j, args) -> Decomposition:
        key = (s, m, j, args)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        out = self._compute(s, m, j, args)
        self.memo[key] = out
        return out

    def _compute(self, s, m, j, args) -> Decomposition:
        nv = self.nvars
        N = len(s)
        if N == 0:
            return Decomposition.one(nv)
        res = Decomposition(nv)
        # tail_mono[p] = prod_{i >= p} z_i^{j_i}  (0-based p)
        tail_mono = [mono_one(nv)] * (N + 1)
        for i in range(N - 1, -1, -1):
            tail_mono[i] = mono_mul(tail_mono[i + 1], mono_pow(args[i], j[i]))
        res.add((s, tuple(mono_inv(a) for a in args)), LaurentPoly(nv, {tail_mono[0]: 1}))
        for p in range(1, N + 1):
            Q = q_poly(s[p - 1:], j[p - 1], args[p - 1:], nv)
            if not Q:
                continue
            sub = self.run(s[: p - 1], m[: p - 1], j[: p - 1], args[: p - 1])
            res.add_scaled(sub, tail_mono[p - 1], Fraction(-1), Q)
        for p in range(2, N + 1):
            lo, hi = j[p - 2], j[p - 1] + m[p - 1]
            if lo == hi:
                continue
            eps = 1 if lo < hi else -1
            t, T = min(lo, hi), max(lo, hi)
            merged = args[: p - 2] + (mono_mul(args[p - 2], args[p - 1]),) + args[p:]
            for K in range(t + 1, T + 1):
                mono = mono_mul(tail_mono[p - 1], mono_pow(args[p - 1], -K))
                for (s2, m2, j2), c in _r_bricks(s, m, j, p, K).items():
                    sub = self.run(s2, m2, j2, merged)
                    res.add_scaled(sub, mono, eps * c)
        return res


def decompose_brick(b: Brick, memo: Optional[dict] = None, nvars: Optional[int] = None) -> Decomposition:
    """Decompose a brick; ``memo`` may be shared across calls with equal nvars."""
    nv = nvars if nvars is not None else (len(b.args[0]) if b.args else 0)
    return _Engine(nv, memo).run(b.s, b.m, b.j, b.args)


@dataclass(frozen=True)
class BoundCertificate:
    denominator_ok: bool
    degree_ok: bool
    scale: int
    degree_bound: int
    max_z1_degree: int
    min_z1_degree: int
    all_constant: bool
    modulated_bound: int = 0  # I_N, the degree bound observed to hold for modulated bricks

    @property
    def modulated_ok(self) -> bool:
        return self.denominator_ok and self.min_z1_degree >= 0 and self.max_z1_degree <= self.modulated_bound

    @property
    def ok(self) -> bool:
        return self.denominator_ok and self.degree_ok


def theorem_bounds(b: Brick) -> Tuple[int, int, int, int]:
    """(I_N, J_N, K_N, Sigma_N) for a brick."""
    N = b.N
    M = [0] * (N + 1)
    for i in range(1, N + 1):
        M[i] = M[i - 1] + b.m[i - 1]
    T = []
    for i in range(1, N + 1):
        prev = b.j[i - 2] if i >= 2 else 0
        T.append(max(prev, b.j[i - 1] + b.m[i - 1]))
    I_N = max((T[i - 1] + M[i - 1] for i in range(1, N + 1)), default=0)
    J_N = max(b.j, default=0)
    K_N = max(T, default=0)
    return I_N, J_N, K_N, sum(b.s)


def certify_bounds(b: Brick, d: Decomposition) -> BoundCertificate:
    """Denominator and z_1-degree bounds for positive-exponent bricks.

    Coefficients times d_{I_N}^{Sigma_N} must have integer coefficients and
    z_1-exponents in [0, K_N]; unmodulated bricks use J_N in both places.
    From depth 3 on, modulated bricks can reach z_1-degree I_N > K_N, so
    ``modulated_ok`` also checks the weaker bound I_N.
    """
    if any(x <= 0 for x in b.s):
        raise ValueError("bounds apply only to bricks with all exponents >= 1")
    I_N, J_N, K_N, Sig = theorem_bounds(b)
    unmod = not any(b.m)
    scale = lcm_upto(J_N if unmod else I_N) ** Sig
    deg_bound = J_N if unmod else K_N
    den_ok, lo, hi, consts = True, 0, 0, True
    for _, coeff in d.terms.items():
        for e, c in coeff.terms.items():
            if (c * scale).denominator != 1:
                den_ok = False
            lo, hi = min(lo, e[0]), max(hi, e[0])
            if any(e):
                consts = False
    return BoundCertificate(den_ok, lo >= 0 and hi <= deg_bound, scale, deg_bound, hi, lo, consts,
                            J_N if unmod else I_N)
