"""Partial fractions of P(X) / prod_i (X_i)_{n_i+1}^{A_i} with entire parts.

Every term is a product over variables of one univariate basis element,
either X^e (e >= 0) or (X + j)^{-s} (s >= 1).  Internally a variable factor is
the pair (j, s) meaning (X + j)^{-s}; a monomial X^e is stored as (0, -e).
A term is a tuple of such pairs, one per variable.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, List, Mapping, Tuple

from .exact import MPoly, ZMonomial, binom, poch_upoly, upoly_divmod
from .series import MultSeries

Factor = Tuple[int, int]
TermKey = Tuple[Factor, ...]

__all__ = [
    "Quadruplet", "decompose_rational", "pfd_terms", "elementary_series",
    "quadruplet_key", "key_quadruplet", "univariate_pfd", "recombine_check",
]


@dataclass(frozen=True)
class Quadruplet:
    """Index data of one elementary term (1-based variable indices)."""

    I: FrozenSet[int]
    s: Mapping[int, int]
    j: Mapping[int, int]
    shat: Mapping[int, int]

    def __hash__(self):
        return hash((self.I, tuple(sorted(self.s.items())), tuple(sorted(self.j.items())),
                     tuple(sorted(self.shat.items()))))


def key_quadruplet(key: TermKey) -> Quadruplet:
    I, s, j, shat = set(), {}, {}, {}
    for i, (jj, ss) in enumerate(key, start=1):
        if ss >= 1:
            s[i], j[i] = ss, jj
        else:
            I.add(i)
            shat[i] = -ss
    return Quadruplet(frozenset(I), s, j, shat)


def quadruplet_key(q: Quadruplet, p: int) -> TermKey:
    return tuple((0, -q.shat[i]) if i in q.I else (q.j[i], q.s[i]) for i in range(1, p + 1))


@lru_cache(maxsize=None)
def univariate_pfd(a: int, n: int, A: int) -> Tuple[Tuple[Factor, Fraction], ...]:
    """X^a / (X)_{n+1}^A as ((j, s), c) pairs; entire part uses s <= 0."""
    out: Dict[Factor, Fraction] = {}
    den = [Fraction(1)]
    base = poch_upoly(0, n + 1)
    for _ in range(A):
        den = _mul(den, base)
    num = [Fraction(0)] * a + [Fraction(1)]
    q, _ = upoly_divmod(num, den)
    for e, c in enumerate(q):
        if c:
            out[(0, -e)] = c
    # principal parts from local expansions at X = -j, h = X + j
    for j in range(n + 1):
        series = _binomial_series(a, -j, A)  # X^a = (h - j)^a
        for i in range(n + 1):
            if i != j:
                series = _mul_trunc(series, _inv_power_series(i - j, A, A), A)
        for r, c in enumerate(series):
            if c:
                out[(j, A - r)] = c
    return tuple(sorted(out.items()))


def _mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for k, y in enumerate(b):
            out[i + k] += x * y
    return out


def _mul_trunc(a, b, L):
    out = [Fraction(0)] * L
    for i, x in enumerate(a[:L]):
        if x:
            for k, y in enumerate(b[: L - i]):
                out[i + k] += x * y
    return out


def _binomial_series(a: int, c: int, L: int):
    """(h + c)^a truncated to L terms in h."""
    return [Fraction(binom(a, b)) * Fraction(c) ** (a - b) if b <= a else Fraction(0) for b in range(L)]


def _inv_power_series(d: int, A: int, L: int):
    """(h + d)^{-A} = d^{-A} sum_r C(-A, r) (h/d)^r, truncated."""
    return [Fraction(binom(-A, r)) / Fraction(d) ** (A + r) for r in range(L)]


def pfd_terms(s: MultSeries) -> Dict[TermKey, Fraction]:
    """Exact decomposition as a map term-key -> coefficient, zeros dropped."""
    if not s.is_normalized:
        raise ValueError("series must be normalized (r = 0)")
    state: Dict[Tuple[TermKey, Tuple[int, ...]], Fraction] = {
        ((), e): c for e, c in s.P.terms.items()
    }
    for i in range(s.p):
        new: Dict[Tuple[TermKey, Tuple[int, ...]], Fraction] = {}
        for (done, rest), c in state.items():
            for f, cf in univariate_pfd(rest[0], s.n[i], s.A[i]):
                k = (done + (f,), rest[1:])
                v = new.get(k, 0) + c * cf
                if v:
                    new[k] = v
                else:
                    new.pop(k, None)
        state = new
    return {done: c for (done, _), c in sorted(state.items())}


def decompose_rational(s: MultSeries) -> List[Tuple[Quadruplet, Fraction]]:
    return [(key_quadruplet(k), c) for k, c in pfd_terms(s).items()]


@dataclass(frozen=True)
class ElementaryTerm:
    """One summand prod k_i^{e_i} / prod (k_i + j_i)^{s_i} with its arguments."""

    key: TermKey
    args: Tuple[ZMonomial, ...]

    @property
    def numer_exps(self) -> Tuple[int, ...]:
        return tuple(-s if s <= 0 else 0 for _, s in self.key)

    @property
    def poles(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        return tuple(((j, s),) if s >= 1 else () for j, s in self.key)


def elementary_series(q: Quadruplet, args: Tuple[ZMonomial, ...]) -> ElementaryTerm:
    return ElementaryTerm(quadruplet_key(q, len(args)), tuple(args))


def term_as_polynomial_multiple(key: TermKey, n: Tuple[int, ...], A: Tuple[int, ...]) -> MPoly:
    """term * prod (X_i)_{n_i+1}^{A_i}, which is a polynomial."""
    p = len(key)
    out = MPoly.constant(1, p)
    for i, (j, s) in enumerate(key):
        den = [Fraction(1)]
        base = poch_upoly(0, n[i] + 1)
        for _ in range(A[i]):
            den = _mul(den, base)
        if s <= 0:
            uni = [Fraction(0)] * (-s) + den
        else:
            pole = [Fraction(1)]
            for _ in range(s):
                pole = _mul(pole, [Fraction(j), Fraction(1)])
            uni, rem = upoly_divmod(den, pole)
            if rem:
                raise ValueError("pole outside the denominator")
        out = out * MPoly(p, {tuple(d if k == i else 0 for k in range(p)): c
                              for d, c in enumerate(uni) if c})
    return out


def recombine_check(s: MultSeries, terms: Dict[TermKey, Fraction]) -> MPoly:
    """Residual sum C*term*denominator - P; zero iff the decomposition is exact."""
    total = MPoly(s.p)
    for key, c in terms.items():
        total = total + term_as_polynomial_multiple(key, s.n, s.A) * c
    return total - s.P
