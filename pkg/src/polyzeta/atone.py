"""Decomposition of multiple series at z = 1 into multiple zeta values.

Terms are dicts ``key -> coefficient`` with keys as in :mod:`polyzeta.pfd`:
one ``(j, s)`` pair per variable, ``(X + j)^{-s}`` for s >= 1 and ``X^{-s}``
for s <= 0.  The summation is over k_1 >= ... >= k_p >= 1 with z_1 = w and
every other argument 1; only regularized values at w = 1 are propagated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .bricks import CONSTANT, Brick, decompose_brick
from .exact import binom, faulhaber, upoly_taylor_shift
from .mzv import MZVExpr, la_word_regularize
from .pfd import TermKey, pfd_terms
from .series import MultSeries, normalize_shifts, require_convergent

__all__ = [
    "AtOneConfig", "ElementarySum", "ContractViolation", "BudgetExceeded",
    "classify_term", "bernoulli_reduce", "regularized_value", "decompose_at_one",
]

Terms = Dict[TermKey, Fraction]


class ContractViolation(RuntimeError):
    """A group reached a state that cannot be log-divergent (an upstream bug)."""


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class AtOneConfig:
    budget: int = 5_000_000  # total term visits before giving up
    check_weight: bool = True
    stats: Dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class ElementarySum:
    coeff: Fraction
    numer_exps: Tuple[int, ...]
    poles: Tuple[Tuple[int, int], ...]  # (shift, exponent) per variable, exponent 0 = none

    @classmethod
    def from_key(cls, key: TermKey, coeff=1) -> "ElementarySum":
        return cls(Fraction(coeff), tuple(max(-s, 0) for _, s in key),
                   tuple((j, s) if s >= 1 else (0, 0) for j, s in key))

    @property
    def key(self) -> TermKey:
        return tuple((j, s) if s >= 1 else (0, -e) for e, (j, s) in zip(self.numer_exps, self.poles))

    @property
    def depth(self) -> int:
        return len(self.numer_exps)


def _as_key(t) -> TermKey:
    return t.key if isinstance(t, ElementarySum) else tuple(t)


def classify_term(t) -> str:
    """'E0' iff every prefix satisfies sum(monomial exps) <= sum(pole exps) - j."""
    acc = 0
    for j, (_, s) in enumerate(_as_key(t), start=1):
        acc += s
        if acc < j:
            return "E1"
    return "E0"


def _entire_vars(key: TermKey) -> List[int]:
    return [i for i, (_, s) in enumerate(key) if s <= 0]


def _times_poly(factor: Tuple[int, int], G: List[Fraction]) -> Dict[Tuple[int, int], Fraction]:
    """factor(X) * G(X) in normal form."""
    j, s = factor
    out: Dict[Tuple[int, int], Fraction] = {}

    def put(f, c):
        v = out.get(f, 0) + c
        if v:
            out[f] = v
        else:
            out.pop(f, None)

    if s <= 0:
        for d, c in enumerate(G):
            if c:
                put((0, -(d - s)), c)
        return out
    H = upoly_taylor_shift(G, -j)  # G(X) = H(X + j)
    for b, c in enumerate(H):
        if not c:
            continue
        if b < s:
            put((j, s - b), c)
        else:
            e = b - s
            for d in range(e + 1):
                cc = c * binom(e, d) * Fraction(j) ** (e - d)
                if cc:
                    put((0, -d), cc)
    return out


def bernoulli_reduce(t, tvar: int, coeff=1) -> Terms:
    """Sum out variable ``tvar`` (1-based, >= 2) whose factor is a monomial k^e."""
    key = _as_key(t)
    p = len(key)
    if not 2 <= tvar <= p:
        raise ValueError("tvar must lie in 2..p")
    jt, st = key[tvar - 1]
    if st >= 1:
        raise ValueError(f"variable {tvar} carries a pole")
    e = -st
    c0 = Fraction(coeff)
    F = faulhaber(e)
    out: Terms = {}

    def put(k, c):
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)

    rest = key[: tvar - 1] + key[tvar:]
    # upper end: F(k_{t-1} + 1) joins variable t-1
    upper = upoly_taylor_shift(F, 1)
    for f, c in _times_poly(key[tvar - 2], upper).items():
        k2 = list(rest)
        k2[tvar - 2] = f
        put(tuple(k2), c0 * c)
    if tvar == p:
        val = sum(F, Fraction(0))  # F(1)
        if val:
            put(rest, -c0 * val)
    else:
        # lower end: -F(k_{t+1}) joins variable t+1 (index t-1 in rest)
        for f, c in _times_poly(key[tvar], F).items():
            k2 = list(rest)
            k2[tvar - 1] = f
            put(tuple(k2), -c0 * c)
    return out


class _Pipeline:
    def __init__(self, cfg: AtOneConfig):
        self.cfg = cfg
        self.brick_memo: dict = {}
        self.single_memo: Dict[TermKey, MZVExpr] = {}
        self.pole_memo: Dict[TermKey, MZVExpr] = {}
        self.visits = 0

    def tick(self, n: int = 1):
        self.visits += n
        if self.visits > self.cfg.budget:
            raise BudgetExceeded(f"recursion budget of {self.cfg.budget} term visits exhausted")

    def pole_value(self, key: TermKey) -> MZVExpr:
        hit = self.pole_memo.get(key)
        if hit is not None:
            return hit
        N = len(key)
        if N == 0:
            out = MZVExpr(1)
        else:
            b = Brick(tuple(s for _, s in key), (0,) * N, tuple(j for j, _ in key),
                      ((1,),) + ((0,),) * (N - 1))
            d = decompose_brick(b, self.brick_memo, 1)
            out = MZVExpr()
            for lk, coeff in d.terms.items():
                c = coeff.value_at_ones()
                if not c:
                    continue
                if lk == CONSTANT:
                    out.constant += c
                    continue
                s, args = lk
                if args[0] != (-1,) or any(a != (0,) for a in args[1:]):
                    raise ContractViolation(f"unexpected La arguments {args}")
                out.iadd_scaled(la_word_regularize(s), c)
        self.pole_memo[key] = out
        return out

    def single_value(self, key: TermKey) -> MZVExpr:
        hit = self.single_memo.get(key)
        if hit is not None:
            return hit
        I = _entire_vars(key)
        out = self.value(bernoulli_reduce(key, I[0] + 1))
        self.single_memo[key] = out
        return out

    def value(self, terms: Mapping[TermKey, Fraction]) -> MZVExpr:
        out = MZVExpr()
        group: Terms = {}
        self.tick(len(terms))
        for key, c in terms.items():
            if not c:
                continue
            I = _entire_vars(key)
            if not I:
                out.iadd_scaled(self.pole_value(key), c)
                continue
            if classify_term(key) == "E0":
                out.iadd_scaled(self.single_value(key), c)
                continue
            ts = [i for i in I if i >= 1]
            if not ts:
                raise ContractViolation(f"term {key} has an entire part only in the outer variable")
            for k2, c2 in bernoulli_reduce(key, ts[0] + 1, c).items():
                v = group.get(k2, 0) + c2
                if v:
                    group[k2] = v
                else:
                    group.pop(k2, None)
        if group:
            self.cfg.stats["max_group"] = max(self.cfg.stats.get("max_group", 0), len(group))
            out = out + self.value(group)
        return out


def regularized_value(terms: Mapping[TermKey, Fraction], cfg: Optional[AtOneConfig] = None) -> MZVExpr:
    """Regularized value at 1 of a log-divergent combination of elementary sums."""
    if not isinstance(terms, Mapping):
        acc: Terms = {}
        for t in terms:
            acc[t.key] = acc.get(t.key, 0) + t.coeff
        terms = acc
    return _Pipeline(cfg or AtOneConfig()).value(terms)


def decompose_at_one(s: MultSeries, cfg: Optional[AtOneConfig] = None) -> MZVExpr:
    """Exact value of a convergent series at z = 1 as constant + sum c * zeta(s)."""
    cfg = cfg or AtOneConfig()
    s = normalize_shifts(s)
    require_convergent(s)
    terms = pfd_terms(s)
    cfg.stats["pfd_terms"] = len(terms)
    out = _Pipeline(cfg).value(terms)
    if cfg.check_weight:
        bound = sum(s.A)
        bad = [k for k in out.terms if sum(k) > bound or len(k) > s.p]
        if bad:
            raise ContractViolation(f"compositions {bad} exceed weight {bound} or depth {s.p}")
    return out
