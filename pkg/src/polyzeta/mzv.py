"""Multiple zeta values, words over {0, 1} and shuffle regularization.

A composition (s_1, ..., s_q) is encoded as the word 0^{s_1-1}1 ... 0^{s_q-1}1.
Words starting with 0 are convergent.  The regularization zeta^sh extends
zeta to every word ending in 1 as a shuffle morphism with zeta^sh("1") = 0.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .exact import ZMonomial, mono_mul

Composition = Tuple[int, ...]

__all__ = [
    "MZVExpr", "LiTerm", "la_to_li", "word_of_composition", "composition_of_word",
    "shuffle", "regularize_sh", "la_word_regularize", "merge_patterns",
]


class MZVExpr:
    """constant + sum c_s zeta(s) over convergent compositions."""

    __slots__ = ("constant", "terms")

    def __init__(self, constant=0, terms: Optional[Mapping[Composition, Fraction]] = None):
        self.constant = Fraction(constant)
        self.terms: Dict[Composition, Fraction] = {}
        for k, v in (terms or {}).items():
            k = tuple(k)
            if k and (k[0] < 2 or any(x < 1 for x in k)):
                raise ValueError(f"non-convergent composition {k}")
            if v:
                self.terms[k] = self.terms.get(k, 0) + Fraction(v)
        self.terms = {k: v for k, v in self.terms.items() if v}

    def __add__(self, other: "MZVExpr") -> "MZVExpr":
        out = MZVExpr(self.constant + other.constant)
        t = dict(self.terms)
        for k, v in other.terms.items():
            w = t.get(k, 0) + v
            if w:
                t[k] = w
            else:
                t.pop(k, None)
        out.terms = t
        return out

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c) -> "MZVExpr":
        c = Fraction(c)
        out = MZVExpr(self.constant * c)
        out.terms = {k: v * c for k, v in self.terms.items()} if c else {}
        return out

    __rmul__ = __mul__

    def iadd_scaled(self, other: "MZVExpr", c) -> None:
        c = Fraction(c)
        if not c:
            return
        self.constant += other.constant * c
        for k, v in other.terms.items():
            w = self.terms.get(k, 0) + v * c
            if w:
                self.terms[k] = w
            else:
                self.terms.pop(k, None)

    def __eq__(self, other):
        return isinstance(other, MZVExpr) and self.constant == other.constant and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.constant and not self.terms

    def max_weight(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def max_depth(self) -> int:
        return max((len(k) for k in self.terms), default=0)

    def sorted_terms(self) -> List[Tuple[Composition, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), len(kv[0]), kv[0]))

    def __repr__(self):
        parts = [str(self.constant)] if self.constant or not self.terms else []
        for k, v in self.sorted_terms():
            parts.append(f"{v}*zeta{k}".replace(",)", ")"))
        return "MZVExpr(" + " + ".join(parts) + ")"


@dataclass(frozen=True)
class LiTerm:
    s: Tuple[int, ...]
    args: Tuple[ZMonomial, ...]

    @property
    def weight(self) -> int:
        return sum(max(x, 0) for x in self.s)


def merge_patterns(d: int) -> Iterable[Tuple[int, ...]]:
    """Block sizes of every way to merge adjacent positions of a length-d vector."""
    if d == 0:
        yield ()
        return
    for cuts in product((0, 1), repeat=d - 1):
        sizes, run = [], 1
        for c in cuts:
            if c:
                sizes.append(run)
                run = 1
            else:
                run += 1
        sizes.append(run)
        yield tuple(sizes)


def la_to_li(t, args: Optional[Tuple[ZMonomial, ...]] = None) -> List[Tuple[Fraction, LiTerm]]:
    """La_s(x) as a sum of strict Li terms: merged blocks add exponents, multiply arguments.

    Accepts a LaTerm or an exponent vector together with ``args``.
    """
    s = tuple(t.s) if args is None else tuple(t)
    args = tuple(t.args) if args is None else tuple(args)
    out = []
    for sizes in merge_patterns(len(s)):
        pos, s2, a2 = 0, [], []
        for b in sizes:
            s2.append(sum(s[pos:pos + b]))
            mono = args[pos]
            for a in args[pos + 1:pos + b]:
                mono = mono_mul(mono, a)
            a2.append(mono)
            pos += b
        out.append((Fraction(1), LiTerm(tuple(s2), tuple(a2))))
    return out


def word_of_composition(s: Iterable[int]) -> str:
    out = []
    for x in s:
        if x < 1:
            raise ValueError("compositions need positive parts")
        out.append("0" * (x - 1) + "1")
    return "".join(out)


def composition_of_word(w: str) -> Composition:
    if w and not w.endswith("1"):
        raise ValueError("word must end in 1")
    out, run = [], 1
    for ch in w:
        if ch == "0":
            run += 1
        else:
            out.append(run)
            run = 1
    return tuple(out)


@lru_cache(maxsize=None)
def _shuffle_cached(u: str, v: str) -> Tuple[Tuple[str, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: Counter = Counter()
    for w, c in _shuffle_cached(u[1:], v):
        acc[u[0] + w] += c
    for w, c in _shuffle_cached(u, v[1:]):
        acc[v[0] + w] += c
    return tuple(sorted(acc.items()))


def shuffle(u: str, v: str) -> Dict[str, int]:
    """All interleavings of u and v with multiplicity."""
    return dict(_shuffle_cached(u, v))


@lru_cache(maxsize=None)
def _regularize_word(w: str) -> Tuple[Tuple[Composition, Fraction], ...]:
    if not w.endswith("1"):
        raise ValueError("word must end in 1")
    if w.startswith("0"):
        return ((composition_of_word(w), Fraction(1)),)
    i = len(w) - len(w.lstrip("1"))  # number of leading ones, >= 1
    rest = w[i:]
    if not rest:
        return ()  # zeta^sh(1^m) = 0
    # zeta^sh(1) zeta^sh(1^{i-1} u) = i zeta^sh(1^i u) + zeta^sh(1^{i-1} u_1 [1 sh u_{>1}])
    # and the left side vanishes, so zeta^sh(1^i u) = -(1/i) zeta^sh(1^{i-1} u_1 [1 sh u_{>1}])
    acc: Dict[Composition, Fraction] = {}
    head = "1" * (i - 1) + rest[0]
    for tail, mult in shuffle("1", rest[1:]).items():
        for comp, c in _regularize_word(head + tail):
            acc[comp] = acc.get(comp, 0) + c * Fraction(-mult, i)
    return tuple(sorted((k, v) for k, v in acc.items() if v))


def regularize_sh(w: str) -> MZVExpr:
    return MZVExpr(0, dict(_regularize_word(w)))


@lru_cache(maxsize=None)
def _la_reg_cached(s: Composition) -> Tuple[Tuple[Composition, Fraction], ...]:
    acc: Dict[Composition, Fraction] = {}
    for sizes in merge_patterns(len(s)):
        pos, s2 = 0, []
        for b in sizes:
            s2.append(sum(s[pos:pos + b]))
            pos += b
        for comp, c in _regularize_word(word_of_composition(s2)):
            acc[comp] = acc.get(comp, 0) + c
    return tuple(sorted((k, v) for k, v in acc.items() if v))


def la_word_regularize(s: Iterable[int]) -> MZVExpr:
    """Regularized value at 1 of La_s(x, 1, ..., 1); all s_i >= 1."""
    s = tuple(s)
    if any(x < 1 for x in s):
        raise ValueError("exponents must be >= 1")
    if not s:
        return MZVExpr(1)
    return MZVExpr(0, dict(_la_reg_cached(s)))
