"""Multiple hypergeometric series

    sum_{k1 >= ... >= kp >= 1}  P(k) / prod_i (k_i + r_i)_{n_i+1}^{A_i}  *  prod_i z_i^{-k_i}

and the degree criteria deciding convergence and at-most-logarithmic
divergence at z = 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .exact import MPoly, ZMonomial, mono_var, poch_upoly

__all__ = [
    "MultSeries", "DegreeProfile", "DivergentSeriesError",
    "normalize_shifts", "degree_profile", "check_convergence",
    "check_log_divergence", "convergence_violations",
]


class DivergentSeriesError(ValueError):
    """Raised when a series fails the convergence criterion at z = 1."""

    def __init__(self, message: str, violations: List[Tuple[int, float, int]]):
        super().__init__(message)
        self.violations = violations


@dataclass(frozen=True)
class MultSeries:
    p: int
    P: MPoly
    A: Tuple[int, ...]
    n: Tuple[int, ...]
    r: Tuple[int, ...] = ()
    args: Tuple[ZMonomial, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "n", tuple(self.n))
        object.__setattr__(self, "r", tuple(self.r) if self.r else (0,) * self.p)
        if not self.args:
            object.__setattr__(self, "args", tuple(mono_var(i, self.p) for i in range(self.p)))
        else:
            object.__setattr__(self, "args", tuple(tuple(a) for a in self.args))
        if self.p < 1:
            raise ValueError("depth must be >= 1")
        for name in ("A", "n", "r", "args"):
            if len(getattr(self, name)) != self.p:
                raise ValueError(f"{name} must have length {self.p}")
        if self.P.nvars != self.p:
            raise ValueError("numerator must be a polynomial in k1..kp")
        if any(a < 1 for a in self.A) or any(x < 0 for x in self.n) or any(x < 0 for x in self.r):
            raise ValueError("need A_i >= 1, n_i >= 0, r_i >= 0")
        if len({len(a) for a in self.args}) != 1:
            raise ValueError("argument monomials must share one variable set")

    @property
    def nbase(self) -> int:
        return len(self.args[0])

    @property
    def is_normalized(self) -> bool:
        return not any(self.r)

    def denominator_degree(self, i: int) -> int:
        return self.A[i] * (self.n[i] + 1)


@dataclass(frozen=True)
class DegreeProfile:
    degs: Tuple[float, ...]
    Dj: Tuple[int, ...]


def normalize_shifts(s: MultSeries) -> MultSeries:
    """Absorb shifts: (k+r)_{n+1} = (k)_{n+r+1} / (k)_r."""
    if s.is_normalized:
        return s
    P = s.P
    for i, r in enumerate(s.r):
        if r:
            factor = MPoly(s.p, {
                tuple(d if j == i else 0 for j in range(s.p)): c
                for d, c in enumerate(poch_upoly(0, r)) if c
            })
            P = P * factor ** s.A[i]
    n = tuple(x + r for x, r in zip(s.n, s.r))
    return MultSeries(s.p, P, s.A, n, (0,) * s.p, s.args)


def degree_profile(s: MultSeries) -> DegreeProfile:
    if not s.is_normalized:
        raise ValueError("series must be normalized (r = 0)")
    degs = tuple(s.P.degree(i) for i in range(s.p))
    Dj, acc = [], 0
    for j in range(s.p):
        acc += s.denominator_degree(j)
        Dj.append(acc - (j + 1) - 1)
    return DegreeProfile(degs, tuple(Dj))


def convergence_violations(s: MultSeries, slack: int = 0) -> List[Tuple[int, float, int]]:
    """(j, sum_{i<=j} deg, D_j) for every j with sum > D_j + slack."""
    prof = degree_profile(s)
    out, acc = [], 0.0
    for j in range(s.p):
        acc += prof.degs[j]
        if acc > prof.Dj[j] + slack:
            out.append((j + 1, acc, prof.Dj[j]))
    return out


def check_convergence(s: MultSeries) -> bool:
    return not convergence_violations(s, 0)


def check_log_divergence(s: MultSeries) -> bool:
    return not convergence_violations(s, 1)


def require_convergent(s: MultSeries) -> None:
    bad = convergence_violations(s, 0)
    if bad:
        lines = [f"D_{j} = {D}: sum of degrees {int(d)} > {D}" for j, d, D in bad]
        raise DivergentSeriesError("series diverges at z = 1; " + "; ".join(lines), bad)


def series_from_text(P: str, A, n, r=None, args: Optional[Tuple[ZMonomial, ...]] = None) -> MultSeries:
    """Convenience constructor used by scripts and tests."""
    from .parsing import parse_polynomial

    p = len(A)
    return MultSeries(p, parse_polynomial(P, p), tuple(A), tuple(n), tuple(r or ()), tuple(args or ()))
