"""Sorokin-type integrals over [0,1]^D as multiple series.

    I(z) = int prod_{j=1}^{p} prod_{l in block j} x_l^{r_j} (1 - x_l)^{s_j}
                               / (z - x_1 ... x_{d_j})^{t_j + 1} dx

equals z^{-(t_1+...+t_p+p-1)} prod_j s_j!^{A_j}/t_j! times

    sum_{k_1 >= ... >= k_p >= 1} z^{-k_1} prod_j (k_j - k_{j+1} + 1)_{t_j} / (k_j + r_j)_{s_j+1}^{A_j}

with k_{p+1} = 1 and A_j = d_j - d_{j-1}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from .exact import MPoly
from .parsing import poch
from .series import MultSeries

__all__ = [
    "SorokinIntegral", "Prefactor", "series_from_integral",
    "QuadratureConfig", "QuadratureResult", "quadrature_check", "integrand",
]


@dataclass(frozen=True)
class SorokinIntegral:
    D: int
    p: int
    r: Tuple[int, ...]
    s: Tuple[int, ...]
    t: Tuple[int, ...]
    d: Tuple[int, ...]  # cut points d_1 < ... < d_p = D (d_0 = 0 implicit)

    def __post_init__(self):
        for name in ("r", "s", "t", "d"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
            if len(getattr(self, name)) != self.p:
                raise ValueError(f"{name} must have length p = {self.p}")
        if self.D < 1 or self.p < 1:
            raise ValueError("need D, p >= 1")
        if any(x < 0 for x in self.r + self.s + self.t):
            raise ValueError("r, s, t must be non-negative")
        cuts = (0,) + self.d
        if any(b <= a for a, b in zip(cuts, cuts[1:])) or self.d[-1] != self.D:
            raise ValueError("need 0 < d_1 < ... < d_p = D")

    @property
    def A(self) -> Tuple[int, ...]:
        cuts = (0,) + self.d
        return tuple(b - a for a, b in zip(cuts, cuts[1:]))

    @classmethod
    def S3(cls, n: int) -> "SorokinIntegral":
        """x^n(1-x)^n y^n(1-y)^n z^n(1-z)^n / ((1-xy)^{n+1}(1-xyz)^{n+1})."""
        return cls(3, 2, (n, n), (n, n), (n, n), (2, 3))


@dataclass(frozen=True)
class Prefactor:
    """coeff * z^zpow."""

    coeff: Fraction
    zpow: int

    def value(self, z) -> object:
        return self.coeff * Fraction(z) ** self.zpow if isinstance(z, (int, Fraction)) else self.coeff * z ** self.zpow


def series_from_integral(I: SorokinIntegral) -> Tuple[Prefactor, MultSeries]:
    p = I.p
    coeff = Fraction(1)
    for sj, tj, Aj in zip(I.s, I.t, I.A):
        coeff *= Fraction(math.factorial(sj) ** Aj, math.factorial(tj))
    pref = Prefactor(coeff, -(sum(I.t) + p - 1))
    ks = [MPoly.var(i, p) for i in range(p)] + [MPoly.constant(1, p)]
    P = MPoly.constant(1, p)
    for j in range(p):
        P = P * poch(ks[j] - ks[j + 1] + 1, I.t[j])
    args = ((1,),) + ((0,),) * (p - 1)
    return pref, MultSeries(p, P, I.A, I.s, I.r, args)


def integrand(I: SorokinIntegral, z: float):
    """Vectorized integrand on an (npoints, D) array."""
    cuts = (0,) + I.d

    def f(x: np.ndarray) -> np.ndarray:
        out = np.ones(x.shape[0])
        prod = np.ones(x.shape[0])
        for j in range(I.p):
            blk = x[:, cuts[j]:cuts[j + 1]]
            out *= np.prod(blk ** I.r[j] * (1 - blk) ** I.s[j], axis=1)
            prod = prod * np.prod(blk, axis=1)
            out /= (z - prod) ** (I.t[j] + 1)
        return out

    return f


@dataclass
class QuadratureConfig:
    method: str = "auto"  # "gauss", "montecarlo" or "auto" (gauss for D <= 3)
    nodes: int = 64  # Gauss-Legendre nodes per axis
    samples: int = 400_000
    seed: int = 12345
    grade: int = 3  # endpoint clustering of the sigmoidal substitution


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float
    method: str


def _sigmoid_rule(n: int, q: int):
    """Gauss-Legendre on [0,1] composed with u -> u^q/(u^q + (1-u)^q)."""
    u, w = np.polynomial.legendre.leggauss(n)
    u = (u + 1) / 2
    w = w / 2
    a, b = u ** q, (1 - u) ** q
    x = a / (a + b)
    dx = q * (u * (1 - u)) ** (q - 1) / (a + b) ** 2
    return x, w * dx


def _tensor_gauss(f, D: int, n: int, q: int) -> float:
    x, w = _sigmoid_rule(n, q)
    grids = np.meshgrid(*([x] * D), indexing="ij")
    wgrid = np.ones([n] * D)
    for axis in range(D):
        shape = [1] * D
        shape[axis] = n
        wgrid = wgrid * w.reshape(shape)
    pts = np.stack([g.ravel() for g in grids], axis=1)
    return float(np.sum(f(pts) * wgrid.ravel()))


def quadrature_check(I: SorokinIntegral, z=1, cfg: Optional[QuadratureConfig] = None) -> QuadratureResult:
    """Numeric value of the integral with an error estimate."""
    cfg = cfg or QuadratureConfig()
    if I.D > 5:
        raise ValueError("quadrature supports D <= 5")
    zf = float(Fraction(z)) if not isinstance(z, float) else z
    if zf < 1:
        raise ValueError("need z >= 1")
    f = integrand(I, zf)
    method = cfg.method
    if method == "auto":
        method = "gauss" if I.D <= 3 else "montecarlo"
    if method == "gauss":
        if I.D > 3:
            raise ValueError("tensor Gauss-Legendre is limited to D <= 3")
        hi = _tensor_gauss(f, I.D, cfg.nodes, cfg.grade)
        lo = _tensor_gauss(f, I.D, (3 * cfg.nodes) // 4, cfg.grade)
        return QuadratureResult(hi, abs(hi - lo), "gauss")
    if method != "montecarlo":
        raise ValueError(f"unknown method {method!r}")
    rng = np.random.default_rng(cfg.seed)
    vals = []
    left = cfg.samples
    while left > 0:
        m = min(left, 100_000)
        vals.append(f(rng.random((m, I.D))))
        left -= m
    v = np.concatenate(vals)
    return QuadratureResult(float(v.mean()), float(3 * v.std(ddof=1) / math.sqrt(v.size)), "montecarlo")
