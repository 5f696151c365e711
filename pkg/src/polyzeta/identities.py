"""Catalog of published closed forms, plus an integer-relation fit that
looks for even zeta values in a numeric constant.

Each right side is a map from a basis label to a rational coefficient.
Labels are "1", "z3", "z3^2", "z(5,3)-z(3,5)" and so on; :func:`basis_value`
evaluates them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath

from .numeval import mzv_numeric, to_mpf
from .series import MultSeries, series_from_text

__all__ = ["Identity", "HORRIBLE", "VERY_WELL_POISED", "VWP_PRINTED_SECOND", "basis_value",
           "EvenFit", "even_zeta_fit"]

F = Fraction


@dataclass(frozen=True)
class Identity:
    name: str
    P: str
    A: Tuple[int, ...]
    n: Tuple[int, ...]
    rhs: Dict[str, Fraction]
    r: Tuple[int, ...] = ()
    tolerance: float = 1e-6

    def series(self) -> MultSeries:
        return series_from_text(self.P, self.A, self.n, self.r or None)

    def rhs_value(self, prec: int = 128):
        with mpmath.workprec(prec + 16):
            return +mpmath.fsum(to_mpf(c) * basis_value(k, prec) for k, c in self.rhs.items())


def _parse_label(label: str) -> List[Tuple[int, Tuple[int, ...]]]:
    """'z(5,3)-z(3,5)' -> [(1, (5, 3)), (-1, (3, 5))]; 'z3^2' handled by basis_value."""
    out = []
    for part in label.replace("-", "+-").split("+"):
        if not part:
            continue
        sign = -1 if part.startswith("-") else 1
        body = part.lstrip("-")[1:]
        comp = tuple(int(x) for x in body.strip("()").split(","))
        out.append((sign, comp))
    return out


def basis_value(label: str, prec: int = 128):
    if label == "1":
        return mpmath.mpf(1)
    if "^" in label:
        base, e = label.split("^")
        return basis_value(base, prec) ** int(e)
    return mpmath.fsum(sgn * mzv_numeric(comp, prec) for sgn, comp in _parse_label(label))


HORRIBLE = Identity(
    "mixed-degree example",
    "5*k2^2 - k1^2 - 4*k1*k2 - 3*k1 + 7*k2", (4, 3), (2, 3),
    {"1": F(-153060027667, 1289945088), "z2": F(832127737, 17915904), "z3": F(33349589, 2985984),
     "z4": F(10561397, 2985984), "z5": F(117277, 10368), "z6": F(1475, 1728), "z7": F(757, 432),
     "z(2,2)": F(6125, 1728), "z(2,3)": F(245, 24), "z(3,2)": F(35, 32), "z(3,3)": F(1, 6),
     "z(4,2)": F(595, 864), "z(4,3)": F(7, 4)},
    r=(0, 1), tolerance=1e-8,
)

VERY_WELL_POISED: Tuple[Identity, ...] = (
    Identity("vwp-1", "(k1+1)*(k2+1)*(k1-k2-1)_3*(k1+k2+1)_3*(k1-1)_5*(k2-1)_5", (5, 5), (2, 2),
             {"1": F(27875, 8192), "z3": F(-2847, 1024), "z5": F(-15, 32), "z7": F(27, 64)}),
    # printed with (k)_3^7 in the denominator; the identity holds for (k)_2^7
    Identity("vwp-2", "(k1+1/2)*(k2+1/2)*(k1-k2-1)_3*(k1+k2)_3*(k1-1)_4*(k2-1)_4", (7, 7), (1, 1),
             {"1": F(-1156), "z3": F(891), "z5": F(189, 2), "z(5,3)-z(3,5)": F(78)}),
    Identity("vwp-3", "(k1-k2)*(k1+k2+4)*(k1-2)_9*(k2-2)_9", (4, 4), (4, 4),
             {"1": F(-642739948033, 41278242816), "z3": F(10214719, 995328), "z5": F(57497, 18432)}),
    Identity("vwp-4", "(k1+1/2)*(k2+1/2)*(k3+1/2)*(k1-k2)*(k2-k3)*(k1-k3)*(k1+k2+1)*(k1+k3+1)*(k2+k3+1)",
             (4, 4, 4), (1, 1, 1),
             {"1": F(-1, 4), "z3": F(-1), "z5": F(1, 4), "z3^2": F(1), "z7": F(-1, 4)}, tolerance=1e-4),
)

VWP_PRINTED_SECOND = Identity("vwp-2 as printed", VERY_WELL_POISED[1].P, (7, 7), (2, 2), VERY_WELL_POISED[1].rhs)

EVEN_LABELS = ("z2", "z4", "z6")


@dataclass
class EvenFit:
    relation: Optional[List[int]]
    labels: List[str]
    coeffs: Dict[str, Fraction] = field(default_factory=dict)  # value = sum coeffs[label] * label

    @property
    def found(self) -> bool:
        return self.relation is not None and self.relation[0] != 0

    @property
    def even_free(self) -> bool:
        return self.found and all(not self.coeffs.get(k) for k in EVEN_LABELS)


def even_zeta_fit(value, odd_labels: Sequence[str], digits: int, maxcoeff: int = 10 ** 15) -> EvenFit:
    """PSLQ on [value, 1, odd..., z2, z4, z6] at the given number of digits.

    ``value`` is a callable prec -> mpf so the constant is recomputed at the
    working precision.  zeta(2,2) = (3/4) zeta(4) is already covered by z4.
    """
    labels = ["1"] + [x for x in odd_labels if x != "1"] + list(EVEN_LABELS)
    prec = int(digits * 3.33) + 20
    with mpmath.workprec(prec):
        vec = [value(prec)] + [basis_value(k, prec) for k in labels]
        rel = mpmath.pslq(vec, tol=mpmath.mpf(10) ** (-(digits - 10)), maxcoeff=maxcoeff, maxsteps=10 ** 6)
    fit = EvenFit(rel, ["value"] + labels)
    if rel is not None and rel[0]:
        fit.coeffs = {k: F(-c, rel[0]) for k, c in zip(labels, rel[1:]) if c}
    return fit
