"""Compare integrals of Sorokin type with their series by quadrature."""
from __future__ import annotations

import argparse
from fractions import Fraction

import mpmath

from polyzeta.atone import decompose_at_one
from polyzeta.numeval import mzvexpr_numeric, series_numeric, to_mpf
from polyzeta.sorokin import QuadratureConfig, SorokinIntegral, quadrature_check, series_from_integral

CASES = [
    ("S3, n=0", SorokinIntegral.S3(0), 1),
    ("S3, n=1", SorokinIntegral.S3(1), 1),
    ("S3, n=1 at z=3/2", SorokinIntegral.S3(1), Fraction(3, 2)),
    ("D=1 at z=2", SorokinIntegral(1, 1, (0,), (0,), (0,), (1,)), 2),
    ("D=5, cuts (3,5)", SorokinIntegral(5, 2, (0, 0), (0, 0), (0, 0), (3, 5)), 1),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nodes", type=int, default=64)
    ap.add_argument("--samples", type=int, default=1_000_000)
    args = ap.parse_args()
    for name, I, z in CASES:
        pref, s = series_from_integral(I)
        if z == 1:
            e = decompose_at_one(s)
            exact = mzvexpr_numeric(e) * to_mpf(pref.value(1))
            label = f"{pref.value(1)} * ({e})"
        else:
            exact = series_numeric(s, [Fraction(z)])[0] * to_mpf(pref.value(Fraction(z)))
            label = "series"
        print(f"== {name}: {label} = {mpmath.nstr(exact, 15)}")
        for method in ("gauss", "montecarlo"):
            if method == "gauss" and I.D > 3:
                continue
            q = quadrature_check(I, z, QuadratureConfig(method=method, nodes=args.nodes, samples=args.samples))
            print(f"   {method:10s} {q.value:.12f} +- {q.error:.2e}   diff {abs(q.value - float(exact)):.2e}")


if __name__ == "__main__":
    main()
