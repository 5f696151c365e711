"""Decompose the catalogued series at z = 1 and compare with their closed forms."""
from __future__ import annotations

import argparse
import time

import mpmath

from polyzeta.atone import decompose_at_one
from polyzeta.identities import HORRIBLE, VERY_WELL_POISED, VWP_PRINTED_SECOND
from polyzeta.numeval import mzvexpr_numeric, series_numeric


def report(ident, prec):
    t0 = time.perf_counter()
    e = decompose_at_one(ident.series())
    dt = time.perf_counter() - t0
    with mpmath.workprec(prec):
        lhs = series_numeric(ident.series(), prec=prec)[0]
        engine = mzvexpr_numeric(e, prec)
        rhs = ident.rhs_value(prec)
    print(f"== {ident.name}  ({dt:.2f}s, {len(e.terms)} zeta terms, weight <= {e.max_weight()})")
    print(f"   engine: {e}")
    print(f"   |series - closed form| = {mpmath.nstr(abs(lhs - rhs), 3)}")
    print(f"   |series - engine|      = {mpmath.nstr(abs(lhs - engine), 3)}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prec", type=int, default=160, help="bits")
    args = ap.parse_args()
    for ident in (HORRIBLE,) + VERY_WELL_POISED:
        report(ident, args.prec)
    # the second very-well-poised identity with the denominator exactly as printed
    report(VWP_PRINTED_SECOND, args.prec)


if __name__ == "__main__":
    main()
