"""Integer-relation fit of each very-well-poised value against odd zetas plus zeta(2), zeta(4), zeta(6)."""
from __future__ import annotations

import argparse

from polyzeta.atone import decompose_at_one
from polyzeta.identities import VERY_WELL_POISED, even_zeta_fit
from polyzeta.numeval import mzvexpr_numeric


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--digits", type=int, nargs="+", default=[100, 150])
    args = ap.parse_args()
    for ident in VERY_WELL_POISED:
        e = decompose_at_one(ident.series())
        for d in args.digits:
            fit = even_zeta_fit(lambda prec: mzvexpr_numeric(e, prec), list(ident.rhs), d)
            status = "even-free" if fit.even_free else ("EVEN PART" if fit.found else "no relation")
            print(f"{ident.name:8s} {d:4d} digits  {status:11s} {fit.coeffs}")


if __name__ == "__main__":
    main()
