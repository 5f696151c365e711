"""Random positive-exponent bricks: check the coefficient denominators and z_1-degree bounds.

Prints how often the z_1-degree exceeds K_N and whether it ever exceeds I_N.
"""
from __future__ import annotations

import argparse
import random
from collections import Counter

from polyzeta.bricks import Brick, certify_bounds, decompose_brick, theorem_bounds


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=3000)
    ap.add_argument("--seed", type=int, default=5)
    ap.add_argument("--max-depth", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally: Counter = Counter()
    worst = []
    for _ in range(args.count):
        N = rng.randint(1, args.max_depth)
        s = tuple(rng.randint(1, 3) for _ in range(N))
        m = (0,) + tuple(rng.randint(0, 2) for _ in range(N - 1))
        j = tuple(rng.randint(0, 3) for _ in range(N))
        b = Brick(s, m, j, tuple(tuple(int(a == i) for a in range(N)) for i in range(N)))
        cert = certify_bounds(b, decompose_brick(b))
        tally["bricks"] += 1
        tally[f"depth {N}"] += 1
        if not cert.denominator_ok:
            tally["denominator fails"] += 1
        if not cert.degree_ok:
            tally[f"degree > K_N (depth {N})"] += 1
            worst.append((cert.max_z1_degree - cert.degree_bound, b, theorem_bounds(b)))
        if not cert.modulated_ok:
            tally["degree > I_N"] += 1
    for k in sorted(tally):
        print(f"{k:28s} {tally[k]}")
    for gap, b, (I, J, K, S) in sorted(worst, key=lambda w: -w[0])[:5]:
        print(f"gap {gap}: s={b.s} m={b.m} j={b.j}  I_N={I} K_N={K}")


if __name__ == "__main__":
    main()
