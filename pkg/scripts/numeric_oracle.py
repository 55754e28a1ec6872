"""Evaluate Φ and Ψ at random rational points and compare exactly.

    python scripts/numeric_oracle.py --points 1000 --seed 0
"""

import argparse
import random
import time

from complement_cert.claims import GRID_ALPHAS
from complement_cert.family import FamilyParams, parse_alpha, spot_check


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--max-k", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    bad = 0
    for m in range(1, args.max_m + 1):
        for alpha in map(parse_alpha, GRID_ALPHAS):
            for k in range(1, args.max_k + 1):
                start = time.perf_counter()
                checks = spot_check(FamilyParams(m, k, alpha), args.points, rng)
                ok = all(s for _, s in checks)
                bad += not ok
                print(
                    f"m={m} alpha={alpha} k={k}: {'ok' if ok else 'FAIL'} "
                    f"({time.perf_counter() - start:.2f}s)"
                )
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
