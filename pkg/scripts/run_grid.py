"""Time the complement-isomorphism grid, optionally beyond the default bounds.

    python scripts/run_grid.py --max-m 4 --max-k 4 --jobs 4
"""

import argparse
import time

from complement_cert.claims import GridConfig, lemma_grid
from complement_cert.textio import report_passed


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--max-k", type=int, default=3)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    cfg = GridConfig(
        ms=tuple(range(1, args.max_m + 1)), ks=tuple(range(args.max_k + 1)), jobs=args.jobs
    )
    start = time.perf_counter()
    reports = lemma_grid(cfg)
    elapsed = time.perf_counter() - start
    failed = [r["params"] for r in reports if not report_passed(r)]
    print(f"{len(reports)} configurations in {elapsed:.2f}s, {len(failed)} failed")
    for params in failed:
        print("  failed:", params)
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
