"""Write the consolidated JSON report of every claim to a file.

    python scripts/verify_paper.py --out report.json --points 100
"""

import argparse
from pathlib import Path

from complement_cert.claims import GridConfig, verify_paper
from complement_cert.textio import emit_document, report_passed


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("report.json"))
    ap.add_argument("--points", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    reports = verify_paper(GridConfig(points=args.points, seed=args.seed, jobs=args.jobs))
    args.out.write_text(emit_document(reports) + "\n")
    failed = sorted({r["claim"] for r in reports if not report_passed(r)})
    print(f"{len(reports)} reports written to {args.out}; failed claims: {failed or 'none'}")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
