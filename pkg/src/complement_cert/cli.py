"""Command-line entry point: ``complement-cert <command> [options]``.

Exit status is 0 when every check passes, 1 when some check fails and 2 for
usage or parse errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import random
import sys
from typing import List, Optional

from . import claims
from .family import (
    SYM,
    T_CONTEXT,
    FamilyParams,
    classify_fiber,
    decide_equivalence,
    make_Phi,
    parse_alpha,
    spot_check,
    verify_complement_isomorphism,
    verify_equivalence_witness,
)
from .polyring import as_rational
from .smoothness import family_singularity
from .textio import ParseError, dumps, emit_document, parse, print_poly, report_dict, report_passed

log = logging.getLogger("complement_cert")

SEED_ENV = "COMPLEMENT_CERT_SEED"


def _positive(name):
    def check(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer") from None
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be >= 1, got {v}")
        return v

    return check


def _nonneg(name):
    def check(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer") from None
        if v < 0:
            raise argparse.ArgumentTypeError(f"{name} must be >= 0, got {v}")
        return v

    return check


def _alpha(text):
    try:
        return parse_alpha(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"alpha must be a rational or 'sym', got {text!r}")


def _rational(text):
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="complement-cert",
        description="Exact certificates for complements of the hypersurfaces "
        "x1^2...xm^2*y + z^2 + x1...xm*(z^2-alpha)^k = alpha.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, points_default):
        p.add_argument("--output", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0, help=f"RNG seed (env {SEED_ENV} wins)")
        p.add_argument("--points", type=_nonneg("points"), default=points_default)
        p.add_argument("--corrupt-phi", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("verify-complement", help="certify C^{m+2}\\H_{a,k} ~ C^{m+2}\\H_{a,k'}")
    p.add_argument("--m", type=_positive("m"), required=True)
    p.add_argument("--alpha", type=_alpha, default=SYM)
    p.add_argument("--k", type=_nonneg("k"), required=True)
    p.add_argument("--kprime", type=_nonneg("kprime"), default=0)
    common(p, 100)

    p = sub.add_parser("classify", help="isomorphism class of V(P_q - c)")
    p.add_argument("--q", required=True, help="polynomial in t, e.g. 't-1'")
    p.add_argument("--c", type=_rational, required=True)
    p.add_argument("--output", choices=("text", "json"), default="text")

    p = sub.add_parser("equivalence", help="decide equivalence of V(P_q1 - c1) and V(P_q2 - c2)")
    p.add_argument("--q1", required=True)
    p.add_argument("--c1", type=_rational, required=True)
    p.add_argument("--q2", required=True)
    p.add_argument("--c2", type=_rational, required=True)
    p.add_argument("--output", choices=("text", "json"), default="text")

    p = sub.add_parser("singularity", help="singular witness or smoothness certificate")
    p.add_argument("--m", type=_positive("m"), required=True)
    p.add_argument("--alpha", type=_alpha, required=True)
    p.add_argument("--k", type=_nonneg("k"), required=True)
    p.add_argument("--output", choices=("text", "json"), default="text")

    p = sub.add_parser("verify-paper", help="run every claim and emit one report")
    p.add_argument("--max-m", type=_positive("max-m"), default=3)
    p.add_argument("--max-k", type=_nonneg("max-k"), default=3)
    p.add_argument("--jobs", type=_positive("jobs"), default=1)
    common(p, 10)
    return parser


def _seed(args) -> int:
    env = os.environ.get(SEED_ENV)
    return int(env) if env is not None else args.seed


def _print_checks(checks, out):
    for name, status in checks:
        print(f"  [{'PASS' if status else 'FAIL'}] {name}", file=out)


def cmd_verify_complement(args, out) -> int:
    params = FamilyParams(args.m, args.k, args.alpha)
    phi = None
    if args.corrupt_phi and args.k >= 1:
        phi = make_Phi(params, x1_power=args.k - 1)
    cert = verify_complement_isomorphism(args.m, args.alpha, args.k, args.kprime, phi=phi)
    rng = random.Random(_seed(args))
    if args.points:
        for k in sorted({args.k, args.kprime}):
            if k >= 1:
                cert.checks.extend(
                    spot_check(params.with_k(k), args.points, rng, phi=phi if k == args.k else None)
                )
    if args.output == "json":
        print(dumps(report_dict(cert)), file=out)
    else:
        print(
            f"complement isomorphism m={args.m} alpha={args.alpha} k={args.k} k'={args.kprime}",
            file=out,
        )
        _print_checks(cert.checks, out)
        print("verdict:", "pass" if cert.ok else "FAIL: " + ", ".join(cert.failed()), file=out)
    return 0 if cert.ok else 1


def _parse_t(text: str):
    return parse(text, T_CONTEXT)


def cmd_classify(args, out) -> int:
    q = _parse_t(args.q)
    fiber = classify_fiber(q, args.c)
    if args.output == "json":
        params = {"q": print_poly(q), "c": str(args.c)}
        print(dumps(report_dict(fiber, params=params)), file=out)
    else:
        print(f"V(P_q - c) with q = {print_poly(q)}, c = {args.c}: {fiber.value}", file=out)
    return 0


def cmd_equivalence(args, out) -> int:
    q1, q2 = _parse_t(args.q1), _parse_t(args.q2)
    verdict = decide_equivalence(q1, args.c1, q2, args.c2)
    ok = True
    checks = []
    if verdict.equivalent:
        ok = verify_equivalence_witness(q1, args.c1, q2, args.c2, verdict)
        checks = [{"name": "witness reproduces q2 and c2", "status": ok}]
    if args.output == "json":
        params = {"q1": print_poly(q1), "c1": str(args.c1), "q2": print_poly(q2), "c2": str(args.c2)}
        print(dumps(report_dict(verdict, params=params, checks=checks)), file=out)
    elif verdict.equivalent:
        print(f"Equivalent: mu = {verdict.mu}, lambda = {verdict.lam}", file=out)
        print(f"  witness verified: {ok}", file=out)
    else:
        print(f"NotEquivalent: {verdict.reason}", file=out)
    return 0 if ok else 1


def cmd_singularity(args, out) -> int:
    report = family_singularity(FamilyParams(args.m, args.k, args.alpha))
    ok = report.verify()
    if args.output == "json":
        print(dumps(report_dict(report)), file=out)
    else:
        print(f"H_{{{args.alpha},{args.k}}} in C^{args.m + 2}: {report.verdict}", file=out)
        if report.witness is not None:
            print("  witness:", ", ".join(f"{n}={v}" for n, v in report.witness.items()), file=out)
        else:
            for name, g in report.multipliers.items():
                if g:
                    print(f"  g_{name} = {print_poly(g)}", file=out)
            print(f"  sum = {print_poly(report.tau)}", file=out)
        if report.caveat:
            print(f"  note: {report.caveat}", file=out)
        print(f"  evidence verified: {ok}", file=out)
    return 0 if ok else 1


def cmd_verify_paper(args, out) -> int:
    cfg = claims.GridConfig(
        ms=tuple(range(1, args.max_m + 1)),
        ks=tuple(range(0, args.max_k + 1)),
        points=args.points,
        seed=_seed(args),
        jobs=args.jobs,
        corrupt_phi=args.corrupt_phi,
    )
    reports = claims.verify_paper(cfg)
    failed = sorted({r["claim"] for r in reports if not report_passed(r)})
    if args.output == "json":
        print(emit_document(reports), file=out)
    else:
        by_claim = {}
        for r in reports:
            total, bad = by_claim.get(r["claim"], (0, []))
            bad_checks = [c["name"] for c in r.get("checks", []) if not c["status"]]
            by_claim[r["claim"]] = (total + 1, bad + bad_checks)
        for claim in sorted(by_claim):
            total, bad = by_claim[claim]
            status = "PASS" if not bad else "FAIL"
            print(f"[{status}] {claim}: {total} report(s)", file=out)
            for name in sorted(set(bad)):
                print(f"    failed check: {name}", file=out)
        print("verdict:", "pass" if not failed else "FAIL: " + ", ".join(failed), file=out)
    return 0 if not failed else 1


COMMANDS = {
    "verify-complement": cmd_verify_complement,
    "classify": cmd_classify,
    "equivalence": cmd_equivalence,
    "singularity": cmd_singularity,
    "verify-paper": cmd_verify_paper,
}


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
