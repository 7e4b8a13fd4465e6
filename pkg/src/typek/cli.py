"""Command-line front end: ``typek verify|lattice|series``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from sympy import factorint

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _power_string(n: int) -> str:
    if n in (0, 1):
        return str(n)
    return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(factorint(n).items()))


def _emit(text: str, as_json: bool, payload, report_file: Optional[str]) -> None:
    out = json.dumps(payload, indent=2, ensure_ascii=False) + "\n" if as_json else text
    sys.stdout.write(out)
    if report_file:
        with open(report_file, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")


def cmd_verify(args) -> int:
    from .suites import SUITES, run_all, run_suite

    if args.suite == "all":
        rep = run_all(args.trunc, args.jobs)
    elif args.suite in SUITES:
        rep = run_suite(args.suite, args.trunc)
    else:  # pragma: no cover - argparse restricts choices
        return EXIT_USAGE
    _emit(rep.to_text(), args.json, rep.to_json(), args.report)
    return EXIT_OK if rep.ok else EXIT_FAIL


def lattice_info(expr: str) -> dict:
    from .discform import GuardExceeded, discriminant_group
    from .lattice import canonical_expr, disc, is_even, parse_lattice, signature

    L = parse_lattice(expr)
    d = disc(L)
    info = {
        "expr": canonical_expr(expr),
        "rank": L.rank,
        "signature": list(signature(L)) if d else None,
        "disc": d,
        "abs_disc": _power_string(abs(d)),
        "even": is_even(L),
    }
    if d and is_even(L):
        try:
            info["discriminant_group"] = list(discriminant_group(L).orders)
        except GuardExceeded as exc:
            info["discriminant_group"] = f"skipped: {exc}"
    return info


def cmd_lattice(args) -> int:
    from .lattice import LatticeExprError

    try:
        if args.lattice_cmd == "info":
            info = lattice_info(args.expr)
            text = "\n".join(f"{k}: {v}" for k, v in info.items()) + "\n"
            _emit(text, args.json, info, args.report)
            return EXIT_OK
        return _lattice_eq(args)
    except LatticeExprError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def _lattice_eq(args) -> int:
    from .discform import GuardExceeded, fingerprints_equal
    from .lattice import disc, is_even, parse_lattice
    from .qspace import q_equivalent

    L1, L2 = parse_lattice(args.expr1), parse_lattice(args.expr2)
    if disc(L1) == 0 or disc(L2) == 0:
        sys.stderr.write("error: both lattices must be nondegenerate\n")
        return EXIT_USAGE
    res = q_equivalent(L1, L2)
    payload = {
        "left": L1.label,
        "right": L2.label,
        "q_equivalent": res.equivalent,
        "reason": res.reason,
        "left_invariants": res.left.to_json(),
        "right_invariants": res.right.to_json(),
        "same_gram": L1.gram == L2.gram,
    }
    if is_even(L1) and is_even(L2):
        try:
            payload["fingerprints_equal"] = fingerprints_equal(L1, L2)
        except GuardExceeded as exc:
            payload["fingerprints_equal"] = f"skipped: {exc}"
    verdict = "equivalent over Q" if res.equivalent else f"not equivalent over Q ({res.reason})"
    text = f"{L1.label}  vs  {L2.label}: {verdict}\n"
    if "fingerprints_equal" in payload:
        text += f"discriminant-form fingerprints equal: {payload['fingerprints_equal']}\n"
    _emit(text, args.json, payload, args.report)
    return EXIT_OK if res.equivalent else EXIT_FAIL


def cmd_series(args) -> int:
    from .series import eta, theta

    T = Fraction(8 if args.trunc is None else args.trunc)
    s = eta(T) if args.name == "eta" else theta(int(args.name[-1]), T)
    payload = {"series": args.name, "trunc": str(T), "terms": {str(e): str(c) for e, c in s.terms().items() if e <= T}}
    text = "\n".join(f"{e} {c}" for e, c in payload["terms"].items()) + "\n"
    _emit(text, args.json, payload, args.report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    from .suites import SUITES

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--report", metavar="FILE", help="also write the JSON report to FILE")

    p = argparse.ArgumentParser(prog="typek", description="Exact checks for type-K lattices and periods.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=["all", *SUITES])
    v.add_argument("--trunc", type=int, help="series truncation (default 8 / 6 / 20 by family)")
    v.add_argument("--jobs", type=int, default=1, help="parallel suites for 'all'")
    v.set_defaults(func=cmd_verify)

    lat = sub.add_parser("lattice", help="inspect lattice expressions")
    lsub = lat.add_subparsers(dest="lattice_cmd", required=True)
    info = lsub.add_parser("info", parents=[common], help="rank, signature, discriminant, parity")
    info.add_argument("expr")
    eq = lsub.add_parser("eq", parents=[common], help="rational equivalence of two lattices")
    eq.add_argument("expr1")
    eq.add_argument("expr2")
    lat.set_defaults(func=cmd_lattice)

    s = sub.add_parser("series", parents=[common], help="print a theta or eta expansion")
    s.add_argument("name", choices=["theta2", "theta3", "theta4", "eta"])
    s.add_argument("--trunc", type=int, help="largest exponent printed (default 8)")
    s.set_defaults(func=cmd_series)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "trunc", None) is not None and args.trunc < 0:
        parser.print_usage(sys.stderr)
        sys.stderr.write("error: --trunc must be nonnegative\n")
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
