"""Command-line front end.

Exit status: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .closedforms import (
    TheoremParams,
    closed_form_functional,
    random_params,
    verify_theorem,
)
from .coboundary import RElement, cybe_defect
from .dual import GuardRingViolation, delta_mu, dual_bracket_bruteforce, rational_series_coeffs, translate_space_dim
from .parser import ParseError, parse_functional, parse_poly, parse_univariate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULTS = {
    "T42": dict(m=2, n=3),
    "T43": dict(m=1, coeffs="1,2"),
    "T45": dict(k=1, l=1, support="2,2;3,3"),
    "T46": {},
}


class UsageError(Exception):
    pass


def _rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad rational list {text!r}") from exc


def _support(text: str) -> list[tuple[int, int]]:
    pts = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        try:
            i, j = (int(v) for v in chunk.split(","))
        except ValueError as exc:
            raise UsageError(f"bad support point {chunk!r}; use 'i,j;i,j'") from exc
        pts.append((i, j))
    return pts


def theorem_params(name: str, args) -> TheoremParams:
    tid = name.upper()
    if tid not in DEFAULTS:
        raise UsageError(f"unknown theorem {name!r}")
    d = DEFAULTS[tid]

    def get(key):
        val = getattr(args, key, None)
        return d.get(key) if val is None else val

    if tid == "T42":
        return TheoremParams.t42(int(get("m")), int(get("n")))
    if tid == "T43":
        return TheoremParams.t43(int(get("m")), _rationals(get("coeffs")))
    if tid == "T45":
        pts = _support(get("support"))
        coeffs = _rationals(args.coeffs) if getattr(args, "coeffs", None) else [Fraction(1)] * len(pts)
        if len(coeffs) != len(pts):
            raise UsageError("--coeffs must give one coefficient per support point")
        return TheoremParams.t45(int(get("k")), int(get("l")), dict(zip(pts, coeffs)))
    return TheoremParams.t46()


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


# -- subcommands ------------------------------------------------------------


def cmd_verify(args) -> int:
    names = ["T42", "T43", "T45", "T46"] if args.theorem == "all" else [args.theorem.upper()]
    plist = [theorem_params(n, args) for n in names]
    if args.random:
        rng = random.Random(args.seed)
        for n in names:
            if n == "T46":  # no free parameters
                continue
            plist.extend(random_params(n, rng) for _ in range(args.random))
    reports = []
    for p in plist:
        reports.append(verify_theorem(p, window=args.window, jacobi=not args.no_jacobi))
    timing = not args.no_timing
    if args.format == "json":
        payload = [r.as_dict(timing) for r in reports]
        print(json.dumps(payload[0] if len(payload) == 1 else payload))
    else:
        print("\n\n".join(r.to_text(timing) for r in reports))
    return EXIT_OK if all(r.status == "pass" for r in reports) else EXIT_FAIL


def cmd_cybe(args) -> int:
    r = RElement(parse_poly(args.A), parse_poly(args.B))
    defect = cybe_defect(r)
    status = "pass" if defect.is_zero() else "fail"
    _emit(args, f"C(r) = {defect}", {"A": str(r.A), "B": str(r.B), "r": str(r), "defect": str(defect), "status": status})
    return EXIT_OK if defect.is_zero() else EXIT_FAIL


def cmd_delta(args) -> int:
    u = parse_functional(args.functional)
    d = delta_mu(u)
    _emit(args, f"Delta({u}) = {d}", {"functional": str(u), "delta": str(d)})
    return EXIT_OK


def cmd_bracket(args) -> int:
    p = theorem_params(args.theorem, args)
    u, v = parse_functional(args.u), parse_functional(args.v)
    out = closed_form_functional(p, u, v)
    _emit(args, str(out), {"theorem": p.id, "params": p.as_dict(), "u": str(u), "v": str(v), "bracket": str(out)})
    return EXIT_OK


def cmd_oracle(args) -> int:
    r = RElement(parse_poly(args.A), parse_poly(args.B))
    u, v = parse_functional(args.u), parse_functional(args.v)
    window = (args.window, args.window) if args.window else None
    try:
        out = dual_bracket_bruteforce(u, v, r, window)
    except GuardRingViolation as exc:
        _emit(args, f"guard ring violation: {exc}", {"error": "GuardRingViolation", "cells": [list(c) for c in exc.cells]})
        return EXIT_FAIL
    _emit(args, str(out), {"A": str(r.A), "B": str(r.B), "u": str(u), "v": str(v), "window": list(window) if window else None, "bracket": str(out)})
    return EXIT_OK


def cmd_translate_dim(args) -> int:
    u = parse_functional(args.functional)
    dim = translate_space_dim(u, args.action, args.window)
    _emit(args, str(dim), {"functional": str(u), "action": args.action, "window": [args.window, args.window], "dim": dim})
    return EXIT_OK


def cmd_series(args) -> int:
    g, h = parse_univariate(args.g), parse_univariate(args.h)
    seq = rational_series_coeffs(g, h, args.N)
    vals = [str(c) for c in seq]
    _emit(args, ", ".join(vals), {"g": args.g, "h": args.h, "N": args.N, "coeffs": vals})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--m", type=int)
    params.add_argument("--n", type=int)
    params.add_argument("--coeffs", help="comma separated rationals, e.g. '1,-1/2,3'")
    params.add_argument("--k", type=int)
    params.add_argument("--l", type=int)
    params.add_argument("--support", help="semicolon separated points, e.g. '2,2;3,3'")

    ap = argparse.ArgumentParser(prog="poisson-bialg", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common, params], help="certify a closed form against the oracle")
    p.add_argument("theorem", choices=("t42", "t43", "t45", "t46", "all"))
    p.add_argument("--window", type=int, default=8)
    p.add_argument("--random", type=int, default=0, help="also verify this many random parameter sets")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-jacobi", action="store_true")
    p.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0 for reproducible output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cybe", parents=[common], help="classical Yang-Baxter defect of A(x)B - B(x)A")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.set_defaults(func=cmd_cybe)

    p = sub.add_parser("delta", parents=[common], help="cobracket of a functional")
    p.add_argument("--functional", required=True)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("bracket", parents=[common, params], help="closed-form dual bracket")
    p.add_argument("theorem", choices=("t42", "t43", "t45", "t46"))
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("oracle", parents=[common], help="brute-force dual bracket")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--window", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("translate-dim", parents=[common], help="dimension of a translate space")
    p.add_argument("--functional", required=True)
    p.add_argument("--action", choices=("product", "poisson"), required=True)
    p.add_argument("--window", type=int, default=8)
    p.set_defaults(func=cmd_translate_dim)

    p = sub.add_parser("series", parents=[common], help="power-series coefficients of g/h")
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("-N", type=int, default=10)
    p.set_defaults(func=cmd_series)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
