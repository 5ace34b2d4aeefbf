"""Command line entry point for the cmcalg tools."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .cmc import CmcContext, CriticalPointError, cmc_residual, exact_H_squared, \
    mean_curvature_at, membership_certificate
from .groebner import ResourceGuardError, buchberger
from .orders import MonomialOrder
from .parse import ParseError, parse_poly, read_generator_file
from .poly import VarSet, to_rational

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class InputError(Exception):
    pass


def _geometric_varset(n: int) -> VarSet:
    if n < 2:
        raise InputError("--n must be at least 2")
    return VarSet([f"x{i}" for i in range(1, n + 1)], n)


def _rational(text: str):
    try:
        return to_rational(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


def _context(args) -> CmcContext:
    vs = _geometric_varset(args.n)
    f = parse_poly(args.f, vs)
    H = _rational(args.H) if getattr(args, "H", None) is not None else 0
    return CmcContext(args.n, H, f)


def _point(text: str, n: int):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise InputError(f"--point needs {n} comma-separated coordinates")
    try:
        return [to_rational(p) for p in parts], True
    except (ValueError, TypeError):
        pass
    try:
        return [float(p) for p in parts], False
    except ValueError:
        raise InputError(f"bad coordinates {text!r}") from None


def cmd_curvature(args) -> int:
    ctx = _context(args)
    point, exact = _point(args.point, args.n)
    if exact:
        print(f"H^2 = {exact_H_squared(ctx, point)}")
    print(f"H = {mean_curvature_at(ctx, point):.15g}")
    return EXIT_OK


def cmd_residual(args) -> int:
    print(cmc_residual(_context(args)))
    return EXIT_OK


def cmd_membership(args) -> int:
    cert = membership_certificate(_context(args))
    print(f"cofactor: {cert.cofactor}")
    print(f"remainder: {cert.remainder}")
    print("certified: u lies in <f>" if cert.certified else "not certified: nonzero remainder")
    return EXIT_OK if cert.certified else EXIT_MISMATCH


def cmd_groebner(args) -> int:
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    if not names or len(set(names)) != len(names):
        raise InputError("--vars needs distinct comma-separated names")
    vs = VarSet(names)
    polys = read_generator_file(args.input, vs)
    if not polys:
        raise InputError(f"{args.input} contains no polynomials")
    gb = buchberger(polys, MonomialOrder(args.order, names),
                    max_terms=args.max_terms, max_pairs=args.max_pairs)
    print(f"# reduced basis, {gb.order.describe()}, {len(gb)} elements")
    for g in gb:
        print(g)
    return EXIT_OK


def _finish_report(report, args) -> int:
    if args.report:
        Path(args.report).write_text(report.to_json(include_timing=not args.no_timing),
                                     encoding="utf-8")
    sys.stdout.write(report.transcript())
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_case1(args) -> int:
    from .pipeline.case1 import STAGE_COUNT, run_case1
    if args.stage is not None and not 1 <= args.stage <= STAGE_COUNT:
        raise InputError(f"--stage must be in 1..{STAGE_COUNT}")
    return _finish_report(run_case1(args.stage), args)


def cmd_case2(args) -> int:
    from .pipeline.case2 import run_case2
    return _finish_report(run_case2(), args)


def cmd_check_known(args) -> int:
    from .numeric import check_known
    results = check_known(samples=args.samples, seed=args.seed)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cmcalg", description=__doc__)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curvature", help="mean curvature of {f = 0} at a point")
    p.add_argument("--f", required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--point", required=True, help="comma-separated coordinates, p/q allowed")
    p.set_defaults(func=cmd_curvature)

    for name, func, text in (("residual", cmd_residual, "print the residual polynomial u"),
                             ("membership", cmd_membership, "divide u by f")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--f", required=True)
        p.add_argument("--H", required=True, help="mean curvature, p/q allowed")
        p.add_argument("--n", type=int, default=3)
        p.set_defaults(func=func)

    p = sub.add_parser("groebner", help="reduced Groebner basis of a generator file")
    p.add_argument("--input", required=True)
    p.add_argument("--vars", required=True, help="variables, highest priority first")
    p.add_argument("--order", choices=("lex", "grlex", "grevlex"), default="grevlex")
    p.add_argument("--max-terms", type=int, default=None)
    p.add_argument("--max-pairs", type=int, default=None)
    p.set_defaults(func=cmd_groebner)

    p = sub.add_parser("case1", help="replay Case I")
    p.add_argument("--stage", type=int, default=None, help="stop after this stage")
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--no-timing", action="store_true", help="write wall_ms as 0")
    p.set_defaults(func=cmd_case1)

    p = sub.add_parser("case2", help="replay Case II")
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--no-timing", action="store_true", help="write wall_ms as 0")
    p.set_defaults(func=cmd_case2)

    p = sub.add_parser("check-known", help="spheres, cylinder and plane")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check_known)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ParseError, InputError, CriticalPointError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
