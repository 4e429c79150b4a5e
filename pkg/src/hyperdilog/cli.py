"""Command-line front end.

    hyperdilog verify [ID ...] [--tol T] [--max-evals N] [--format text|json|csv] [--out PATH]
    hyperdilog eval {li2,rogers,alpha,map-forward,map-inverse,jacobian} [ARG ...]
    hyperdilog region U_MAX N [--format text|json|csv] [--out PATH]
    hyperdilog list

Defaults for --tol, --max-evals and --format may also come from the
environment as HYPERDILOG_TOL, HYPERDILOG_MAX_EVALS and HYPERDILOG_FORMAT;
flags win. Exit status: 0 all passed, 1 an identity failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import change_of_variables as cov
from .errors import DomainError, UnknownIdentityError
from .identities import registry, verify_all
from .quadrature import QuadConfig
from .report import FORMATS, render_region, render_report
from .special_functions import const_alpha, li2, rogers_L

PROG = "hyperdilog"
ENV_PREFIX = "HYPERDILOG_"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# what -> arity
EVAL_TARGETS = {
    "li2": 1,
    "rogers": 1,
    "alpha": 0,
    "map-forward": 2,
    "map-inverse": 2,
    "jacobian": 2,
}


class UsageError(Exception):
    pass


def _env(name: str, environ) -> str | None:
    val = environ.get(ENV_PREFIX + name)
    return val if val not in (None, "") else None


def fmt16(x: float) -> str:
    """16 significant digits, trailing zeros kept; exact zero prints as 0."""
    return "0" if x == 0.0 else format(x, "#.16g")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=PROG, description="Numeric checks for the hyperbolic BCK map, "
                                "Li2 identities and related definite integrals.")
    sub = p.add_subparsers(dest="command", required=True)

    def out_opts(sp, with_quad):
        sp.add_argument("--format", choices=FORMATS, default=None, help="output format (default text)")
        sp.add_argument("--out", type=Path, default=None, help="write output to this file")
        if with_quad:
            sp.add_argument("--tol", type=float, default=None, help="quadrature abs_tol (default 1e-12)")
            sp.add_argument("--max-evals", type=int, default=None, dest="max_evals",
                            help="integrand evaluation budget per integral (default 1e7)")

    v = sub.add_parser("verify", help="verify identities (all by default)")
    v.add_argument("ids", nargs="*", metavar="ID")
    v.add_argument("--jobs", type=int, default=1, help="verify identities in parallel threads")
    out_opts(v, True)

    e = sub.add_parser("eval", help="evaluate a function or the map")
    e.add_argument("what", choices=sorted(EVAL_TARGETS))
    e.add_argument("args", nargs="*", type=float)

    r = sub.add_parser("region", help="sample the boundary curves of S")
    r.add_argument("u_max", type=float)
    r.add_argument("n", type=int)
    out_opts(r, False)

    sub.add_parser("list", help="list registered identities")
    return p


def _resolve(args, environ) -> None:
    """Fill unset flags from the environment, then from defaults."""
    if hasattr(args, "format"):
        fmt = args.format or _env("FORMAT", environ) or "text"
        if fmt not in FORMATS:
            raise UsageError(f"invalid format {fmt!r}; choose from {', '.join(FORMATS)}")
        args.format = fmt
    if hasattr(args, "tol"):
        try:
            tol = args.tol if args.tol is not None else float(_env("TOL", environ) or 1e-12)
            mev = args.max_evals if args.max_evals is not None else int(_env("MAX_EVALS", environ) or 10_000_000)
            args.config = QuadConfig(abs_tol=tol, max_evaluations=mev)
        except ValueError as exc:
            raise UsageError(str(exc)) from None


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def cmd_verify(args) -> int:
    try:
        rep = verify_all(args.config, ids=args.ids or None, jobs=max(1, args.jobs))
    except UnknownIdentityError as exc:
        raise UsageError(str(exc)) from None
    _emit(render_report(rep, args.format), args.out)
    return EXIT_OK if rep.all_passed else EXIT_FAIL


def cmd_eval(args) -> int:
    arity = EVAL_TARGETS[args.what]
    if len(args.args) != arity:
        raise UsageError(f"eval {args.what} takes {arity} argument(s), got {len(args.args)}")
    a = args.args
    if args.what == "li2":
        text = fmt16(li2(a[0]).value)
    elif args.what == "rogers":
        text = fmt16(rogers_L(a[0]))
    elif args.what == "alpha":
        text = fmt16(const_alpha())
    elif args.what == "map-forward":
        q = cov.forward(cov.MapPoint(a[0], a[1]))
        text = f"x={fmt16(q.x)} y={fmt16(q.y)}"
    elif args.what == "map-inverse":
        p = cov.inverse(cov.SquarePoint(a[0], a[1]))
        text = f"u={fmt16(p.u)} v={fmt16(p.v)}"
    else:
        text = fmt16(cov.jacobian(cov.MapPoint(a[0], a[1])))
    print(text)
    return EXIT_OK


def cmd_region(args) -> int:
    rows = cov.region_rows(args.u_max, args.n)
    interior = cov.region_interior(args.u_max, args.n) if args.format == "json" else []
    _emit(render_region(cov.ALPHA, rows, interior, args.format), args.out)
    return EXIT_OK


def cmd_list(args) -> int:
    for ident in registry():
        tag = " [external]" if ident.external else ""
        print(f"{ident.id:<4} tol={ident.tolerance:.0e}  {ident.reference}{tag}")
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "eval": cmd_eval, "region": cmd_region, "list": cmd_list}


def main(argv: list[str] | None = None, environ=None) -> int:
    environ = os.environ if environ is None else environ
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _resolve(args, environ)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"{PROG}: domain error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
