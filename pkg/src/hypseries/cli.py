"""Command-line front end.

Exit codes: 0 success (all verified identities pass), 1 a verification
failed, 2 usage error (bad flags, malformed numbers, arguments outside a
series' domain), 3 convergence or precision failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .catalog import NotFoundError, format_number, load_catalog, matches, verify_all, verify_identity
from .catalog.expr import CONSTANTS, SchemaError, evaluate_params
from .catalog.ops import OPS, call, lookup
from .mpcore import ConvergenceError, DomainError, PrecCtx, PrecisionError, to_complex

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

_KEYWORD_PARAMS = {"order", "variant", "method"}
_SERIES_FLAGS = ("s", "tau", "k", "r", "n", "p", "x", "y", "z", "q", "t", "order")


class UsageError(Exception):
    pass


def _digits(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"digits must be an integer, got {text!r}") from None
    if d < 10:
        raise argparse.ArgumentTypeError("digits must be at least 10")
    return d


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _parse_value(name: str, text: str, ctx: PrecCtx):
    """CLI literal to a parameter value: keyword, constant alias, rational, JSON tree or complex."""
    if name in _KEYWORD_PARAMS:
        return text
    t = text.strip()
    if t in CONSTANTS:
        return t
    if t.startswith("["):
        try:
            return json.loads(t)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--{name}: malformed expression {text!r}: {exc}") from None
    if t.lower() in ("true", "false"):
        return t.lower() == "true"
    try:
        to_complex(t, ctx)
    except DomainError:
        raise UsageError(f"--{name}: malformed numeric literal {text!r}") from None
    return t


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypseries", description="High-precision hyperbolic series and lattice sums.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_digits=30):
        p.add_argument("--digits", type=_digits, default=default_digits, help="significant digits (>= 10)")
        p.add_argument("--format", choices=("text", "json"), default="text")

    ev = sub.add_parser("eval", help="evaluate a named series")
    ev.add_argument("series", help=f"one of: {', '.join(sorted(OPS))}")
    for flag in _SERIES_FLAGS:
        ev.add_argument(f"--{flag}", dest=f"arg_{flag}", metavar="VALUE")
    ev.add_argument("--param", action="append", default=[], metavar="NAME=VALUE", help="any other series parameter")
    common(ev)

    ve = sub.add_parser("verify", help="verify catalog identities")
    sel = ve.add_mutually_exclusive_group(required=True)
    sel.add_argument("--id", dest="ident")
    sel.add_argument("--all", action="store_true")
    sel.add_argument("--filter", metavar="TAG")
    ve.add_argument("--catalog", help="catalog file (default: $HYPSERIES_CATALOG or the shipped catalog)")
    ve.add_argument("--workers", type=int, default=1)
    common(ve)

    co = sub.add_parser("constants", help="print pi, varpi and varpi_tilde")
    common(co)

    hu = sub.add_parser("hurwitz", help="exact Hurwitz numbers")
    grp = hu.add_mutually_exclusive_group(required=True)
    grp.add_argument("--index", type=int, help="a positive multiple of 4")
    grp.add_argument("--upto", type=int, help="dump every index 4, 8, ... up to this one")
    hu.add_argument("--div2", action="store_true", help="2-division variant")
    common(hu)

    ca = sub.add_parser("catalog", help="list catalog identities")
    ca.add_argument("--catalog")
    ca.add_argument("--filter", metavar="TAG")
    ca.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _cmd_eval(args, out) -> int:
    ctx = PrecCtx(args.digits)
    try:
        op = lookup(args.series)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    raw: dict[str, str] = {}
    for flag in _SERIES_FLAGS:
        v = getattr(args, f"arg_{flag}")
        if v is not None:
            raw[flag] = v
    for item in args.param:
        if "=" not in item:
            raise UsageError(f"--param expects NAME=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        raw[k.strip()] = v
    # Z2 takes two exponents; --s means the first
    if op.name == "Z2" and "s" in raw:
        raw["s1"] = raw.pop("s")
    params = {k: _parse_value(k, v, ctx) for k, v in raw.items()}
    try:
        value = call(op.name, evaluate_params(params, ctx), ctx)
    except SchemaError as exc:
        raise UsageError(str(exc)) from None
    text = format_number(value, args.digits + 2, ctx)
    if args.format == "json":
        out.write(_dump({"digits": args.digits, "series": op.name, "value": text}) + "\n")
    else:
        out.write(text + "\n")
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    ctx = PrecCtx(args.digits)
    cat = load_catalog(args.catalog)
    if args.ident:
        reports = [verify_identity(args.ident, ctx, cat)]
    else:
        reports = verify_all(None if args.all else args.filter, ctx, cat, workers=max(1, args.workers))
    if args.format == "json":
        payload = reports[0].to_dict() if args.ident else [r.to_dict() for r in reports]
        out.write(_dump(payload) + "\n")
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            extra = f"  ({r.error})" if r.error else ""
            out.write(f"{status}  {r.id:32s} abs_err={r.abs_err or '-':10s} {r.elapsed:8.3f}s{extra}\n")
        n_fail = sum(not r.passed for r in reports)
        out.write(f"{len(reports) - n_fail}/{len(reports)} passed at {args.digits} digits\n")
    return EXIT_FAIL if any(not r.passed for r in reports) else EXIT_OK


def _cmd_constants(args, out) -> int:
    from .hurwitz import lemniscate_constants

    ctx = PrecCtx(args.digits)
    vp, vt = lemniscate_constants(ctx)
    vals = {"pi": ctx.mp.pi, "varpi": vp, "varpi_tilde": vt}
    n = args.digits + 2
    if args.format == "json":
        out.write(_dump({"digits": args.digits, **{k: format_number(v, n, ctx) for k, v in vals.items()}}) + "\n")
    else:
        for k, v in vals.items():
            out.write(f"{k:12s} {format_number(v, n, ctx)}\n")
    return EXIT_OK


def _cmd_hurwitz(args, out) -> int:
    from .hurwitz import hurwitz_number

    ctx = PrecCtx(args.digits)
    variant = "div2" if args.div2 else "full"
    indices = [args.index] if args.index is not None else list(range(4, args.upto + 1, 4))
    if not indices:
        raise UsageError("--upto must be at least 4")
    rows = []
    for idx in indices:
        try:
            rows.append((idx, hurwitz_number(idx, variant, ctx)))
        except DomainError as exc:
            raise UsageError(str(exc)) from None
    if args.format == "json":
        data = [{"index": i, "value": str(v), "variant": variant} for i, v in rows]
        out.write(_dump(data[0] if args.index is not None else data) + "\n")
    else:
        name = "H1" if args.div2 else "H"
        for i, v in rows:
            out.write(f"{name}_{i} = {v}\n")
    return EXIT_OK


def _cmd_catalog(args, out) -> int:
    cat = load_catalog(args.catalog)
    items = [ident for ident in cat.values() if matches(ident, args.filter)]
    if args.format == "json":
        out.write(_dump([{"description": i.description, "id": i.id, "tags": list(i.tags)} for i in items]) + "\n")
    else:
        for i in items:
            out.write(f"{i.id:32s} [{','.join(i.tags)}] {i.description}\n")
    return EXIT_OK


_COMMANDS = {
    "eval": _cmd_eval,
    "verify": _cmd_verify,
    "constants": _cmd_constants,
    "hurwitz": _cmd_hurwitz,
    "catalog": _cmd_catalog,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    """Run the CLI on ``argv`` and return the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, out)
    except (UsageError, NotFoundError, SchemaError) as exc:
        err.write(f"hypseries {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except (ConvergenceError, PrecisionError) as exc:
        err.write(f"hypseries {args.command}: numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except DomainError as exc:
        err.write(f"hypseries {args.command}: error: {exc}\n")
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
