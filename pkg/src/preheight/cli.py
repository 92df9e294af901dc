"""Command line interface: ``preheight <subcommand> ...``.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 resource error.
Rationals are given exactly as ``p`` or ``p/q``; decimals are rejected.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Optional, Sequence

from . import __version__
from .canonical_height import canonical_height, default_bit_budget, DEFAULT_EPS
from .errors import DomainError, ResourceError
from .preimage_curve import embed, fiber_polynomial, gamma, jacobian_spot_check, membership_check
from .quad_map import detect_preperiodic, iterate, iterated_preimages
from .rational_core import (
    count_bounded_height,
    count_naive_bounded,
    format_rational,
    height_bound_from_log,
    naive_height,
    parse_rational,
    weil_height,
)
from .survey import (
    CSV_COLUMNS,
    SweepConfig,
    corollary_bound_report,
    extremal_family,
    fmt_float,
    max_param_height_with_depth5,
    sweep_parameters,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_RESOURCE = 0, 2, 3, 4
RATIONAL_FLAGS = ("--c", "--x", "--b")
DEFAULT_DEPTH = 64


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _nonneg_float(text: str) -> float:
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text!r}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", metavar="FILE", help="write to FILE instead of stdout")

    p = _Parser(prog="preheight", description="Heights and rational preimages for f_c(x) = x^2 + c.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("height", parents=[common], help="naive and Weil height of a rational")
    s.add_argument("value", nargs="?", type=_rational)
    s.add_argument("--x", type=_rational)

    s = sub.add_parser("canon", parents=[common], help="canonical height with error radius")
    s.add_argument("--c", type=_rational, required=True)
    s.add_argument("--x", type=_rational, required=True)
    s.add_argument("--eps", type=_positive_float, default=DEFAULT_EPS)

    s = sub.add_parser("preimages", parents=[common], help="rational iterated preimages of b")
    s.add_argument("--c", type=_rational, required=True)
    s.add_argument("--b", type=_rational, required=True)
    s.add_argument("--depth", type=_positive_int, default=DEFAULT_DEPTH)

    s = sub.add_parser("preperiodic", parents=[common], help="preperiodic or wandering")
    s.add_argument("--c", type=_rational, required=True)
    s.add_argument("--x", type=_rational, required=True)

    s = sub.add_parser("curve", parents=[common], help="embed (c, x, b) on the 5th-preimage curve")
    s.add_argument("--c", type=_rational, required=True)
    s.add_argument("--x", type=_rational, required=True)
    s.add_argument("--b", type=_rational, help="defaults to f_c^5(x)")

    s = sub.add_parser("fiber-poly", parents=[common], help="coefficients of f_c^5(x) - b")
    s.add_argument("--c", type=_rational, required=True)
    s.add_argument("--b", type=_rational, required=True)

    s = sub.add_parser("sweep", parents=[common], help="sweep c of bounded naive height")
    s.add_argument("--b", type=_rational, required=True)
    s.add_argument("--bound", type=_positive_int, required=True, help="naive height cap for c")
    s.add_argument("--depth", type=_positive_int, default=DEFAULT_DEPTH)
    s.add_argument("--eps", type=_positive_float, default=DEFAULT_EPS)
    s.add_argument("--jobs", type=_positive_int, default=1)
    s.add_argument("--gamma", type=_positive_float, default=1.0,
                   help="trial exponent for the preimage-count report (json meta only)")

    s = sub.add_parser("extremal", parents=[common], help="b = f_c^5(0) and h(b)/h(c)")
    s.add_argument("--c", type=_rational, required=True)

    s = sub.add_parser(
        "count-heights", parents=[common],
        help="count rationals of bounded height",
        description="Count rationals x with h(x) <= t, i.e. naive height <= floor(exp(t)). "
                    "When exp(t) is within 4(1+t) ulps of an integer that integer is used, so "
                    "--t log(B) counts naive height <= B.",
    )
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--t", type=_nonneg_float, help="log-height bound")
    g.add_argument("--bound", type=_positive_int, help="naive height bound")
    return p


def _normalize_argv(argv: Sequence[str]) -> list[str]:
    # "--c -1/2" would otherwise be read as an unknown option
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in RATIONAL_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _json_value(v: Any) -> Any:
    if isinstance(v, float):
        return float(fmt_float(v))
    return v


def _csv_value(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    if v is None:
        return ""
    return str(v)


def render(command: str, columns: list[str], rows: list[dict], fmt: str, config: dict,
           extra_meta: Optional[dict] = None) -> str:
    if fmt == "json":
        meta = {"subcommand": command, "version": __version__, "config": config}
        if extra_meta:
            meta.update(extra_meta)
        doc = {"meta": meta, "rows": [{k: _json_value(r[k]) for k in columns} for r in rows]}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_csv_value(r[k]) for k in columns])
    return buf.getvalue()


def _q(x) -> str:
    return format_rational(x)


def cmd_height(args):
    x = args.x if args.x is not None else args.value
    if x is None:
        raise _UsageError("height needs a rational argument")
    rows = [{"x": _q(x), "naive_height": naive_height(x), "h": weil_height(x)}]
    return ["x", "naive_height", "h"], rows, {"x": _q(x)}, None


def cmd_canon(args):
    ch = canonical_height(args.c, args.x, args.eps)
    rows = [{"c": _q(args.c), "x": _q(args.x), "value": ch.value, "radius": ch.radius, "steps": ch.steps}]
    config = {"c": _q(args.c), "x": _q(args.x), "eps": args.eps, "bit_budget": default_bit_budget()}
    return ["c", "x", "value", "radius", "steps"], rows, config, None


def cmd_preimages(args):
    tree = iterated_preimages(args.c, args.b, args.depth)
    rows = [{"x": _q(x), "level": n, "closed": tree.closed} for x, n in tree.items()]
    config = {"c": _q(args.c), "b": _q(args.b), "depth": args.depth}
    return ["x", "level", "closed"], rows, config, {"closed": tree.closed, "total": tree.total}


def cmd_preperiodic(args):
    v = detect_preperiodic(args.c, args.x)
    rows = [{"c": _q(args.c), "x": _q(args.x), "kind": v.kind, "tail_length": v.tail_length,
             "cycle_length": v.cycle_length, "escape_index": v.escape_index}]
    cols = ["c", "x", "kind", "tail_length", "cycle_length", "escape_index"]
    return cols, rows, {"c": _q(args.c), "x": _q(args.x)}, None


def cmd_curve(args):
    b = args.b if args.b is not None else iterate(args.c, args.x, 5)
    p = embed(args.c, args.x, b)
    row = {f"z{i}": _q(z) for i, z in enumerate(p.z)}
    row.update(b=_q(p.b), on_curve=membership_check(p), gamma=_q(gamma(p)),
               smooth=jacobian_spot_check(p))
    cols = ["z0", "z1", "z2", "z3", "z4", "b", "on_curve", "gamma", "smooth"]
    return cols, [row], {"c": _q(args.c), "x": _q(args.x), "b": _q(b)}, None


def cmd_fiber_poly(args):
    poly = fiber_polynomial(args.c, args.b)
    rows = [{"degree": d, "numerator": n, "denominator": q} for d, n, q in poly.rows()]
    return ["degree", "numerator", "denominator"], rows, {"c": _q(args.c), "b": _q(args.b)}, None


def cmd_sweep(args):
    cfg = SweepConfig(b=args.b, c_height_bound=args.bound, depth_cap=args.depth, eps=args.eps)
    records = sweep_parameters(cfg, jobs=args.jobs)
    rows = [r.json_row() if args.format == "json" else dict(zip(CSV_COLUMNS, r.csv_row()))
            for r in records]
    config = {"b": _q(cfg.b), "bound": cfg.c_height_bound, "depth": cfg.depth_cap, "eps": cfg.eps}
    best = max_param_height_with_depth5(records)
    report = corollary_bound_report(records, args.gamma)
    summary = {
        "records": len(records),
        "open_records": sum(not r.closed for r in records),
        "max_h_c_with_depth5": None if best is None else {"c": _q(best[0]), "h_c": _json_value(best[1])},
        "corollary": None if report is None else {
            "gamma_trial": args.gamma,
            "max_total": report.max_total,
            "bound": _json_value(report.bound),
            "satisfied": report.satisfied,
            "implied_constant": _json_value(report.implied_constant),
        },
    }
    return list(CSV_COLUMNS), rows, config, {"summary": summary}


def cmd_extremal(args):
    b, ratio = extremal_family(args.c)
    rows = [{"c": _q(args.c), "b": _q(b), "h_c": weil_height(args.c), "h_b": weil_height(b), "ratio": ratio}]
    return ["c", "b", "h_c", "h_b", "ratio"], rows, {"c": _q(args.c)}, None


def cmd_count_heights(args):
    if args.t is not None:
        t = args.t
        bound = height_bound_from_log(t)
    else:
        bound = args.bound
        t = None
    count = count_bounded_height(t) if t is not None else count_naive_bounded(bound)
    rows = [{"bound": bound, "count": count}]
    return ["bound", "count"], rows, {"t": t, "bound": bound}, None


class _UsageError(Exception):
    pass


COMMANDS = {
    "height": cmd_height,
    "canon": cmd_canon,
    "preimages": cmd_preimages,
    "preperiodic": cmd_preperiodic,
    "curve": cmd_curve,
    "fiber-poly": cmd_fiber_poly,
    "sweep": cmd_sweep,
    "extremal": cmd_extremal,
    "count-heights": cmd_count_heights,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        columns, rows, config, extra = COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"preheight: error: {exc}", file=stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"preheight: domain error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except ResourceError as exc:
        print(f"preheight: resource error: {exc}", file=stderr)
        return EXIT_RESOURCE

    text = render(args.command, columns, rows, args.format, config, extra)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
