"""Command-line front end.

Thin orchestration over the library modules: parse flags, run the
requested engine, emit the trace in the chosen format.  All numerics
live in the library.

Exit codes: 0 success, 2 usage or expression errors, 3 convergence or
precision failures, 4 segmentation failures, 5 nesting violations.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import curve as curve_mod
from . import pi_engine, report
from . import oracle as oracle_mod
from . import rectify as rectify_mod
from .errors import (DidNotConverge, DomainError, NonMonotoneCurve, NotNested,
                     ParseError, PrecisionExhausted, TooOscillatory,
                     UnsupportedK)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONVERGENCE = 3
EXIT_SEGMENTATION = 4
EXIT_NESTING = 5

PRECISION_ENV = "CAVEX_PRECISION_BITS"

_UNSET = object()


def _parse_precision(text: str):
    if text == "native":
        return None
    try:
        bits = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected an integer bit count or 'native', got {text!r}")
    if bits < 8:
        raise argparse.ArgumentTypeError("precision must be at least 8 bits")
    return bits


def _default_precision():
    return os.environ.get(PRECISION_ENV, str(pi_engine.DEFAULT_PRECISION_BITS))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavex",
        description="Certified enclosures of pi and of curve arc-lengths.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pi", help="polygon-doubling enclosure trace for pi")
    p.add_argument("--k", type=int, choices=pi_engine.SUPPORTED_K, required=True)
    stop = p.add_mutually_exclusive_group()
    stop.add_argument("--stages", type=int)
    stop.add_argument("--width-tol", type=float)
    p.add_argument("--precision-bits", type=_parse_precision, default=_UNSET,
                   help="fractional bits, or 'native' for binary64"
                        f" (default: ${PRECISION_ENV} or"
                        f" {pi_engine.DEFAULT_PRECISION_BITS})")
    p.add_argument("--format", choices=("csv", "json", "table"), default="table")
    p.add_argument("--out")
    p.add_argument("--naive-recurrence", action="store_true",
                   help="use the cancellation-prone doubling form")

    a = sub.add_parser("arclen", help="certified arc-length enclosure")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--curve", choices=curve_mod.registry_names())
    src.add_argument("--fn")
    a.add_argument("--from", dest="from_x", type=float)
    a.add_argument("--to", dest="to_x", type=float)
    a.add_argument("--tol", type=float, default=1e-6)
    a.add_argument("--max-stages", type=int, default=rectify_mod.DEFAULT_MAX_STAGES)
    a.add_argument("--format", choices=("csv", "json", "table"), default="table")
    a.add_argument("--out")
    a.add_argument("--oracle", action="store_true",
                   help="append the quadrature value and agreement delta")

    m = sub.add_parser("metric-demo",
                       help="taxicab vs secant measures over random partitions")
    msrc = m.add_mutually_exclusive_group(required=True)
    msrc.add_argument("--curve", choices=curve_mod.registry_names())
    msrc.add_argument("--fn")
    m.add_argument("--from", dest="from_x", type=float)
    m.add_argument("--to", dest="to_x", type=float)
    m.add_argument("--partitions", type=int, default=10)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--format", choices=("csv", "json", "table"), default="table")
    m.add_argument("--out")

    c = sub.add_parser("compare", help="nested-curve length comparison")
    c.add_argument("--inner", required=True)
    c.add_argument("--outer", required=True)
    c.add_argument("--from", dest="from_x", type=float, required=True)
    c.add_argument("--to", dest="to_x", type=float, required=True)
    c.add_argument("--tol", type=float, default=1e-7)
    c.add_argument("--out")

    s = sub.add_parser("serve", help="run the HTTP service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8000)

    return parser


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _resolve_curve(args) -> curve_mod.Curve:
    return curve_mod.resolve(
        curve_name=args.curve,
        expression=args.fn,
        a=args.from_x,
        b=args.to_x,
    )


def _cmd_pi(args) -> int:
    bits = args.precision_bits
    if bits is _UNSET:
        bits = _parse_precision(_default_precision())
    stages, width_tol = args.stages, args.width_tol
    if stages is None and width_tol is None:
        stages = 10
    trace = pi_engine.run(args.k, max_stages=stages, width_tol=width_tol,
                          precision_bits=bits, naive=args.naive_recurrence)
    renderers = {"csv": report.pi_trace_csv, "json": report.pi_trace_json,
                 "table": report.pi_trace_table}
    _emit(renderers[args.format](trace), args.out)
    if trace.exhausted:
        print("precision exhausted before the stop criterion", file=sys.stderr)
        return EXIT_CONVERGENCE
    if width_tol is not None and float(trace.final.width) > width_tol:
        return EXIT_CONVERGENCE
    return EXIT_OK


def _render_rectify(result, fmt, quad=None) -> str:
    if fmt == "csv":
        return report.rectify_csv(result)
    if fmt == "json":
        return report.rectify_json(result, quad)
    return report.rectify_table(result, quad)


def _cmd_arclen(args) -> int:
    cur = _resolve_curve(args)
    try:
        result = rectify_mod.rectify(cur, args.tol, max_stages=args.max_stages)
    except DidNotConverge as exc:
        if exc.result is not None:
            _emit(_render_rectify(exc.result, args.format), args.out)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    quad = None
    if args.oracle:
        quad = oracle_mod.arclength_integral(cur, cur.a, cur.b, args.tol / 10.0)
    _emit(_render_rectify(result, args.format, quad), args.out)
    return EXIT_OK


def _cmd_metric_demo(args) -> int:
    cur = _resolve_curve(args)
    if args.partitions < 1:
        raise DomainError("--partitions must be >= 1")
    quad = oracle_mod.arclength_integral(cur, cur.a, cur.b, 1e-10)
    rows = []
    for i, partition in enumerate(
            rectify_mod.random_partitions(cur.a, cur.b, args.partitions, args.seed)):
        rows.append({
            "partition": i,
            "points": partition.size,
            "taxicab": rectify_mod.taxicab_measure(cur, partition),
            "secant": rectify_mod.secant_measure(cur, partition),
            "oracle": quad.value,
        })
    renderers = {"csv": report.metric_demo_csv, "json": report.metric_demo_json,
                 "table": report.metric_demo_table}
    _emit(renderers[args.format](rows), args.out)
    return EXIT_OK


def _cmd_compare(args) -> int:
    inner = curve_mod.from_expression(args.inner, args.from_x, args.to_x)
    outer = curve_mod.from_expression(args.outer, args.from_x, args.to_x)
    comparison = rectify_mod.compare_nested(inner, outer, tol=args.tol)
    lines = [
        f"inner [{report.format_float(comparison.inner_lower)},"
        f" {report.format_float(comparison.inner_upper)}]",
        f"outer [{report.format_float(comparison.outer_lower)},"
        f" {report.format_float(comparison.outer_upper)}]",
        f"verdict: inner is {'shorter' if comparison.inner_is_shorter else 'NOT provably shorter'}"
        f" (ordering consistent: {comparison.ordering_consistent})",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    handlers = {
        "pi": _cmd_pi,
        "arclen": _cmd_arclen,
        "metric-demo": _cmd_metric_demo,
        "compare": _cmd_compare,
        "serve": _cmd_serve,
    }
    # most specific first: several of these subclass ValueError
    try:
        return handlers[args.command](args)
    except ParseError as exc:
        print(f"error: {exc} (expected one of: {', '.join(exc.expected)})",
              file=sys.stderr)
        return EXIT_USAGE
    except TooOscillatory as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEGMENTATION
    except NotNested as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NESTING
    except (DidNotConverge, PrecisionExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (DomainError, NonMonotoneCurve, UnsupportedK, ValueError,
            argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
