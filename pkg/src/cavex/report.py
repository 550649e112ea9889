"""Deterministic CSV/JSON/table emission for traces.

Enclosure endpoints are printed direction-aware: lower bounds round
down in the last printed digit and upper bounds round up, so a printed
enclosure still contains the computed one.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .scalar import DOWN, UP, to_fraction

MAX_DECIMALS = 60
PI_TRACE_HEADER = "stage,sides,lower,upper,width"
RECTIFY_TRACE_HEADER = "segment,stage,points,secant,tangent,gap"
METRIC_DEMO_HEADER = "partition,points,taxicab,secant,oracle"


def decimals_for_width(width: Fraction, bits) -> int:
    """Digits after the point implied by the enclosure width (+2 guard)."""
    if bits is None:
        return 17
    cap = min(MAX_DECIMALS, int(bits * math.log10(2)) + 2)
    if width <= 0:
        return cap
    w = float(width)
    if w <= 0.0:
        return cap
    return max(3, min(cap, math.ceil(-math.log10(w)) + 2))


def format_fraction(value: Fraction, decimals: int, direction: str) -> str:
    """Fixed-point decimal string rounded toward the requested direction."""
    scaled = value * 10 ** decimals
    num, den = scaled.numerator, scaled.denominator
    units = num // den if direction == DOWN else -((-num) // den)
    sign = "-" if units < 0 else ""
    digits = str(abs(units)).rjust(decimals + 1, "0")
    return f"{sign}{digits[:-decimals]}.{digits[-decimals:]}" if decimals else f"{sign}{digits}"


def format_scalar(value, decimals: int, direction: str) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return format_fraction(to_fraction(value), decimals, direction)


def format_float(value: float) -> str:
    return f"{value:.17g}"


# ---------------------------------------------------------------------------
# pi traces

def pi_trace_rows(trace) -> list:
    bits = trace.precision_bits
    decimals = decimals_for_width(to_fraction(trace.final.width), bits)
    rows = []
    for e in trace.enclosures:
        rows.append({
            "stage": e.stage,
            "sides": e.sides,
            "lower": format_scalar(e.lower, decimals, DOWN),
            "upper": format_scalar(e.upper, decimals, UP),
            "width": format_scalar(e.width, decimals, UP),
        })
    return rows


def pi_trace_csv(trace) -> str:
    lines = [PI_TRACE_HEADER]
    for r in pi_trace_rows(trace):
        lines.append(f"{r['stage']},{r['sides']},{r['lower']},{r['upper']},{r['width']}")
    return "\n".join(lines) + "\n"


def pi_trace_json(trace) -> str:
    return json.dumps(pi_trace_rows(trace), indent=2) + "\n"


def pi_trace_table(trace) -> str:
    rows = pi_trace_rows(trace)
    widths = {k: max(len(k), max(len(str(r[k])) for r in rows)) for k in rows[0]}
    header = "  ".join(k.rjust(widths[k]) for k in rows[0])
    lines = [header, "-" * len(header)]
    for r in rows:
        lines.append("  ".join(str(r[k]).rjust(widths[k]) for k in r))
    if trace.exhausted:
        lines.append("(stopped early: precision exhausted)")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# rectify traces

def rectify_rows(result) -> list:
    rows = []
    for seg in result.segments:
        for rec in seg.records:
            rows.append({
                "segment": seg.index,
                "stage": rec.stage,
                "points": rec.points,
                "secant": rec.secant,
                "tangent": rec.tangent,
                "gap": rec.gap,
            })
    return rows


def rectify_csv(result) -> str:
    lines = [RECTIFY_TRACE_HEADER]
    for r in rectify_rows(result):
        lines.append(
            f"{r['segment']},{r['stage']},{r['points']},"
            f"{format_float(r['secant'])},{format_float(r['tangent'])},"
            f"{format_float(r['gap'])}")
    return "\n".join(lines) + "\n"


def rectify_summary(result, oracle_result=None) -> dict:
    summary = {
        "curve": result.curve_name,
        "tol": result.tol,
        "lower": result.lower,
        "upper": result.upper,
        "estimate": result.estimate,
        "converged": result.converged,
        "segments": [
            {
                "segment": s.index,
                "from": s.lo,
                "to": s.hi,
                "orientation": s.orientation,
                "lower": s.lower,
                "upper": s.upper,
                "stages": len(s.records) - 1,
                "rectifiability_bound": s.rectifiability_bound,
            }
            for s in result.segments
        ],
    }
    if oracle_result is not None:
        summary["oracle"] = oracle_result.value
        summary["oracle_error_estimate"] = oracle_result.error_estimate
        summary["oracle_delta"] = abs(result.estimate - oracle_result.value)
    return summary


def rectify_json(result, oracle_result=None) -> str:
    payload = rectify_summary(result, oracle_result)
    payload["rows"] = rectify_rows(result)
    return json.dumps(payload, indent=2) + "\n"


def rectify_table(result, oracle_result=None) -> str:
    lines = [RECTIFY_TRACE_HEADER.replace(",", "  ")]
    for r in rectify_rows(result):
        lines.append(
            f"{r['segment']:>7}  {r['stage']:>5}  {r['points']:>6}  "
            f"{format_float(r['secant'])}  {format_float(r['tangent'])}  "
            f"{format_float(r['gap'])}")
    lines.append(
        f"total enclosure [{format_float(result.lower)}, {format_float(result.upper)}]"
        f"  estimate {format_float(result.estimate)}")
    if oracle_result is not None:
        delta = abs(result.estimate - oracle_result.value)
        lines.append(
            f"oracle {format_float(oracle_result.value)}"
            f"  delta {format_float(delta)}"
            f"  (error estimate {format_float(oracle_result.error_estimate)},"
            f" {oracle_result.evaluations} evaluations)")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# metric demo

def metric_demo_csv(rows) -> str:
    lines = [METRIC_DEMO_HEADER]
    for r in rows:
        lines.append(
            f"{r['partition']},{r['points']},{format_float(r['taxicab'])}"
            f",{format_float(r['secant'])},{format_float(r['oracle'])}")
    return "\n".join(lines) + "\n"


def metric_demo_json(rows) -> str:
    return json.dumps(list(rows), indent=2) + "\n"


def metric_demo_table(rows) -> str:
    lines = ["partition  points  taxicab                 secant                  oracle"]
    for r in rows:
        lines.append(
            f"{r['partition']:>9}  {r['points']:>6}  {format_float(r['taxicab']):<22}"
            f"  {format_float(r['secant']):<22}  {format_float(r['oracle'])}")
    return "\n".join(lines) + "\n"
