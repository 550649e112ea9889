"""Curves with trustworthy derivatives and convex/concave segmentation.

A :class:`Curve` is an evaluatable function plus its derivative on a
closed interval, built either from a parsed expression (derivative by
forward-mode duals) or from the built-in registry.  Segmentation splits
the domain into maximal "cavex" pieces, sub-intervals on which the
curve is entirely convex or entirely concave, which is exactly where
tangent-chord geometry yields two-sided arc-length bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import expr
from .errors import DomainError, NotCavex, TooOscillatory

VALIDATION_SAMPLES = 1024
# Scale-aware tolerances: parallel-tangent detection, tangent-node
# containment slack, and the edge margin that keeps the quarter circle
# short of its vertical tangent.
PARALLEL_SLOPE_TOL = 1e-12
CONTAINMENT_SLACK = 1e-9
EDGE_MARGIN = 1e-9

CONVEX = "convex"
CONCAVE = "concave"
LINEAR = "linear"


@dataclass(frozen=True)
class Curve:
    """Function and derivative on [a, b], validated by dense sampling."""

    name: str
    f: Callable[[float], float]
    df: Callable[[float], float]
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
            raise DomainError(f"invalid domain [{self.a!r}, {self.b!r}]")
        for i in range(VALIDATION_SAMPLES + 1):
            x = self.a + (self.b - self.a) * i / VALIDATION_SAMPLES
            y, s = self.f(x), self.df(x)
            if not (math.isfinite(y) and math.isfinite(s)):
                raise DomainError(
                    f"curve {self.name!r} is non-finite at x={x!r}")

    @property
    def domain(self) -> tuple:
        return (self.a, self.b)

    def restricted(self, a: float, b: float) -> "Curve":
        if not (self.a <= a < b <= self.b):
            raise DomainError(
                f"[{a!r}, {b!r}] is not inside the domain of {self.name!r}")
        return Curve(self.name, self.f, self.df, a, b)


def from_expression(src: str, a: float, b: float, name=None) -> Curve:
    """Curve from expression text; derivative comes from dual numbers."""
    ast = expr.parse(src)
    return Curve(
        name=name if name is not None else src,
        f=lambda x: expr.eval_primal(ast, x),
        df=lambda x: expr.eval_dual(ast, x).tangent,
        a=a,
        b=b,
    )


def line(m: float, c: float, a: float = 0.0, b: float = 1.0) -> Curve:
    return from_expression(f"{m!r}*x + {c!r}", a, b, name=f"line({m!r},{c!r})")


# Registry curves are expression-backed, so their derivatives exercise
# the same dual-number path user expressions take.
_REGISTRY = {
    "line": ("2*x", 0.0, 1.0),
    "parabola": ("x^2", 0.0, 1.0),
    "quarter_circle": ("sqrt(1 - x*x)", 0.0, 1.0 - EDGE_MARGIN),
    "exp": ("exp(x)", 0.0, 1.0),
    "log": ("log(x)", 1.0, 3.0),
    "sin": ("sin(x)", 0.0, math.pi),
}


def registry_names() -> tuple:
    return tuple(sorted(_REGISTRY))


def registry_entries() -> dict:
    """Name -> (expression, default lo, default hi) for every built-in."""
    return {name: _REGISTRY[name] for name in registry_names()}


def registry_curve(name: str, a=None, b=None) -> Curve:
    if name not in _REGISTRY:
        raise DomainError(
            f"unknown curve {name!r}; available: {', '.join(registry_names())}")
    src, da, db = _REGISTRY[name]
    return from_expression(src, da if a is None else a, db if b is None else b, name=name)


def resolve(curve_name=None, expression=None, a=None, b=None) -> Curve:
    """One curve from either a registry name or an expression."""
    if (curve_name is None) == (expression is None):
        raise DomainError("give exactly one of curve name or expression")
    if curve_name is not None:
        return registry_curve(curve_name, a, b)
    if a is None or b is None:
        raise DomainError("expression curves need explicit endpoints")
    return from_expression(expression, a, b)


# ---------------------------------------------------------------------------
# tangent geometry

@dataclass(frozen=True)
class TangentChordNode:
    """Intersection of the tangents at two curve points."""

    x: float
    y: float


def tangent_intersection(curve: Curve, x1: float, x2: float) -> TangentChordNode:
    """Intersect the tangent lines at x1 and x2.

    Coincident tangents (a straight sub-arc) return the midpoint on the
    secant; parallel distinct tangents, or an intersection outside the
    span, mean an inflection lies inside and raise :class:`NotCavex`.
    """
    if not (curve.a <= x1 < x2 <= curve.b):
        raise DomainError(f"need a <= x1 < x2 <= b, got x1={x1!r}, x2={x2!r}")
    f1, f2 = curve.f(x1), curve.f(x2)
    d1, d2 = curve.df(x1), curve.df(x2)
    span = x2 - x1
    if abs(d1 - d2) <= PARALLEL_SLOPE_TOL * (1.0 + max(abs(d1), abs(d2))):
        residual = f2 - (f1 + d1 * span)
        if abs(residual) <= 1e-12 * (1.0 + abs(f1) + abs(f2) + abs(d1) * span):
            return TangentChordNode(0.5 * (x1 + x2), 0.5 * (f1 + f2))
        raise NotCavex(
            f"parallel distinct tangents at x={x1!r} and x={x2!r}")
    x_cross = (f2 - f1 + d1 * x1 - d2 * x2) / (d1 - d2)
    slack = CONTAINMENT_SLACK * span
    if not (x1 - slack <= x_cross <= x2 + slack):
        raise NotCavex(
            f"tangent intersection {x_cross!r} escapes ({x1!r}, {x2!r})")
    return TangentChordNode(x_cross, f1 + d1 * (x_cross - x1))


# ---------------------------------------------------------------------------
# segmentation

@dataclass(frozen=True)
class CavexSegment:
    lo: float
    hi: float
    orientation: str  # convex | concave | linear


def _slope_change_sign(curve: Curve, x: float, h: float) -> float:
    lo = max(curve.a, x - h)
    hi = min(curve.b, x + h)
    return curve.df(hi) - curve.df(lo)


def _bisect_inflection(curve: Curve, lo: float, hi: float, h: float, tol: float) -> float:
    p_lo = _slope_change_sign(curve, lo, h)
    p_hi = _slope_change_sign(curve, hi, h)
    if p_lo == 0.0:
        return lo
    if p_hi == 0.0:
        return hi
    if (p_lo > 0) == (p_hi > 0):
        # Grid flagged a flip here but the probe does not bracket it;
        # scan for a usable bracket before giving up on refinement.
        steps = 64
        prev_x, prev_p = lo, p_lo
        for i in range(1, steps + 1):
            x = lo + (hi - lo) * i / steps
            p = _slope_change_sign(curve, x, h)
            if p == 0.0:
                return x
            if (p > 0) != (prev_p > 0):
                lo, p_lo, hi = prev_x, prev_p, x
                break
            prev_x, prev_p = x, p
        else:
            return 0.5 * (lo + hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        p_mid = _slope_change_sign(curve, mid, h)
        if p_mid == 0.0:
            return mid
        if (p_mid > 0) == (p_lo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def segment_cavex(curve: Curve, grid_n: int = 256) -> list:
    """Split the domain into maximal convex/concave/linear segments.

    Slope differences over a uniform grid locate curvature sign
    changes; each change point is then refined by bisection to a width
    of 1e-12 of the domain.  Raises :class:`TooOscillatory` when more
    than grid_n/4 changes show up.
    """
    if grid_n < 16:
        raise ValueError("grid_n must be >= 16")
    a, b = curve.a, curve.b
    span = b - a
    xs = [a + span * i / grid_n for i in range(grid_n + 1)]
    slopes = [curve.df(x) for x in xs]
    deltas = [slopes[i + 1] - slopes[i] for i in range(grid_n)]
    zero_tol = 1e-14 * (1.0 + max(abs(s) for s in slopes))

    signs = []
    for d in deltas:
        if abs(d) <= zero_tol:
            signs.append(0)
        else:
            signs.append(1 if d > 0 else -1)

    # Count flips between consecutive nonzero curvature signs.
    flips = []
    last_sign, last_cell = 0, None
    for i, s in enumerate(signs):
        if s == 0:
            continue
        if last_sign != 0 and s != last_sign:
            flips.append((last_cell, i))
        last_sign, last_cell = s, i
    if len(flips) > grid_n // 4:
        raise TooOscillatory(
            f"{len(flips)} curvature flips on a {grid_n}-cell grid")

    probe_h = span * 1e-8
    cut_tol = span * 1e-12
    cuts = []
    for cell_before, cell_after in flips:
        lo = 0.5 * (xs[cell_before] + xs[cell_before + 1])
        hi = 0.5 * (xs[cell_after] + xs[cell_after + 1])
        cuts.append(_bisect_inflection(curve, lo, hi, probe_h, cut_tol))

    boundaries = [a] + cuts + [b]
    segments = []
    for lo, hi in zip(boundaries[:-1], boundaries[1:]):
        votes_up = votes_down = 0
        for i, s in enumerate(signs):
            cell_mid = 0.5 * (xs[i] + xs[i + 1])
            if lo <= cell_mid <= hi:
                if s > 0:
                    votes_up += 1
                elif s < 0:
                    votes_down += 1
        if votes_up == 0 and votes_down == 0:
            orientation = LINEAR
        elif votes_up >= votes_down:
            orientation = CONVEX
        else:
            orientation = CONCAVE
        segments.append(CavexSegment(lo, hi, orientation))
    return segments


# ---------------------------------------------------------------------------
# secant-slope convergence

@dataclass(frozen=True)
class SlopeConvergenceReport:
    """Gap between the tangent slope at x0 and secant slopes over shrinking h."""

    x0: float
    steps: tuple  # (h, gap) pairs in the order given
    strictly_decreasing: bool
    all_zero: bool


def secant_slope_convergence(curve: Curve, x0: float, h_sequence) -> SlopeConvergenceReport:
    hs = list(h_sequence)
    if not hs or any(h <= 0 for h in hs):
        raise ValueError("h_sequence must be positive")
    if any(hs[i + 1] >= hs[i] for i in range(len(hs) - 1)):
        raise ValueError("h_sequence must be strictly decreasing")
    if not (curve.a <= x0 <= curve.b) or x0 + hs[0] > curve.b:
        raise DomainError("x0 and x0 + h must stay inside the domain")
    slope_at_x0 = curve.df(x0)
    f0 = curve.f(x0)
    steps = []
    for h in hs:
        secant = (curve.f(x0 + h) - f0) / h
        steps.append((h, abs(slope_at_x0 - secant)))
    gaps = [g for _, g in steps]
    strictly = all(b < a for a, b in zip(gaps[:-1], gaps[1:]))
    return SlopeConvergenceReport(
        x0=x0,
        steps=tuple(steps),
        strictly_decreasing=strictly,
        all_zero=all(g == 0.0 for g in gaps),
    )
