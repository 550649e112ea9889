"""Independent arc-length via adaptive Simpson quadrature.

Integrates sqrt(1 + f'(x)^2) with recursive interval halving and the
standard Richardson acceptance test, giving a cross-check for the
secant/tangent enclosures that shares no code path with them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curve import Curve, segment_cavex
from .errors import DomainError, MaxDepthExceeded, NotCavex
from .rectify import Partition, secant_measure, tangent_measure

MAX_DEPTH = 48


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


def arclength_integral(curve: Curve, x1: float, x2: float, tol: float) -> QuadratureResult:
    """Arc-length integral over [x1, x2] to the requested tolerance.

    Local acceptance is |S_fine - S_coarse| <= 15 * tol_local with the
    tolerance split across halves, so the total error estimate stays
    below ``tol``.  Recursion deeper than 48 levels raises
    :class:`MaxDepthExceeded`.
    """
    if not (curve.a <= x1 < x2 <= curve.b):
        raise DomainError(f"need a <= x1 < x2 <= b, got x1={x1!r}, x2={x2!r}")
    if not tol > 0:
        raise DomainError("tol must be positive")

    evaluations = 0

    def g(x: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return math.hypot(1.0, curve.df(x))

    def simpson(a: float, b: float, ga: float, gm: float, gb: float) -> float:
        return (b - a) / 6.0 * (ga + 4.0 * gm + gb)

    def recurse(a, b, ga, gm, gb, whole, tol_local, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        glm, grm = g(lm), g(rm)
        left = simpson(a, m, ga, glm, gm)
        right = simpson(m, b, gm, grm, gb)
        delta = left + right - whole
        # tol_floor keeps the per-cell request above what binary64
        # integrand evaluations can resolve; below it the discrepancy is
        # noise and splitting further cannot help.
        if abs(delta) <= 15.0 * max(tol_local, tol_floor) or lm <= a or b <= rm:
            return left + right + delta / 15.0, abs(delta) / 15.0
        if depth >= MAX_DEPTH:
            raise MaxDepthExceeded(
                f"no convergence to {tol_local!r} within depth {MAX_DEPTH} "
                f"on [{a!r}, {b!r}]")
        lv, le = recurse(a, m, ga, glm, gm, left, tol_local / 2.0, depth + 1)
        rv, re = recurse(m, b, gm, grm, gb, right, tol_local / 2.0, depth + 1)
        return lv + rv, le + re

    mid = 0.5 * (x1 + x2)
    ga, gm, gb = g(x1), g(mid), g(x2)
    whole = simpson(x1, x2, ga, gm, gb)
    tol_floor = 2.0 ** -52 * abs(whole)
    value, err = recurse(x1, x2, ga, gm, gb, whole, tol, 0)
    return QuadratureResult(value=value, error_estimate=err, evaluations=evaluations)


@dataclass(frozen=True)
class SecantIntegralReport:
    """Distance from each refinement stage's secant sum to the integral."""

    integral: float
    rows: tuple  # (stage, secant, |secant - integral|)
    final_gap: float
    monotone_decreasing: bool
    final_within_gap: bool


def integral_vs_secant_limit(curve: Curve, stages: int,
                             tol: float = 1e-12) -> SecantIntegralReport:
    """Check the secant sums approach the integral on one cavex segment."""
    segments = segment_cavex(curve)
    if len(segments) != 1:
        raise NotCavex(
            f"curve {curve.name!r} splits into {len(segments)} segments; need one")
    integral = arclength_integral(curve, curve.a, curve.b, tol).value
    partition = Partition.trivial(curve.a, curve.b)
    rows = []
    for stage in range(stages + 1):
        s = secant_measure(curve, partition)
        rows.append((stage, s, abs(s - integral)))
        if stage < stages:
            partition = partition.bisect_all()
    final_gap = tangent_measure(curve, partition) - secant_measure(curve, partition)
    diffs = [r[2] for r in rows]
    # A straight line is exact at every stage; treat rounding-level
    # differences as converged rather than demanding strict decrease.
    floor = 8 * math.ulp(max(abs(integral), 1.0))
    monotone = all(b < a or b <= floor for a, b in zip(diffs[:-1], diffs[1:]))
    final_within = diffs[-1] <= max(10.0 * final_gap / 2.0, floor)
    return SecantIntegralReport(
        integral=integral,
        rows=tuple(rows),
        final_gap=final_gap,
        monotone_decreasing=monotone,
        final_within_gap=final_within,
    )


def mvt_point(curve: Curve, x1: float, x2: float, tol: float = 1e-12) -> float:
    """Point where the tangent slope equals the chord slope over [x1, x2].

    Valid on a cavex span, where the derivative is monotone and the
    chord slope is attained; located by bisection on the derivative.
    """
    if not (curve.a <= x1 < x2 <= curve.b):
        raise DomainError(f"need a <= x1 < x2 <= b, got x1={x1!r}, x2={x2!r}")
    target = (curve.f(x2) - curve.f(x1)) / (x2 - x1)
    lo, hi = x1, x2
    g_lo = curve.df(lo) - target
    g_hi = curve.df(hi) - target
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if (g_lo > 0) == (g_hi > 0):
        raise NotCavex(
            f"chord slope not bracketed by end slopes on [{x1!r}, {x2!r}]")
    while hi - lo > tol * max(1.0, abs(x1), abs(x2)):
        mid = 0.5 * (lo + hi)
        g_mid = curve.df(mid) - target
        if g_mid == 0.0:
            return mid
        if (g_mid > 0) == (g_lo > 0):
            lo, g_lo = mid, g_mid
        else:
            hi, g_hi = mid, g_mid
    return 0.5 * (lo + hi)
