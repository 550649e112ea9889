"""Two-sided arc-length bounds from secant and tangent measures.

On a convex-or-concave segment, the sum of chord lengths over a
partition is a strict lower bound for the arc-length, and the sum of
the two tangent legs through each pair of adjacent points is a strict
upper bound.  Refining the partition tightens both monotonically, so
dyadic refinement drives the gap below any tolerance and the pair
[secant sum, tangent sum] is a certified enclosure.

The Taxicab measure is included as the contrast case: on a monotone
span it is the same constant for every partition, so no amount of
refinement rectifies anything.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .curve import Curve, segment_cavex, tangent_intersection
from .errors import (DidNotConverge, DomainError, DuplicatePoint,
                     NonMonotoneCurve, NotNested)

# Measures run in plain binary64; the reported enclosure is widened
# outward by this many ulps per sub-interval to cover accumulation.
ULP_SLACK_PER_CELL = 8
# A stage-0 gap at rounding level means the segment is a straight line.
LINEAR_GAP_ULPS = 4

DEFAULT_MAX_STAGES = 30
DEFAULT_GRID = 256


@dataclass(frozen=True)
class Partition:
    """Strictly increasing points with fixed endpoints."""

    points: tuple

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("a partition needs at least two points")
        if any(b <= a for a, b in zip(self.points[:-1], self.points[1:])):
            raise ValueError("partition points must strictly increase")

    @classmethod
    def trivial(cls, a: float, b: float) -> "Partition":
        return cls((float(a), float(b)))

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def cells(self) -> int:
        return len(self.points) - 1

    def bisect_all(self) -> "Partition":
        out = []
        for a, b in zip(self.points[:-1], self.points[1:]):
            out.append(a)
            out.append(0.5 * (a + b))
        out.append(self.points[-1])
        return Partition(tuple(out))

    def with_point(self, x: float) -> "Partition":
        if x in self.points:
            raise DuplicatePoint(f"{x!r} is already a partition point")
        if not (self.points[0] < x < self.points[-1]):
            raise ValueError(f"{x!r} is not interior to the partition")
        return Partition(tuple(sorted(self.points + (x,))))


def refine(partition: Partition, mode: str = "bisect_all", x=None) -> Partition:
    """Refinement front door: dyadic ``bisect_all`` or ``single_point``."""
    if mode == "bisect_all":
        return partition.bisect_all()
    if mode == "single_point":
        if x is None:
            raise ValueError("single_point refinement needs x")
        return partition.with_point(x)
    raise ValueError(f"unknown refinement mode {mode!r}")


def random_partitions(a: float, b: float, count: int, seed: int) -> list:
    """Deterministic batch of random partitions of [a, b] for demos."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        interior = sorted(rng.uniform(a, b) for _ in range(rng.randint(1, 12)))
        points = [a]
        for x in interior:
            if points[-1] < x < b:
                points.append(x)
        points.append(b)
        out.append(Partition(tuple(points)))
    return out


# ---------------------------------------------------------------------------
# measures

def secant_measure(curve: Curve, partition: Partition) -> float:
    """Sum of chord lengths of consecutive graph points."""
    ys = [curve.f(x) for x in partition.points]
    return math.fsum(
        math.hypot(x2 - x1, y2 - y1)
        for x1, x2, y1, y2 in zip(partition.points[:-1], partition.points[1:],
                                  ys[:-1], ys[1:]))


def tangent_measure(curve: Curve, partition: Partition) -> float:
    """Sum of the two tangent legs through each adjacent point pair."""
    pts = partition.points
    ys = [curve.f(x) for x in pts]
    legs = []
    for i in range(len(pts) - 1):
        node = tangent_intersection(curve, pts[i], pts[i + 1])
        legs.append(math.hypot(node.x - pts[i], node.y - ys[i]))
        legs.append(math.hypot(pts[i + 1] - node.x, ys[i + 1] - node.y))
    return math.fsum(legs)


def taxicab_measure(curve: Curve, partition: Partition) -> float:
    """Sum of |dx| + |dy| over the partition; needs a strictly monotone span.

    For a monotone curve both sums telescope, so the value is the same
    for every partition and never converges to the arc-length.
    """
    ys = [curve.f(x) for x in partition.points]
    increasing = all(b > a for a, b in zip(ys[:-1], ys[1:]))
    decreasing = all(b < a for a, b in zip(ys[:-1], ys[1:]))
    if not (increasing or decreasing):
        raise NonMonotoneCurve(
            f"curve {curve.name!r} is not strictly monotone on the partition span")
    terms = []
    for (x1, x2, y1, y2) in zip(partition.points[:-1], partition.points[1:],
                                ys[:-1], ys[1:]):
        terms.append(abs(x2 - x1))
        terms.append(abs(y2 - y1))
    return math.fsum(terms)


@dataclass(frozen=True)
class MeasurePair:
    """Secant and tangent sums for one partition; secant <= tangent always."""

    secant: float
    tangent: float

    @property
    def gap(self) -> float:
        return self.tangent - self.secant


def measure_pair(curve: Curve, partition: Partition) -> MeasurePair:
    return MeasurePair(secant_measure(curve, partition),
                       tangent_measure(curve, partition))


# ---------------------------------------------------------------------------
# refinement loop

@dataclass(frozen=True)
class StageRecord:
    stage: int
    points: int
    secant: float
    tangent: float
    gap: float


@dataclass
class SegmentTrace:
    index: int
    lo: float
    hi: float
    orientation: str
    records: list
    lower: float = math.nan
    upper: float = math.nan
    linear: bool = False
    converged: bool = False

    @property
    def estimate(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def gap(self) -> float:
        return self.records[-1].gap

    @property
    def rectifiability_bound(self) -> float:
        # The trivial-partition tangent sum already dominates every
        # partition sum on the segment, hence is a valid finite bound.
        return self.records[0].tangent


@dataclass
class RectifyResult:
    curve_name: str
    tol: float
    segments: list
    converged: bool = False

    @property
    def lower(self) -> float:
        return math.fsum(s.lower for s in self.segments)

    @property
    def upper(self) -> float:
        return math.fsum(s.upper for s in self.segments)

    @property
    def estimate(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def gap(self) -> float:
        return self.upper - self.lower


def _rectify_segment(curve: Curve, index: int, seg, share_tol: float,
                     max_stages: int) -> SegmentTrace:
    trace = SegmentTrace(index=index, lo=seg.lo, hi=seg.hi,
                         orientation=seg.orientation, records=[])
    partition = Partition.trivial(seg.lo, seg.hi)
    stage = 0
    while True:
        s = secant_measure(curve, partition)
        t = tangent_measure(curve, partition)
        gap = t - s
        trace.records.append(StageRecord(stage, partition.size, s, t, gap))
        scale_ulp = math.ulp(max(abs(t), 1.0))
        if stage == 0 and abs(gap) <= LINEAR_GAP_ULPS * scale_ulp:
            # Straight segment: secant and tangent coincide up to
            # rounding.  A correctly rounded chord can still sit half an
            # ulp off the true length, so pad outward before reporting.
            pad = LINEAR_GAP_ULPS * scale_ulp
            trace.linear = True
            trace.converged = True
            trace.lower = min(s, t) - pad
            trace.upper = max(s, t) + pad
            return trace
        if gap <= share_tol:
            trace.converged = True
            break
        if stage >= max_stages:
            break
        partition = partition.bisect_all()
        stage += 1
    final = trace.records[-1]
    slack = ULP_SLACK_PER_CELL * (final.points - 1) * math.ulp(max(abs(final.tangent), 1.0))
    trace.lower = final.secant - slack
    trace.upper = final.tangent + slack
    return trace


def rectify(curve: Curve, tol: float, max_stages: int = DEFAULT_MAX_STAGES,
            grid_n: int = DEFAULT_GRID) -> RectifyResult:
    """Certified arc-length enclosure over the whole domain.

    Segments the curve, then refines each segment dyadically until its
    share of the tolerance (proportional to chord length) is met.
    Raises :class:`DidNotConverge` carrying the partial result if any
    segment hits ``max_stages`` first.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    segments = segment_cavex(curve, grid_n)
    chords = []
    for seg in segments:
        chords.append(math.hypot(seg.hi - seg.lo, curve.f(seg.hi) - curve.f(seg.lo)))
    total_chord = math.fsum(chords) or 1.0

    result = RectifyResult(curve_name=curve.name, tol=tol, segments=[])
    for i, seg in enumerate(segments):
        share = tol * chords[i] / total_chord
        result.segments.append(
            _rectify_segment(curve, i, seg, share, max_stages))
    result.converged = all(s.converged for s in result.segments)
    if not result.converged:
        raise DidNotConverge(
            f"gap tolerance {tol!r} not reached within {max_stages} stages",
            result=result)
    return result


# ---------------------------------------------------------------------------
# comparisons

@dataclass(frozen=True)
class ChordArcReport:
    chord: float
    lower: float
    upper: float
    linear: bool
    chord_is_shorter: bool
    holds: bool


def chord_vs_arc(curve: Curve, x1: float, x2: float, tol: float = 1e-7) -> ChordArcReport:
    """Compare the single chord over [x1, x2] with the rectified enclosure.

    For a non-linear span the chord must fall strictly below the
    enclosure's lower bound; for a straight span they coincide.
    """
    sub = curve.restricted(x1, x2)
    chord = math.hypot(x2 - x1, sub.f(x2) - sub.f(x1))
    result = rectify(sub, tol)
    linear = all(s.linear for s in result.segments)
    shorter = chord < result.lower
    if linear:
        # straight span: chord and arc coincide inside the enclosure
        holds = result.lower <= chord <= result.upper
    else:
        holds = shorter
    return ChordArcReport(chord=chord, lower=result.lower, upper=result.upper,
                          linear=linear, chord_is_shorter=shorter, holds=holds)


@dataclass(frozen=True)
class NestedComparison:
    inner_lower: float
    inner_upper: float
    outer_lower: float
    outer_upper: float
    inner_is_shorter: bool
    ordering_consistent: bool


def _chord_through(curve: Curve, x: float) -> float:
    fa, fb = curve.f(curve.a), curve.f(curve.b)
    return fa + (fb - fa) * (x - curve.a) / (curve.b - curve.a)


def compare_nested(inner: Curve, outer: Curve, tol: float = 1e-7,
                   samples: int = 1024) -> NestedComparison:
    """Rectify two curves nested between a shared chord and each other.

    The containment precondition is verified by sampling: the inner
    curve must lie weakly between the chord and the outer curve, on the
    same side, with no crossing.  Violations raise :class:`NotNested`.
    """
    if inner.a != outer.a or inner.b != outer.b:
        raise NotNested("curves must share domain endpoints")
    scale = 1.0 + max(abs(inner.f(inner.a)), abs(inner.f(inner.b)))
    eps = 1e-9 * scale
    if abs(inner.f(inner.a) - outer.f(outer.a)) > eps or \
       abs(inner.f(inner.b) - outer.f(outer.b)) > eps:
        raise NotNested("curves must share endpoint values")

    prev_sign = 0
    for i in range(1, samples):
        x = inner.a + (inner.b - inner.a) * i / samples
        ch = _chord_through(inner, x)
        d_in = inner.f(x) - ch
        d_out = outer.f(x) - ch
        sep = d_out - d_in
        if abs(sep) > eps:
            sign = 1 if sep > 0 else -1
            if prev_sign and sign != prev_sign:
                raise NotNested(f"curves cross near x={x!r}")
            prev_sign = sign
        if abs(d_out) <= eps:
            if abs(d_in) > eps:
                raise NotNested(f"inner leaves the chord band near x={x!r}")
            continue
        same_side = (d_in >= -eps) if d_out > 0 else (d_in <= eps)
        if not same_side or abs(d_in) > abs(d_out) + eps:
            raise NotNested(
                f"inner curve is not between the chord and the outer curve near x={x!r}")

    inner_result = rectify(inner, tol)
    outer_result = rectify(outer, tol)
    return NestedComparison(
        inner_lower=inner_result.lower,
        inner_upper=inner_result.upper,
        outer_lower=outer_result.lower,
        outer_upper=outer_result.upper,
        inner_is_shorter=inner_result.upper <= outer_result.lower,
        ordering_consistent=inner_result.lower <= outer_result.upper,
    )
