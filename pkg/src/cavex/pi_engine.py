"""Nested two-sided enclosures of pi from polygon doubling.

Starting from a regular k-gon inscribed in and circumscribed about a
circle, each stage doubles the side count.  The recurrences run on the
dimensionless half-side ratios

    l = (inscribed side) / diameter,    u = (circumscribed side) / diameter,

so the whole trace is radius-independent; a radius enters only in the
area and circumference helpers.  With ``m`` sides, ``m*l`` and ``m*u``
are rigorous lower/upper bounds for pi, computed end to end in directed
interval arithmetic.

The doubling step uses the cancellation-free form

    l_next^2 = l^2 / (2 * (1 + sqrt(1 - l^2)))

which is algebraically identical to the textbook half-angle form
``2*l_next^2 = 1 - sqrt(1 - l^2)`` but keeps its relative accuracy as
``l`` shrinks.  The naive form is kept behind a flag for the stability
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import PrecisionExhausted, UnsupportedK, DomainError
from .scalar import UP, Interval, round_dir, to_fraction

DEFAULT_PRECISION_BITS = 128

# Squared initial half-side ratios reachable by Pythagoras alone:
# sin(pi/3)^2 = 3/4, sin(pi/4)^2 = 1/2, sin(pi/6)^2 = 1/4.  Any other k
# would need sin(pi/k) and hence pi itself.
_INITIAL_HALF_SIDE_SQ = {3: Fraction(3, 4), 4: Fraction(1, 2), 6: Fraction(1, 4)}

SUPPORTED_K = tuple(sorted(_INITIAL_HALF_SIDE_SQ))


@dataclass(frozen=True)
class DoublingState:
    """Polygon pair at one doubling stage, in normalized coordinates."""

    k: int
    n: int
    m: int
    l: Interval
    u: Interval

    @property
    def bits(self):
        return self.l.bits


@dataclass(frozen=True)
class PiEnclosure:
    """One stage of the pi trace: m*l <= pi <= m*u with outward rounding."""

    stage: int
    sides: int
    lower: object
    upper: object
    width: object


@dataclass
class PiTrace:
    """Full doubling run; ``exhausted`` marks an early precision stop."""

    k: int
    precision_bits: object
    naive: bool
    enclosures: list
    exhausted: bool = False

    @property
    def final(self) -> PiEnclosure:
        return self.enclosures[-1]


def _one(bits) -> Interval:
    return Interval.from_int(1, bits)


def _u_from_l(l: Interval) -> Interval:
    one = _one(l.bits)
    return l / (one - l * l).sqrt()


def init_state(k: int, precision_bits=DEFAULT_PRECISION_BITS) -> DoublingState:
    """Stage-0 state for a supported k-gon.

    ``precision_bits=None`` selects the native binary64 backend.
    """
    if k not in _INITIAL_HALF_SIDE_SQ:
        raise UnsupportedK(
            f"k={k} is not constructible without trigonometry; supported k: {SUPPORTED_K}")
    lsq = Interval.from_fraction(_INITIAL_HALF_SIDE_SQ[k], precision_bits)
    l = lsq.sqrt()
    return DoublingState(k=k, n=0, m=k, l=l, u=_u_from_l(l))


def _check_meaningful(l: Interval, stage: int):
    # The enclosure stays sound as long as rounding only widens it; it
    # stops being meaningful once the width of l overtakes l itself.
    if not to_fraction(l.lo) > 0:
        raise PrecisionExhausted(
            f"stage {stage}: lower endpoint of l collapsed to {float(to_fraction(l.lo))}")
    if l.width_fraction() > to_fraction(l.lo):
        raise PrecisionExhausted(
            f"stage {stage}: width of l exceeds its lower endpoint")


def step(state: DoublingState, naive: bool = False) -> DoublingState:
    """Advance one doubling stage (m -> 2m).

    Raises :class:`PrecisionExhausted` when the new intervals stop being
    meaningful at the current precision.
    """
    l = state.l
    if not (to_fraction(l.lo) > 0 and to_fraction(l.hi) < 1):
        raise ValueError("state invariant violated: need 0 < l < 1")
    one = _one(l.bits)
    root = (one - l * l).sqrt()
    if naive:
        half = Interval.from_fraction(Fraction(1, 2), l.bits)
        lsq_next = (one - root) * half
    else:
        lsq_next = (l * l) / ((one + root) + (one + root))
    l_next = lsq_next.sqrt()
    _check_meaningful(l_next, state.n + 1)
    u_next = _u_from_l(l_next)
    return replace(state, n=state.n + 1, m=state.m * 2, l=l_next, u=u_next)


def lower_perimeter_ratio(state: DoublingState) -> Interval:
    return state.m * state.l


def upper_perimeter_ratio(state: DoublingState) -> Interval:
    return state.m * state.u


def sagitta_over_r(state: DoublingState) -> Interval:
    """Distance from an inscribed side's midpoint to the arc, over r."""
    one = _one(state.bits)
    return one - (one - state.l * state.l).sqrt()


def apex_excess_over_r(state: DoublingState) -> Interval:
    """Distance from a circumscribed vertex to the circle, over r."""
    one = _one(state.bits)
    return (one + state.u * state.u).sqrt() - one


def enclosure(state: DoublingState) -> PiEnclosure:
    lo = lower_perimeter_ratio(state).lo
    hi = upper_perimeter_ratio(state).hi
    return PiEnclosure(
        stage=state.n,
        sides=state.m,
        lower=lo,
        upper=hi,
        width=round_dir("sub", (hi, lo), UP),
    )


def run(k: int, max_stages=None, width_tol=None,
        precision_bits=DEFAULT_PRECISION_BITS, naive: bool = False) -> PiTrace:
    """Run the doubling construction until a stop criterion is met.

    Exactly one of ``max_stages`` (inclusive stage count) or
    ``width_tol`` (enclosure width target) must be given.  On precision
    exhaustion the trace collected so far is returned with
    ``exhausted=True``; the trace always holds at least stage 0.
    """
    if (max_stages is None) == (width_tol is None):
        raise ValueError("specify exactly one of max_stages or width_tol")
    if max_stages is not None and max_stages < 0:
        raise ValueError("max_stages must be >= 0")
    if width_tol is not None and not width_tol > 0:
        raise ValueError("width_tol must be positive")

    state = init_state(k, precision_bits)
    trace = PiTrace(k=k, precision_bits=precision_bits, naive=naive,
                    enclosures=[enclosure(state)])
    tol = Fraction(width_tol) if width_tol is not None else None

    while True:
        if max_stages is not None and state.n >= max_stages:
            return trace
        if tol is not None and to_fraction(trace.final.width) <= tol:
            return trace
        try:
            state = step(state, naive=naive)
        except PrecisionExhausted:
            trace.exhausted = True
            return trace
        trace.enclosures.append(enclosure(state))


def reference_pi(precision_bits=DEFAULT_PRECISION_BITS, stages: int = 40) -> Fraction:
    """Self-contained reference value: a deep run at four times the precision.

    Returns the enclosure midpoint; at the defaults the enclosure width
    is below 1e-24, far tighter than anything it is compared against.
    """
    bits = 4 * (precision_bits if precision_bits is not None else 53)
    deep = run(6, max_stages=stages, precision_bits=bits)
    final = deep.final
    return (to_fraction(final.lower) + to_fraction(final.upper)) / 2


def _scaled_enclosure(e: PiEnclosure, factor: Interval) -> Interval:
    return Interval(e.lower, e.upper) * factor


def area_enclosure(r: float, e: PiEnclosure) -> Interval:
    """Enclosure of the area of a radius-r circle: [lower*r^2, upper*r^2]."""
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r!r}")
    bits = e.lower.bits if hasattr(e.lower, "bits") else None
    r_sq = Interval.from_fraction(Fraction(r) * Fraction(r), bits)
    return _scaled_enclosure(e, r_sq)


def circumference_enclosure(r: float, e: PiEnclosure) -> Interval:
    """Enclosure of the circumference of a radius-r circle: [2r*lower, 2r*upper]."""
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r!r}")
    bits = e.lower.bits if hasattr(e.lower, "bits") else None
    two_r = Interval.from_fraction(2 * Fraction(r), bits)
    return _scaled_enclosure(e, two_r)


@dataclass(frozen=True)
class GapBoundReport:
    """Diagnostic comparison of the polygon-gap bound candidates.

    ``delta_lower``/``delta_upper`` are the true dimensionless gaps
    pi - m*l and m*u - pi against a converged reference.  The bound is
    evaluated both per side, (u_n*u_{n+1} + 2*l_{n+1}^2) * l_n, and
    multiplied by the side count; the report records which reading holds.
    """

    stage: int
    sides: int
    delta_lower: float
    delta_upper: float
    per_side_bound: float
    total_bound: float
    per_side_holds: bool
    total_holds: bool


def gap_bound_check(state: DoublingState, pi_reference: Fraction) -> GapBoundReport:
    nxt = step(state)
    l_n = state.l.midpoint_fraction()
    u_n = state.u.midpoint_fraction()
    l_n1 = nxt.l.midpoint_fraction()
    u_n1 = nxt.u.midpoint_fraction()
    delta_lower = pi_reference - state.m * l_n
    delta_upper = state.m * u_n - pi_reference
    per_side = (u_n * u_n1 + 2 * l_n1 * l_n1) * l_n
    total = state.m * per_side
    worst = max(delta_lower, delta_upper)
    return GapBoundReport(
        stage=state.n,
        sides=state.m,
        delta_lower=float(delta_lower),
        delta_upper=float(delta_upper),
        per_side_bound=float(per_side),
        total_bound=float(total),
        per_side_holds=worst <= per_side,
        total_holds=worst <= total,
    )
