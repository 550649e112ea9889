"""Certified-bounds numerics: pi enclosures and arc-length rectification.

Everything rigorous flows through directed rounding: lower bounds only
ever round down, upper bounds only ever round up, so each reported
interval is mathematically guaranteed to contain the exact value.
"""

from .curve import (Curve, CavexSegment, TangentChordNode, from_expression,
                    line, registry_curve, registry_names, segment_cavex,
                    secant_slope_convergence, tangent_intersection)
from .errors import (DidNotConverge, DomainError, DuplicatePoint,
                     MaxDepthExceeded, NonMonotoneCurve, NotCavex, NotNested,
                     ParseError, PrecisionExhausted, TooOscillatory,
                     UnsupportedK)
from .oracle import (QuadratureResult, arclength_integral,
                     integral_vs_secant_limit, mvt_point)
from .pi_engine import (DoublingState, PiEnclosure, PiTrace, area_enclosure,
                        circumference_enclosure, gap_bound_check, init_state,
                        reference_pi, run, step)
# The arc-length entry point stays module-qualified (cavex.rectify.rectify)
# so the function does not shadow its module at package level.
from .rectify import (ChordArcReport, MeasurePair, NestedComparison,
                      Partition, RectifyResult, SegmentTrace, StageRecord,
                      chord_vs_arc, compare_nested, measure_pair, refine,
                      secant_measure, tangent_measure, taxicab_measure)
from .scalar import DOWN, UP, Fixed, Interval, round_dir

__version__ = "0.1.0"
