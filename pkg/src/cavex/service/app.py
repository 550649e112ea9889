"""HTTP service wrapping the enclosure engines.

The service is stateless: every endpoint is a pure computation over the
request body, so instances can be scaled or restarted freely.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import curve as curve_mod
from .. import oracle as oracle_mod
from .. import pi_engine
from .. import rectify as rectify_mod
from ..errors import (DidNotConverge, DomainError, NonMonotoneCurve,
                      NotNested, ParseError, TooOscillatory, UnsupportedK)
from ..report import pi_trace_rows
from . import schemas


def _error(status: int, code: str, message: str, offset=None):
    payload = schemas.ErrorPayload(code=code, message=message, offset=offset)
    return HTTPException(status_code=status, detail=payload.model_dump())


def _resolve_curve(spec: schemas.CurveSpec) -> curve_mod.Curve:
    try:
        return curve_mod.resolve(
            curve_name=spec.curve,
            expression=spec.expression,
            a=spec.from_x,
            b=spec.to_x,
        )
    except ParseError as exc:
        raise _error(400, "parse_error", str(exc), offset=exc.offset)
    except DomainError as exc:
        raise _error(400, "domain_error", str(exc))


def create_app() -> FastAPI:
    app = FastAPI(
        title="cavex",
        description="Certified enclosures of pi and of curve arc-lengths.",
        version="0.1.0",
    )

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/curves", response_model=list[schemas.CurveInfo])
    def curves():
        out = []
        for name, (expression, a, b) in curve_mod.registry_entries().items():
            out.append(schemas.CurveInfo(
                name=name, expression=expression, from_x=a, to_x=b))
        return out

    @app.post("/pi", response_model=schemas.PiResponse)
    def pi(request: schemas.PiRequest):
        stages, width_tol = request.stages, request.width_tol
        if stages is None and width_tol is None:
            stages = 10
        try:
            trace = pi_engine.run(
                request.k, max_stages=stages, width_tol=width_tol,
                precision_bits=request.precision_bits, naive=request.naive)
        except UnsupportedK as exc:
            raise _error(400, "unsupported_k", str(exc))
        records = []
        for row, enc in zip(pi_trace_rows(trace), trace.enclosures):
            records.append(schemas.EnclosureRecord(
                stage=row["stage"], sides=row["sides"],
                lower=row["lower"], upper=row["upper"], width=row["width"],
                lower_float=float(enc.lower), upper_float=float(enc.upper)))
        if trace.exhausted and width_tol is not None:
            raise _error(409, "precision_exhausted",
                         "precision exhausted before reaching width_tol")
        return schemas.PiResponse(
            k=trace.k, precision_bits=trace.precision_bits, naive=trace.naive,
            exhausted=trace.exhausted, records=records)

    @app.post("/arclen", response_model=schemas.ArclenResponse)
    def arclen(request: schemas.ArclenRequest):
        cur = _resolve_curve(request)
        try:
            result = rectify_mod.rectify(cur, request.tol,
                                         max_stages=request.max_stages)
        except DidNotConverge as exc:
            raise _error(409, "did_not_converge", str(exc))
        except TooOscillatory as exc:
            raise _error(409, "too_oscillatory", str(exc))
        response = schemas.ArclenResponse(
            curve=result.curve_name,
            tol=result.tol,
            lower=result.lower,
            upper=result.upper,
            estimate=result.estimate,
            converged=result.converged,
            segments=[
                schemas.SegmentModel(
                    segment=s.index, from_x=s.lo, to_x=s.hi,
                    orientation=s.orientation, lower=s.lower, upper=s.upper,
                    rectifiability_bound=s.rectifiability_bound,
                    stages=[schemas.StageModel(
                        stage=r.stage, points=r.points, secant=r.secant,
                        tangent=r.tangent, gap=r.gap) for r in s.records])
                for s in result.segments
            ],
        )
        if request.oracle:
            quad = oracle_mod.arclength_integral(cur, cur.a, cur.b,
                                                 request.tol / 10.0)
            response.oracle_value = quad.value
            response.oracle_error_estimate = quad.error_estimate
            response.oracle_delta = abs(result.estimate - quad.value)
        return response

    @app.post("/metric-demo", response_model=schemas.MetricDemoResponse)
    def metric_demo(request: schemas.MetricDemoRequest):
        cur = _resolve_curve(request)
        quad = oracle_mod.arclength_integral(cur, cur.a, cur.b, 1e-10)
        rows = []
        try:
            for i, partition in enumerate(rectify_mod.random_partitions(
                    cur.a, cur.b, request.partitions, request.seed)):
                rows.append(schemas.MetricDemoRow(
                    partition=i, points=partition.size,
                    taxicab=rectify_mod.taxicab_measure(cur, partition),
                    secant=rectify_mod.secant_measure(cur, partition)))
        except NonMonotoneCurve as exc:
            raise _error(400, "non_monotone", str(exc))
        return schemas.MetricDemoResponse(
            curve=cur.name, oracle=quad.value, rows=rows)

    @app.post("/compare", response_model=schemas.CompareResponse)
    def compare(request: schemas.CompareRequest):
        try:
            inner = curve_mod.from_expression(
                request.inner, request.from_x, request.to_x)
            outer = curve_mod.from_expression(
                request.outer, request.from_x, request.to_x)
        except ParseError as exc:
            raise _error(400, "parse_error", str(exc), offset=exc.offset)
        except DomainError as exc:
            raise _error(400, "domain_error", str(exc))
        try:
            comparison = rectify_mod.compare_nested(inner, outer, tol=request.tol)
        except NotNested as exc:
            raise _error(409, "not_nested", str(exc))
        return schemas.CompareResponse(
            inner_lower=comparison.inner_lower,
            inner_upper=comparison.inner_upper,
            outer_lower=comparison.outer_lower,
            outer_upper=comparison.outer_upper,
            inner_is_shorter=comparison.inner_is_shorter,
            ordering_consistent=comparison.ordering_consistent,
        )

    return app


app = create_app()
