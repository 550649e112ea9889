"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator


class PiRequest(BaseModel):
    k: Literal[3, 4, 6] = 6
    stages: Optional[int] = Field(default=None, ge=0, le=200)
    width_tol: Optional[float] = Field(default=None, gt=0)
    precision_bits: Optional[int] = Field(
        default=128, ge=8, description="null selects the native binary64 backend")
    naive: bool = False

    @model_validator(mode="after")
    def _one_stop_criterion(self):
        if self.stages is not None and self.width_tol is not None:
            raise ValueError("give at most one of stages or width_tol")
        return self


class EnclosureRecord(BaseModel):
    stage: int
    sides: int
    lower: str
    upper: str
    width: str
    lower_float: float
    upper_float: float


class PiResponse(BaseModel):
    k: int
    precision_bits: Optional[int]
    naive: bool
    exhausted: bool
    records: list[EnclosureRecord]


class CurveSpec(BaseModel):
    curve: Optional[str] = None
    expression: Optional[str] = None
    from_x: Optional[float] = None
    to_x: Optional[float] = None

    @model_validator(mode="after")
    def _one_source(self):
        if (self.curve is None) == (self.expression is None):
            raise ValueError("give exactly one of curve or expression")
        if self.expression is not None and (self.from_x is None or self.to_x is None):
            raise ValueError("expression curves need from_x and to_x")
        return self


class ArclenRequest(CurveSpec):
    tol: float = Field(default=1e-6, gt=0)
    max_stages: int = Field(default=30, ge=1, le=40)
    oracle: bool = False


class StageModel(BaseModel):
    stage: int
    points: int
    secant: float
    tangent: float
    gap: float


class SegmentModel(BaseModel):
    segment: int
    from_x: float
    to_x: float
    orientation: Literal["convex", "concave", "linear"]
    lower: float
    upper: float
    rectifiability_bound: float
    stages: list[StageModel]


class ArclenResponse(BaseModel):
    curve: str
    tol: float
    lower: float
    upper: float
    estimate: float
    converged: bool
    segments: list[SegmentModel]
    oracle_value: Optional[float] = None
    oracle_error_estimate: Optional[float] = None
    oracle_delta: Optional[float] = None


class MetricDemoRequest(CurveSpec):
    partitions: int = Field(default=10, ge=1, le=500)
    seed: int = 0


class MetricDemoRow(BaseModel):
    partition: int
    points: int
    taxicab: float
    secant: float


class MetricDemoResponse(BaseModel):
    curve: str
    oracle: float
    rows: list[MetricDemoRow]


class CompareRequest(BaseModel):
    inner: str
    outer: str
    from_x: float
    to_x: float
    tol: float = Field(default=1e-7, gt=0)


class CompareResponse(BaseModel):
    inner_lower: float
    inner_upper: float
    outer_lower: float
    outer_upper: float
    inner_is_shorter: bool
    ordering_consistent: bool


class CurveInfo(BaseModel):
    name: str
    expression: str
    from_x: float
    to_x: float


class ErrorPayload(BaseModel):
    code: str
    message: str
    offset: Optional[int] = None
