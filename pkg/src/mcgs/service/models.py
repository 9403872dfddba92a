"""Request/response models for the synthesis service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

Method = Literal["linear", "original", "optimized", "auto"]
Metric = Literal["abstract_depth", "lowered_depth", "cx_count"]


class SynthRequest(BaseModel):
    n: int = Field(ge=1)
    method: Method = "auto"
    base_threshold: Optional[int] = Field(default=None, ge=3)
    linear_cutover: Optional[int] = Field(default=None, ge=3)
    include_qasm: bool = True


class MetricsOut(BaseModel):
    n: int
    method: str
    width: int
    abstract_depth: int
    lowered_depth: int
    cx_count: int
    total_gates: int
    ancillas: int


class SynthResponse(BaseModel):
    metrics: MetricsOut
    qasm: Optional[str] = None


class VerifyMcxRequest(BaseModel):
    n: int = Field(ge=1)
    method: Method = "optimized"
    mode: Literal["auto", "exhaustive", "sampled"] = "auto"
    samples: int = Field(default=1000, ge=1)
    seed: Optional[int] = None
    base_threshold: Optional[int] = Field(default=None, ge=3)
    linear_cutover: Optional[int] = Field(default=None, ge=3)


class FailureOut(BaseModel):
    input: int
    expected: int
    got: int


class ReportOut(BaseModel):
    mode: str
    checked: int
    passed: bool
    max_distance: float
    seed: Optional[int] = None
    failures: list[FailureOut] = []


class VerifySu2Request(BaseModel):
    n: int = Field(ge=1)
    theta: Optional[float] = None  # Ry(theta) target; random SU(2) when omitted
    seed: Optional[int] = None
    tolerance: float = 1e-9


class UnitaryReportOut(BaseModel):
    mode: Literal["unitary"] = "unitary"
    checked: int
    passed: bool
    max_distance: float
    tolerance: float
    steps: Optional[int] = None
    residual_error: Optional[float] = None


class VerifyU2Request(BaseModel):
    n: int = Field(ge=1)
    epsilon: float = Field(gt=0)
    seed: Optional[int] = None


class BenchRequest(BaseModel):
    ns: list[int] = Field(min_length=1)
    methods: list[Method] = Field(min_length=1)
    seed: Optional[int] = None
    measure_time: bool = False


class BenchRowOut(BaseModel):
    n: int
    method: str
    abstract_depth: int
    lowered_depth: int
    cx_count: int
    total_gates: int
    ancillas: int
    seed: int
    wall_ms: float


class BenchResponse(BaseModel):
    rows: list[BenchRowOut]
    csv: str


class ExponentRequest(BaseModel):
    terms: list[tuple[float, float]] = Field(min_length=1)


class ExponentResponse(BaseModel):
    alpha: float


class CrossoverRequest(BaseModel):
    metric: Metric = "lowered_depth"
    method_a: Method
    method_b: Method
    n_min: int = Field(default=4, ge=1)
    n_max: int = Field(ge=1)


class CrossoverResponse(BaseModel):
    crossover: Optional[int]


class PredictRequest(BaseModel):
    n: int = Field(ge=1)
    variant: Literal["original", "optimized"] = "original"
    base_threshold: int = Field(default=16, ge=3)


class PredictResponse(BaseModel):
    depth: int
