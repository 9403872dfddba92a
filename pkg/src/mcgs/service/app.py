"""HTTP facade over the synthesis library."""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from .. import __version__
from ..analysis import base_depth_table, find_crossover, predict_depth
from ..bench import metric_fn, rows_to_csv, run_bench
from ..circuit import abstract_depth, gate_count, to_qasm
from ..errors import McgsError
from ..lowering import lowered_metrics
from ..synthesis.ctrl_u import mcsu2, mcu2_approx, ry
from ..synthesis.mcx import SynthesisConfig, default_config, synthesize
from ..verify import (
    DEFAULT_SEED,
    check_mcx,
    dense_unitary,
    exact_controlled_unitary,
    spectral_distance,
)
from .models import (
    BenchRequest,
    BenchResponse,
    BenchRowOut,
    CrossoverRequest,
    CrossoverResponse,
    ExponentRequest,
    ExponentResponse,
    FailureOut,
    MetricsOut,
    PredictRequest,
    PredictResponse,
    ReportOut,
    SynthRequest,
    SynthResponse,
    UnitaryReportOut,
    VerifyMcxRequest,
    VerifySu2Request,
    VerifyU2Request,
)


def _config_for(method: str, base_threshold: int | None, linear_cutover: int | None) -> SynthesisConfig:
    cfg = default_config(method)
    kwargs = {}
    if base_threshold is not None:
        kwargs["base_threshold"] = base_threshold
    if linear_cutover is not None:
        kwargs["linear_cutover"] = linear_cutover
    if kwargs:
        base = kwargs.get("base_threshold", cfg.base_threshold)
        kwargs.setdefault("linear_cutover", max(cfg.linear_cutover, base))
        try:
            cfg = SynthesisConfig(method=method, **kwargs)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
    return cfg


def create_app() -> FastAPI:
    app = FastAPI(title="mcgs synthesis service", version=__version__)

    @app.exception_handler(McgsError)
    async def _domain_error(_, exc: McgsError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/synth", response_model=SynthResponse)
    def synth(req: SynthRequest):
        cfg = _config_for(req.method, req.base_threshold, req.linear_cutover)
        try:
            circuit = synthesize(req.n, req.method, cfg)
        except (ValueError, McgsError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        depth, cx, _ = lowered_metrics(circuit)
        metrics = MetricsOut(
            n=req.n,
            method=req.method,
            width=circuit.width,
            abstract_depth=abstract_depth(circuit),
            lowered_depth=depth,
            cx_count=cx,
            total_gates=gate_count(circuit),
            ancillas=1,
        )
        return SynthResponse(metrics=metrics, qasm=to_qasm(circuit) if req.include_qasm else None)

    @app.post("/verify/mcx", response_model=ReportOut)
    def verify_mcx(req: VerifyMcxRequest):
        cfg = _config_for(req.method, req.base_threshold, req.linear_cutover)
        try:
            circuit = synthesize(req.n, req.method, cfg)
            report = check_mcx(
                circuit,
                req.n,
                mode=req.mode,
                samples=req.samples,
                seed=req.seed if req.seed is not None else DEFAULT_SEED,
            )
        except (ValueError, McgsError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return ReportOut(
            mode=report.mode,
            checked=report.checked,
            passed=report.passed,
            max_distance=report.max_distance,
            seed=report.seed,
            failures=[FailureOut(input=i, expected=w, got=g) for i, w, g in report.failures[:10]],
        )

    @app.post("/verify/su2", response_model=UnitaryReportOut)
    def verify_su2(req: VerifySu2Request):
        if req.n > 10:
            raise HTTPException(status_code=400, detail="dense verification capped at n=10")
        if req.theta is not None:
            w = ry(req.theta)
        else:
            rng = np.random.default_rng(req.seed if req.seed is not None else DEFAULT_SEED)
            w = _random_su2(rng)
        try:
            circuit = mcsu2(req.n, w)
            dist = spectral_distance(
                dense_unitary(circuit), exact_controlled_unitary(w, req.n, req.n + 1)
            )
        except (ValueError, McgsError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return UnitaryReportOut(
            checked=1, passed=dist <= req.tolerance, max_distance=dist, tolerance=req.tolerance
        )

    @app.post("/verify/u2", response_model=UnitaryReportOut)
    def verify_u2(req: VerifyU2Request):
        if req.n > 10:
            raise HTTPException(status_code=400, detail="dense verification capped at n=10")
        rng = np.random.default_rng(req.seed if req.seed is not None else DEFAULT_SEED)
        u = _random_u2(rng)
        try:
            circuit, plan = mcu2_approx(req.n, u, req.epsilon)
            dist = spectral_distance(
                dense_unitary(circuit), exact_controlled_unitary(u, req.n, req.n + 1)
            )
        except (ValueError, McgsError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        tol = req.epsilon + 1e-9
        return UnitaryReportOut(
            checked=1,
            passed=dist <= tol,
            max_distance=dist,
            tolerance=tol,
            steps=plan.steps,
            residual_error=plan.residual_error,
        )

    @app.post("/bench", response_model=BenchResponse)
    def bench(req: BenchRequest):
        seed = req.seed if req.seed is not None else DEFAULT_SEED
        try:
            rows = run_bench(req.ns, req.methods, seed=seed, measure_time=req.measure_time)
        except (ValueError, McgsError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return BenchResponse(
            rows=[BenchRowOut(**row.__dict__) for row in rows], csv=rows_to_csv(rows)
        )

    @app.post("/analyze/exponent", response_model=ExponentResponse)
    def analyze_exponent(req: ExponentRequest):
        from ..analysis import RecurrenceSpec, akra_bazzi_exponent

        try:
            alpha = akra_bazzi_exponent(RecurrenceSpec(tuple(req.terms)))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return ExponentResponse(alpha=alpha)

    @app.post("/analyze/crossover", response_model=CrossoverResponse)
    def analyze_crossover(req: CrossoverRequest):
        if req.n_max < req.n_min:
            raise HTTPException(status_code=400, detail="n_max must be >= n_min")
        metric = metric_fn(req.metric)
        result = find_crossover(
            metric, req.method_a, req.method_b, range(req.n_min, req.n_max + 1)
        )
        return CrossoverResponse(crossover=result)

    @app.post("/analyze/predict", response_model=PredictResponse)
    def analyze_predict(req: PredictRequest):
        table = base_depth_table(req.base_threshold)
        try:
            depth = predict_depth(req.n, table, req.variant, req.base_threshold)
        except (KeyError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return PredictResponse(depth=depth)

    return app


def _random_su2(rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
    det = np.linalg.det(q)
    return q / np.sqrt(det)


def _random_u2(rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    return q @ np.diag(np.diag(r) / np.abs(np.diag(r)))


app = create_app()
