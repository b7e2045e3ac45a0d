"""FastAPI service exposing the analysis library.

Domain violations map to 400 with body {"code": "domain", ...}; numerical
failures (budget exhaustion, inconclusive searches) map to 500 with
{"code": "numerical", ...}.  Pydantic validation failures keep FastAPI's
native 422.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..analysis import SWEEP_HEADER, analyze, sweep
from ..errata import errata_report
from ..errors import DomainError, NumericalError
from ..integrate import IntegratorConfig, integrate
from .schemas import (
    AnalyzeRequest,
    ErrorBody,
    SimulateRequest,
    SimulateResponse,
    SweepRequest,
    SweepResponse,
    SweepRowOut,
)

app = FastAPI(title="lgfear", version="1.0.0")


@app.exception_handler(DomainError)
async def _domain_error(_: Request, exc: DomainError) -> JSONResponse:
    body = ErrorBody(code="domain", message=str(exc))
    return JSONResponse(status_code=400, content=body.model_dump())


@app.exception_handler(NumericalError)
async def _numerical_error(_: Request, exc: NumericalError) -> JSONResponse:
    body = ErrorBody(code="numerical", message=str(exc))
    return JSONResponse(status_code=500, content=body.model_dump())


@app.get("/health")
async def health() -> dict:
    return {"status": "ok"}


@app.post("/analyze")
async def analyze_endpoint(req: AnalyzeRequest) -> dict:
    return analyze(req.params.to_params(), include_errata=req.include_errata)


@app.post("/sweep", response_model=SweepResponse)
async def sweep_endpoint(req: SweepRequest) -> SweepResponse:
    rows = sweep(
        req.params.to_params(),
        req.axis,
        req.start,
        req.stop,
        req.steps,
        jobs=req.jobs,
        measure_amplitude=req.measure_amplitude,
    )
    return SweepResponse(
        header=SWEEP_HEADER,
        rows=[SweepRowOut(**row.__dict__) for row in rows],
    )


@app.post("/simulate", response_model=SimulateResponse)
async def simulate_endpoint(req: SimulateRequest) -> SimulateResponse:
    cfg = IntegratorConfig(rtol=req.rtol, atol=req.atol)
    traj = integrate(req.params.to_params(), (req.x0, req.y0), req.t_end, cfg)
    return SimulateResponse(terminal_status=traj.terminal_status, csv=traj.to_csv())


@app.get("/errata")
async def errata_endpoint() -> dict:
    return errata_report()
