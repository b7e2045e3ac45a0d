"""Pydantic request/response models for the analysis service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

from ..model import Params


class ParamsIn(BaseModel):
    """Nondimensional model parameters; m restricted to the strong-Allee range."""

    m: float = Field(gt=0.0, lt=1.0)
    a: float = Field(gt=0.0)
    lam: float = Field(gt=0.0)
    s: float = Field(gt=0.0)

    def to_params(self) -> Params:
        return Params(m=self.m, a=self.a, lam=self.lam, s=self.s)


class AnalyzeRequest(BaseModel):
    params: ParamsIn
    include_errata: bool = True


class SweepRequest(BaseModel):
    params: ParamsIn
    axis: Literal["lam", "s", "a", "m"]
    start: float = Field(gt=0.0)
    stop: float = Field(gt=0.0)
    steps: int = Field(ge=2)
    jobs: int = Field(default=1, ge=1)
    measure_amplitude: bool = False


class SweepRowOut(BaseModel):
    param: float
    kind: str
    x: float | None
    y: float | None
    label: str
    trace: float | None
    det: float | None
    amplitude: float | None


class SweepResponse(BaseModel):
    header: str
    rows: list[SweepRowOut]


class SimulateRequest(BaseModel):
    params: ParamsIn
    x0: float = Field(gt=0.0)
    y0: float = Field(ge=0.0)
    t_end: float = Field(gt=0.0)
    rtol: float = Field(default=1e-8, gt=0.0)
    atol: float = Field(default=1e-10, gt=0.0)


class SimulateResponse(BaseModel):
    terminal_status: str
    csv: str


class ErrorBody(BaseModel):
    code: Literal["domain", "numerical"]
    message: str
