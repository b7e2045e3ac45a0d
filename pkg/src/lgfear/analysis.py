"""Report assembly: single-point analysis, parameter sweeps, CSV rendering.

This is the layer the service and CLI sit on.  Reports are plain dicts
(JSON-ready) so the service can return them unchanged; floats pass through
Python's shortest round-trip repr in JSON and a fixed 17-significant-digit
format in CSV, so identical inputs give byte-identical outputs.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .bifurcation import (
    cusp_check,
    first_lyapunov,
    hopf_detect,
    saddle_node_type,
    sotomayor_saddle_node,
)
from .equilibria import (
    KIND_INTERIOR_HIGH,
    KIND_INTERIOR_LOW,
    ONE_DEGENERATE,
    all_equilibria,
    existence_regime,
)
from .errata import errata_report
from .errors import DomainError, NumericalError
from .integrate import IntegratorConfig, detect_limit_cycle
from .model import Params
from .stability import (
    classify,
    origin_blowup,
    s_star,
    s_star_upper,
    s_zero,
)

SCHEMA_VERSION = 1

SWEEP_AXES = ("lam", "s", "a", "m")
SWEEP_HEADER = "param,kind,x,y,label,trace,det,amplitude"


def _f17(value: float | None) -> str:
    return "" if value is None else format(float(value), ".17g")


def _params_dict(p: Params) -> dict:
    return {"m": p.m, "a": p.a, "lam": p.lam, "s": p.s}


def _thresholds(p: Params) -> dict:
    regime = existence_regime(p)
    out: dict = {"a1_star": regime.a1_star, "lam_sn": regime.lam_crit}
    for name, fn in (("s0", s_zero), ("s_star", s_star), ("s_star_upper", s_star_upper)):
        try:
            out[name] = fn(p)
        except DomainError:
            out[name] = None
    return out


def _hopf_section(p: Params, kind: str) -> dict:
    try:
        report = hopf_detect(p, kind=kind)
    except DomainError as exc:
        return {"exists": False, "reason": str(exc)}
    at_crit = replace(p, s=report.s_star)
    full = first_lyapunov(at_crit, kind=kind)
    return {
        "exists": True,
        "s_star": full.s_star,
        "mu_prime": full.mu_prime,
        "omega": full.omega,
        "l1": full.l1,
        "direction": full.direction,
    }


def _fold_section(p: Params) -> dict:
    out: dict = {}
    try:
        check = sotomayor_saddle_node(p)
        out["sotomayor"] = {
            "v": [float(v) for v in check.v],
            "w": [float(w) for w in check.w],
            "t1": check.t1,
            "t2": check.t2,
            "passes": check.passes,
        }
        out["saddle_node_type"] = saddle_node_type(p)
    except DomainError as exc:
        out["sotomayor"] = {"error": str(exc)}
    try:
        out["cusp"] = cusp_check(p)
    except DomainError as exc:
        out["cusp"] = {"error": str(exc)}
    return out


def analyze(p: Params, include_errata: bool = True) -> dict:
    """Full single-point analysis report."""
    regime = existence_regime(p)
    equilibria = []
    for e in all_equilibria(p):
        lin = classify(p, e)
        equilibria.append(
            {
                "kind": e.kind,
                "x": e.x,
                "y": e.y,
                "label": lin.label,
                "trace": float(lin.trace),
                "det": float(lin.det),
                "eigs": [[z.real, z.imag] for z in lin.eigs],
            }
        )
    blowup = origin_blowup(p)
    report: dict = {
        "schema_version": SCHEMA_VERSION,
        "params": _params_dict(p),
        "regime": {
            "label": regime.label,
            "delta": regime.delta,
            "reason": regime.reason,
        },
        "equilibria": equilibria,
        "thresholds": _thresholds(p),
        "blowup": {
            "origin_verdict": blowup.origin_verdict,
            "matches_published_claim": blowup.matches_published_claim,
            "singularities": [
                {
                    "v": s.v,
                    "eigs": list(s.eigs),
                    "label": s.label,
                    "hyperbolic": s.hyperbolic,
                }
                for s in blowup.singularities
            ],
        },
        "hopf": {
            "lower": _hopf_section(p, KIND_INTERIOR_LOW),
            "upper": _hopf_section(p, KIND_INTERIOR_HIGH),
        },
    }
    if regime.label == ONE_DEGENERATE:
        report["fold"] = _fold_section(p)
    if include_errata:
        report["errata"] = errata_report(p)["entries"]
    return report


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepRow:
    param: float
    kind: str
    x: float | None
    y: float | None
    label: str
    trace: float | None
    det: float | None
    amplitude: float | None

    def to_csv_fields(self) -> list[str]:
        return [
            _f17(self.param),
            self.kind,
            _f17(self.x),
            _f17(self.y),
            self.label,
            _f17(self.trace),
            _f17(self.det),
            _f17(self.amplitude),
        ]


def _measure_cycle_amplitude(p: Params) -> float | None:
    """Cycle amplitude around the upper interior equilibrium, if one settles."""
    try:
        high = next(e for e in all_equilibria(p) if e.kind == KIND_INTERIOR_HIGH)
    except StopIteration:
        return None
    lin = classify(p, high)
    if lin.det <= 0.0 or lin.trace <= 0.0:
        # cycles here come from the Hopf at the trace zero; skip stable points
        return None
    try:
        search = detect_limit_cycle(
            p, (high.x * 1.05, high.y * 1.05), cfg=IntegratorConfig()
        )
    except (DomainError, NumericalError):
        return None
    if search.status != "cycle" or search.cycle is None:
        return None
    return search.cycle.amplitude


def _sweep_point(
    base: Params, axis: str, value: float, measure_amplitude: bool
) -> list[SweepRow]:
    try:
        p = replace(base, **{axis: value})
        eqs = all_equilibria(p)
    except DomainError:
        return [
            SweepRow(param=value, kind="", x=None, y=None, label="", trace=None, det=None, amplitude=None)
        ]
    amplitude = _measure_cycle_amplitude(p) if measure_amplitude else None
    rows = []
    for e in eqs:
        try:
            lin = classify(p, e)
            label, trace, det = lin.label, float(lin.trace), float(lin.det)
        except DomainError:
            label, trace, det = "", None, None
        rows.append(
            SweepRow(
                param=value,
                kind=e.kind,
                x=e.x,
                y=e.y,
                label=label,
                trace=trace,
                det=det,
                amplitude=amplitude if e.kind == KIND_INTERIOR_HIGH else None,
            )
        )
    return rows


def sweep(
    base: Params,
    axis: str,
    start: float,
    stop: float,
    steps: int,
    jobs: int = 1,
    measure_amplitude: bool = False,
) -> list[SweepRow]:
    """Evaluate equilibria and stability over a uniform grid along one axis.

    Rows come back in grid order, sorted by swept value then kind; per-point
    failures produce rows with empty stability fields instead of aborting.
    """
    if axis not in SWEEP_AXES:
        raise DomainError(f"sweep axis must be one of {SWEEP_AXES}, got {axis!r}")
    if steps < 2:
        raise DomainError(f"sweep needs at least 2 steps, got {steps!r}")
    if not (stop > start > 0.0):
        raise DomainError(f"sweep range must satisfy 0 < start < stop, got [{start!r}, {stop!r}]")
    if jobs < 1:
        raise DomainError(f"jobs must be >= 1, got {jobs!r}")
    grid = np.linspace(start, stop, steps)
    if jobs == 1:
        chunks = [_sweep_point(base, axis, float(v), measure_amplitude) for v in grid]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_sweep_point, base, axis, float(v), measure_amplitude)
                for v in grid
            ]
            chunks = [f.result() for f in futures]  # grid order regardless of completion
    return [row for chunk in chunks for row in chunk]


def sweep_to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    buf.write(SWEEP_HEADER + "\n")
    for row in rows:
        buf.write(",".join(row.to_csv_fields()) + "\n")
    return buf.getvalue()


def sweep_rows_from_csv(text: str) -> list[SweepRow]:
    """Inverse of :func:`sweep_to_csv`; exact for the emitted format."""
    lines = text.splitlines()
    if not lines or lines[0] != SWEEP_HEADER:
        raise ValueError("not a sweep CSV: header mismatch")
    rows = []
    for line in lines[1:]:
        param, kind, x, y, label, trace, det, amplitude = line.split(",")
        rows.append(
            SweepRow(
                param=float(param),
                kind=kind,
                x=float(x) if x else None,
                y=float(y) if y else None,
                label=label,
                trace=float(trace) if trace else None,
                det=float(det) if det else None,
                amplitude=float(amplitude) if amplitude else None,
            )
        )
    return rows


def sweep_plot_script(csv_path: str, axis: str) -> str:
    """gnuplot commands rendering a bifurcation diagram from a sweep CSV."""
    return "\n".join(
        [
            "set datafile separator ','",
            f"set xlabel '{axis}'",
            "set ylabel 'equilibrium prey level x'",
            "set key outside",
            f"plot '{csv_path}' using 1:($3) every ::1 with points pt 7 ps 0.3 title 'equilibria'",
            "",
        ]
    )
