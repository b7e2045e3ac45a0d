"""Adaptive explicit integration, limit-cycle detection and the origin probe.

The stepper is an embedded Dormand-Prince 5(4) pair with PI step-size
control.  The model is non-stiff in the regimes studied here, so no implicit
method is provided.  The predator equation divides by x, so the integrator
treats the crossing of a small floor x_floor as a first-class terminal event
(DomainExit) rather than an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericalError
from .equilibria import (
    discriminant,
    discriminant_tolerance,
    interior_equilibria,
)
from .model import Params

STATUS_TIME_EXHAUSTED = "TimeExhausted"
STATUS_STEP_BUDGET = "StepBudget"
STATUS_DOMAIN_EXIT = "DomainExit"
STATUS_CONVERGED = "Converged"

PROBE_ESCAPES = "Escapes"
PROBE_CONVERGES = "ConvergesToOrigin"
PROBE_MIXED = "Mixed"

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
# difference between 5th and embedded 4th order weights
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)


@dataclass(frozen=True)
class IntegratorConfig:
    rtol: float = 1e-8
    atol: float = 1e-10
    h0: float = 1e-2
    h_min: float = 1e-12
    h_max: float = math.inf
    max_steps: int = 1_000_000
    x_floor: float = 1e-12

    def __post_init__(self) -> None:
        if not (self.rtol > 0.0 and self.atol > 0.0):
            raise ValueError("rtol and atol must be positive")
        if not (0.0 < self.h_min < self.h0):
            raise ValueError("need 0 < h_min < h0")
        if not (self.x_floor > 0.0):
            raise ValueError("x_floor must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


@dataclass
class Trajectory:
    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    terminal_status: str

    def samples(self) -> list[tuple[float, float, float]]:
        return list(zip(self.t.tolist(), self.x.tolist(), self.y.tolist()))

    def to_csv(self) -> str:
        lines = ["t,x,y"]
        for t, x, y in zip(self.t, self.x, self.y):
            lines.append(f"{t:.17g},{x:.17g},{y:.17g}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Cycle:
    period: float
    amplitude: float
    section_point: tuple[float, float]


def _field(p: Params, x: float, y: float) -> tuple[float, float]:
    # inlined vector field without State overhead; caller guarantees x > 0
    fear = 1.0 + p.lam * y
    dx = x * (1.0 - x) * (x - p.m) / fear - p.a * x * y
    dy = p.s * y * (1.0 - y / x)
    return dx, dy


def _dp_step(p: Params, x: float, y: float, h: float):
    """One Dormand-Prince step.  Returns (x5, y5, err_x, err_y) or None if a
    stage left the admissible half-plane x > 0."""
    kx = [0.0] * 7
    ky = [0.0] * 7
    for i in range(7):
        xi = x
        yi = y
        ai = _A[i]
        for j in range(len(ai)):
            xi += h * ai[j] * kx[j]
            yi += h * ai[j] * ky[j]
        if xi <= 0.0:
            return None
        kx[i], ky[i] = _field(p, xi, yi)
    x5 = x + h * sum(_B5[i] * kx[i] for i in range(7))
    y5 = y + h * sum(_B5[i] * ky[i] for i in range(7))
    err_x = h * sum(_E[i] * kx[i] for i in range(7))
    err_y = h * sum(_E[i] * ky[i] for i in range(7))
    return x5, y5, err_x, err_y


class _Stepper:
    """Adaptive stepping loop shared by all integration entry points."""

    def __init__(self, p: Params, x: float, y: float, cfg: IntegratorConfig):
        if not (x > cfg.x_floor):
            raise DomainError(f"initial prey level must exceed x_floor, got x={x!r}")
        if y < 0.0:
            raise DomainError(f"initial predator level must be nonnegative, got y={y!r}")
        self.p = p
        self.cfg = cfg
        self.t = 0.0
        self.x = x
        self.y = y
        self.h = min(cfg.h0, cfg.h_max)
        self.steps = 0
        self._err_prev = 1.0

    def _error_norm(self, err_x: float, err_y: float, x_new: float, y_new: float) -> float:
        cfg = self.cfg
        sx = cfg.atol + cfg.rtol * max(abs(self.x), abs(x_new))
        sy = cfg.atol + cfg.rtol * max(abs(self.y), abs(y_new))
        return math.sqrt(0.5 * ((err_x / sx) ** 2 + (err_y / sy) ** 2))

    def advance(self, t_limit: float) -> str | None:
        """Take one accepted step, not beyond t_limit.

        Returns a terminal status string when the integration must stop,
        otherwise None.
        """
        cfg = self.cfg
        if self.steps >= cfg.max_steps:
            return STATUS_STEP_BUDGET
        h = min(self.h, t_limit - self.t)
        if h <= 0.0:
            return STATUS_TIME_EXHAUSTED
        while True:
            self.steps += 1
            if self.steps > cfg.max_steps:
                return STATUS_STEP_BUDGET
            result = _dp_step(self.p, self.x, self.y, h)
            rejected = result is None
            if not rejected:
                x5, y5, err_x, err_y = result
                err = self._error_norm(err_x, err_y, x5, y5)
                # positivity guard: shrink instead of accepting an inadmissible state
                rejected = err > 1.0 or x5 <= 0.0 or y5 < 0.0
            if rejected:
                if result is None:
                    h *= 0.5
                else:
                    if x5 <= 0.0 or y5 < 0.0:
                        h *= 0.5
                    else:
                        h *= max(0.2, 0.9 * err ** -0.2)
                if h < cfg.h_min:
                    return STATUS_STEP_BUDGET
                continue
            # accepted: PI controller for the next step size
            grow = 0.9 * (err + 1e-16) ** -0.14 * (self._err_prev + 1e-16) ** 0.08
            self._err_prev = err + 1e-16
            self.t += h
            self.x, self.y = x5, y5
            self.h = min(cfg.h_max, h * min(5.0, max(0.2, grow)))
            if self.x <= cfg.x_floor:
                return STATUS_DOMAIN_EXIT
            return None


def integrate(
    p: Params,
    init: tuple[float, float],
    t_end: float,
    cfg: IntegratorConfig | None = None,
    stop_when_static: bool = False,
) -> Trajectory:
    """Integrate the model from ``init`` over [0, t_end].

    With ``stop_when_static`` the run ends early (status Converged) once the
    vector field at the current state drops below max(1e-12, 10*atol) in both
    components; the floor scales with atol because the state cannot settle
    closer to an equilibrium than the step-error tolerance allows.
    """
    if cfg is None:
        cfg = IntegratorConfig()
    if not (t_end > 0.0):
        raise DomainError(f"t_end must be positive, got {t_end!r}")
    stepper = _Stepper(p, init[0], init[1], cfg)
    ts = [stepper.t]
    xs = [stepper.x]
    ys = [stepper.y]
    status = STATUS_TIME_EXHAUSTED
    while True:
        outcome = stepper.advance(t_end)
        if outcome == STATUS_TIME_EXHAUSTED:
            status = STATUS_TIME_EXHAUSTED
            break
        if outcome is not None:
            ts.append(stepper.t)
            xs.append(stepper.x)
            ys.append(stepper.y)
            status = outcome
            break
        ts.append(stepper.t)
        xs.append(stepper.x)
        ys.append(stepper.y)
        if stop_when_static:
            static_tol = max(1e-12, 10.0 * cfg.atol)
            dx, dy = _field(p, stepper.x, stepper.y)
            if max(abs(dx), abs(dy)) < static_tol:
                status = STATUS_CONVERGED
                break
    return Trajectory(
        t=np.array(ts), x=np.array(xs), y=np.array(ys), terminal_status=status
    )


def integrate_fixed_step(
    p: Params, init: tuple[float, float], t_end: float, h: float
) -> tuple[float, float]:
    """Fixed-step Dormand-Prince run; used for order-of-accuracy checks."""
    x, y = init
    n = max(1, round(t_end / h))
    h = t_end / n
    for _ in range(n):
        result = _dp_step(p, x, y, h)
        if result is None:
            raise NumericalError("fixed-step run left the admissible domain")
        x, y = result[0], result[1]
    return x, y


# ---------------------------------------------------------------------------
# limit-cycle detection


def _section_value(x: float, y: float) -> float:
    # diagonal section through the interior equilibria
    return y - x


def _refine_crossing(
    p: Params, x0: float, y0: float, h: float
) -> tuple[float, float, float]:
    """Locate the zero of y - x along the step [0, h] from (x0, y0).

    A single Dormand-Prince evaluation over a partial step is accurate to
    O(h^6), so bisection on the substep length resolves the crossing far
    below the section tolerances.
    """
    lo, hi = 0.0, h
    g_lo = _section_value(x0, y0)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        res = _dp_step(p, x0, y0, mid)
        if res is None:
            raise NumericalError("section refinement left the domain")
        g_mid = _section_value(res[0], res[1])
        if g_lo * g_mid <= 0.0:
            hi = mid
        else:
            lo = mid
            g_lo = g_mid
    res = _dp_step(p, x0, y0, 0.5 * (lo + hi))
    return 0.5 * (lo + hi), res[0], res[1]


@dataclass
class CycleSearch:
    status: str  # "cycle", "equilibrium", "domain-exit", "inconclusive"
    cycle: Cycle | None = None
    crossings: list[tuple[float, float, float]] = field(default_factory=list)


def _measure_amplitude(
    p: Params, point: tuple[float, float], period: float, cfg: IntegratorConfig
) -> float:
    """Max deviation of x from its time-average over one period."""
    dense = IntegratorConfig(
        rtol=cfg.rtol,
        atol=cfg.atol,
        h0=min(cfg.h0, period / 256.0),
        h_min=cfg.h_min,
        h_max=period / 256.0,
        max_steps=cfg.max_steps,
        x_floor=cfg.x_floor,
    )
    traj = integrate(p, point, period, dense)
    t, x = traj.t, traj.x
    mean = float(np.trapezoid(x, t) / (t[-1] - t[0]))
    return float(np.max(np.abs(x - mean)))


def detect_limit_cycle(
    p: Params,
    init: tuple[float, float],
    cfg: IntegratorConfig | None = None,
    transient: float | None = None,
    max_time: float | None = None,
) -> CycleSearch:
    """Search for a periodic orbit in the interior of the first quadrant.

    Integrates past a transient window (default 50/s, the slow predator
    timescale), then collects crossings of the diagonal section y = x taken
    in a fixed direction.  A cycle is reported when successive returns agree
    to 1e-6 in position (relative) and 1e-5 in period (relative); convergence
    to an equilibrium reports status "equilibrium".
    """
    if cfg is None:
        cfg = IntegratorConfig()
    if discriminant(p) <= discriminant_tolerance(p):
        raise DomainError("cycle detection requires two interior equilibria")
    interiors = interior_equilibria(p)
    if any(abs(init[0] - e.x) < 1e-14 and abs(init[1] - e.y) < 1e-14 for e in interiors):
        raise DomainError("initial point coincides with an interior equilibrium")
    if transient is None:
        transient = 50.0 / p.s
    if max_time is None:
        max_time = transient + 2000.0 / p.s

    warm = integrate(p, init, transient, cfg)
    if warm.terminal_status == STATUS_DOMAIN_EXIT:
        return CycleSearch(status="domain-exit")
    if warm.terminal_status == STATUS_STEP_BUDGET:
        return CycleSearch(status="inconclusive")

    # cap the step so the section is never skipped across a whole loop
    det_cfg = IntegratorConfig(
        rtol=cfg.rtol,
        atol=cfg.atol,
        h0=cfg.h0,
        h_min=cfg.h_min,
        h_max=min(cfg.h_max, 0.25),
        max_steps=cfg.max_steps,
        x_floor=cfg.x_floor,
    )
    stepper = _Stepper(p, warm.x[-1], warm.y[-1], det_cfg)
    crossings: list[tuple[float, float, float]] = []  # (t, x, y)
    prev = (stepper.t, stepper.x, stepper.y)
    while True:
        outcome = stepper.advance(max_time)
        if outcome == STATUS_DOMAIN_EXIT:
            return CycleSearch(status="domain-exit", crossings=crossings)
        if outcome is not None:
            return CycleSearch(status="inconclusive", crossings=crossings)
        cur = (stepper.t, stepper.x, stepper.y)
        dist_eq = min(math.hypot(cur[1] - e.x, cur[2] - e.y) for e in interiors)
        if dist_eq < 1e-8:
            return CycleSearch(status="equilibrium", crossings=crossings)
        g_prev = _section_value(prev[1], prev[2])
        g_cur = _section_value(cur[1], cur[2])
        if g_prev > 0.0 >= g_cur:
            tau, cx, cy = _refine_crossing(p, prev[1], prev[2], cur[0] - prev[0])
            crossings.append((prev[0] + tau, cx, cy))
            if len(crossings) >= 2:
                t1, x1, y1 = crossings[-2]
                t2, x2, y2 = crossings[-1]
                period = t2 - t1
                pos_err = math.hypot(x2 - x1, y2 - y1) / max(math.hypot(x2, y2), 1e-30)
                if len(crossings) >= 3:
                    t0 = crossings[-3][0]
                    period_prev = t1 - t0
                    period_err = abs(period - period_prev) / max(period, 1e-30)
                else:
                    period_err = math.inf
                if pos_err < 1e-6 and period_err < 1e-5:
                    if min(math.hypot(x2 - e.x, y2 - e.y) for e in interiors) < 1e-8:
                        return CycleSearch(status="equilibrium", crossings=crossings)
                    amplitude = _measure_amplitude(p, (x2, y2), period, cfg)
                    return CycleSearch(
                        status="cycle",
                        cycle=Cycle(period=period, amplitude=amplitude, section_point=(x2, y2)),
                        crossings=crossings,
                    )
        prev = cur


# ---------------------------------------------------------------------------
# origin probe


def origin_attraction_probe(
    p: Params,
    delta: float,
    cfg: IntegratorConfig | None = None,
    n_angles: int = 7,
) -> str:
    """Empirical verdict on the origin from a fan of nearby initial points.

    Integrates from points at radius delta with angles spread over the open
    first quadrant plus the on-axis point (delta, 0).  Escapes when every run
    leaves the ball of radius 10*delta; ConvergesToOrigin when every run
    decays below x_floor; Mixed otherwise.
    """
    if not (0.0 < delta <= 1e-2):
        raise DomainError(f"probe radius must satisfy 0 < delta <= 1e-2, got {delta!r}")
    if cfg is None:
        cfg = IntegratorConfig(rtol=1e-8, atol=1e-14, x_floor=1e-12)
    outcomes = []
    angles = [math.pi / 2.0 * k / (n_angles + 1) for k in range(1, n_angles + 1)]
    starts = [(delta, 0.0)] + [(delta * math.cos(a), delta * math.sin(a)) for a in angles]
    t_budget = 200.0 * (1.0 + 1.0 / p.m) * (1.0 + math.log(delta / cfg.x_floor))
    for x0, y0 in starts:
        stepper = _Stepper(p, x0, y0, cfg)
        outcome = None
        while outcome is None:
            terminal = stepper.advance(t_budget)
            if math.hypot(stepper.x, stepper.y) > 10.0 * delta:
                outcome = "escape"
            elif terminal == STATUS_DOMAIN_EXIT:
                outcome = "converge"
            elif terminal is not None:
                raise NumericalError(
                    f"origin probe inconclusive from ({x0!r}, {y0!r}): {terminal}"
                )
        outcomes.append(outcome)
    if all(o == "escape" for o in outcomes):
        return PROBE_ESCAPES
    if all(o == "converge" for o in outcomes):
        return PROBE_CONVERGES
    return PROBE_MIXED
