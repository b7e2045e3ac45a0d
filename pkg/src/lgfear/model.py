"""Core model definitions: parameters, state, vector field and its derivatives.

The model is a planar Leslie-Gower predator-prey system with a strong Allee
effect on the prey and a fear response that suppresses the prey birth rate:

    dx/dt = x (1 - x) (x - m) / (1 + lam * y) - a * x * y
    dy/dt = s * y * (1 - y / x)

All quantities are nondimensional.  The field is singular on x = 0, so every
operation rejects x <= 0 with a hard :class:`DomainError` instead of clamping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class Params:
    """Nondimensional model parameters.

    m    : Allee threshold (strong Allee effect requires 0 < m < 1)
    a    : interspecific pressure coefficient
    lam  : fear intensity
    s    : predator growth rate
    """

    m: float
    a: float
    lam: float
    s: float

    def __post_init__(self) -> None:
        for name in ("m", "a", "lam", "s"):
            value = getattr(self, name)
            if not (value > 0.0) or not np.isfinite(value):
                raise DomainError(f"parameter {name} must be strictly positive, got {value!r}")

    @property
    def strong_allee(self) -> bool:
        return 0.0 < self.m < 1.0

    def require_strong_allee(self) -> None:
        if not self.strong_allee:
            raise DomainError(f"operation requires the strong-Allee regime 0 < m < 1, got m={self.m!r}")


@dataclass(frozen=True)
class DimParams:
    """Dimensional parameters of the un-scaled model.

    r     : prey birth rate (1/time)
    K     : prey carrying capacity (density)
    m_dim : Allee threshold (density)
    a_dim : predation coefficient
    lam_dim : fear intensity
    s_dim : predator growth rate
    h     : prey-to-predator carrying ratio
    """

    r: float
    K: float
    m_dim: float
    a_dim: float
    lam_dim: float
    s_dim: float
    h: float

    def __post_init__(self) -> None:
        for name in ("r", "K", "m_dim", "a_dim", "lam_dim", "s_dim", "h"):
            value = getattr(self, name)
            if not (value > 0.0) or not np.isfinite(value):
                raise DomainError(f"parameter {name} must be strictly positive, got {value!r}")


@dataclass(frozen=True)
class State:
    """A point in phase space.  x > 0 (prey), y >= 0 (predator)."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (self.x > 0.0):
            raise DomainError(f"prey density must be strictly positive, got x={self.x!r}")
        if self.y < 0.0:
            raise DomainError(f"predator density must be nonnegative, got y={self.y!r}")


def nondimensionalize(d: DimParams) -> Params:
    """Map dimensional parameters onto the nondimensional ones.

    Scales: x -> x/K, y -> y/(hK), t -> rK t.  This sends the Allee threshold
    to m_dim/K, the predation coefficient to h*a_dim/r, the fear intensity to
    lam_dim*h*K and the predator growth rate to s_dim/(rK).
    """
    return Params(
        m=d.m_dim / d.K,
        a=d.h * d.a_dim / d.r,
        lam=d.lam_dim * d.h * d.K,
        s=d.s_dim / (d.r * d.K),
    )


def _growth(m: float, x: float) -> float:
    # cubic prey growth numerator g(x) = x (1-x) (x-m)
    return x * (1.0 - x) * (x - m)


def _growth_d1(m: float, x: float) -> float:
    return -3.0 * x * x + 2.0 * (1.0 + m) * x - m


def _growth_d2(m: float, x: float) -> float:
    return -6.0 * x + 2.0 * (1.0 + m)


def rhs_xy(p: Params, x: float, y: float) -> tuple[float, float]:
    """Vector field evaluated at raw coordinates.  Guards only x > 0."""
    if not (x > 0.0):
        raise DomainError(f"vector field undefined for x <= 0, got x={x!r}")
    fear = 1.0 + p.lam * y
    dx = _growth(p.m, x) / fear - p.a * x * y
    dy = p.s * y * (1.0 - y / x)
    return dx, dy


def rhs(p: Params, st: State) -> tuple[float, float]:
    """Vector field of the model at a state."""
    return rhs_xy(p, st.x, st.y)


def jacobian_xy(p: Params, x: float, y: float) -> np.ndarray:
    """Jacobian of the vector field from the general partial derivatives.

    Valid at any admissible point, not only at equilibria; in particular the
    predator row is (s y^2 / x^2, s (1 - 2 y / x)), which reduces to (s, -s)
    on the diagonal y = x.
    """
    if not (x > 0.0):
        raise DomainError(f"Jacobian undefined for x <= 0, got x={x!r}")
    fear = 1.0 + p.lam * y
    g = _growth(p.m, x)
    g1 = _growth_d1(p.m, x)
    j11 = g1 / fear - p.a * y
    j12 = -p.lam * g / (fear * fear) - p.a * x
    j21 = p.s * y * y / (x * x)
    j22 = p.s * (1.0 - 2.0 * y / x)
    return np.array([[j11, j12], [j21, j22]])


def jacobian(p: Params, st: State) -> np.ndarray:
    return jacobian_xy(p, st.x, st.y)


def rhs_param_gradient(p: Params, st: State) -> dict[str, tuple[float, float]]:
    """Partial derivatives of the vector field with respect to each parameter."""
    x, y = st.x, st.y
    if not (x > 0.0):
        raise DomainError(f"vector field undefined for x <= 0, got x={x!r}")
    fear = 1.0 + p.lam * y
    g = _growth(p.m, x)
    return {
        "m": (-x * (1.0 - x) / fear, 0.0),
        "a": (-x * y, 0.0),
        "lam": (-y * g / (fear * fear), 0.0),
        "s": (0.0, y * (1.0 - y / x)),
    }


@dataclass(frozen=True)
class FieldDerivatives:
    """Partial derivatives of the vector field at a point, through third order.

    lin   : 2x2 Jacobian.
    quad  : shape (2, 3); per component the Taylor coefficients of
            (dx)^2, (dx)(dy), (dy)^2, i.e. (Fxx/2, Fxy, Fyy/2).
    cubic : shape (2, 4); Taylor coefficients of (dx)^3 ... (dy)^3,
            i.e. (Fxxx/6, Fxxy/2, Fxyy/2, Fyyy/6).
    """

    lin: np.ndarray
    quad: np.ndarray
    cubic: np.ndarray


def field_derivatives(p: Params, st: State) -> FieldDerivatives:
    """Closed-form derivatives of the vector field through third order."""
    x, y = st.x, st.y
    if not (x > 0.0):
        raise DomainError(f"derivatives undefined for x <= 0, got x={x!r}")
    lam, a, s = p.lam, p.a, p.s
    fear = 1.0 + lam * y
    g = _growth(p.m, x)
    g1 = _growth_d1(p.m, x)
    g2 = _growth_d2(p.m, x)

    # prey component
    f1xx = g2 / fear
    f1xy = -lam * g1 / fear**2 - a
    f1yy = 2.0 * lam * lam * g / fear**3
    f1xxx = -6.0 / fear
    f1xxy = -lam * g2 / fear**2
    f1xyy = 2.0 * lam * lam * g1 / fear**3
    f1yyy = -6.0 * lam**3 * g / fear**4

    # predator component
    f2xx = -2.0 * s * y * y / x**3
    f2xy = 2.0 * s * y / x**2
    f2yy = -2.0 * s / x
    f2xxx = 6.0 * s * y * y / x**4
    f2xxy = -4.0 * s * y / x**3
    f2xyy = 2.0 * s / x**2
    f2yyy = 0.0

    lin = jacobian_xy(p, x, y)
    quad = np.array(
        [
            [f1xx / 2.0, f1xy, f1yy / 2.0],
            [f2xx / 2.0, f2xy, f2yy / 2.0],
        ]
    )
    cubic = np.array(
        [
            [f1xxx / 6.0, f1xxy / 2.0, f1xyy / 2.0, f1yyy / 6.0],
            [f2xxx / 6.0, f2xxy / 2.0, f2xyy / 2.0, f2yyy / 6.0],
        ]
    )
    return FieldDerivatives(lin=lin, quad=quad, cubic=cubic)
