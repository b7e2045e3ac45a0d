"""Fold and Hopf bifurcation machinery.

Everything here is computed from the partial derivatives of the implemented
vector field (see :func:`lgfear.model.field_derivatives`); published
closed-form coefficient lists are used only as cross-checks in the tests,
because several of them carry transcription defects (see :mod:`lgfear.errata`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError
from .equilibria import (
    KIND_INTERIOR_DEGENERATE,
    KIND_INTERIOR_HIGH,
    KIND_INTERIOR_LOW,
    Equilibrium,
    discriminant,
    discriminant_tolerance,
    interior_equilibria,
)
from .model import Params, State, field_derivatives, rhs_param_gradient, jacobian_xy
from .stability import s_star, s_star_upper, s_zero

ATTRACTING_SADDLE_NODE = "AttractingSaddleNode"
REPELLING_SADDLE_NODE = "RepellingSaddleNode"
CUSP_CODIM_2 = "CuspCodim2"
DEGENERATE = "Degenerate"

SUPERCRITICAL = "Supercritical"
SUBCRITICAL = "Subcritical"
UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class TaylorCoeffs:
    """Taylor coefficients of the field shifted to an interior equilibrium.

    lin   : 2x2 linear part.
    quad  : (2, 3) coefficients of u^2, u v, v^2 per component.
    cubic : (2, 4) coefficients of u^3 ... v^3, or None for order 2.
    """

    lin: np.ndarray
    quad: np.ndarray
    cubic: np.ndarray | None


@dataclass(frozen=True)
class SotomayorCheck:
    v: np.ndarray
    w: np.ndarray
    t1: float
    t2: float
    passes: bool


@dataclass(frozen=True)
class HopfReport:
    s_star: float
    mu_prime: float
    omega: float
    l1: float | None
    direction: str | None


def taylor_at(p: Params, e: Equilibrium, order: int = 2) -> TaylorCoeffs:
    """Shifted Taylor expansion of the field at an interior equilibrium."""
    if order not in (2, 3):
        raise ValueError(f"order must be 2 or 3, got {order!r}")
    if e.kind not in (KIND_INTERIOR_DEGENERATE, KIND_INTERIOR_LOW, KIND_INTERIOR_HIGH):
        raise DomainError(f"Taylor expansion requires an interior equilibrium, got kind={e.kind!r}")
    derivs = field_derivatives(p, State(e.x, e.y))
    return TaylorCoeffs(
        lin=derivs.lin,
        quad=derivs.quad,
        cubic=derivs.cubic if order == 3 else None,
    )


def _fold_point(p: Params) -> Equilibrium:
    if abs(discriminant(p)) > discriminant_tolerance(p):
        raise DomainError("operation requires the fold (discriminant = 0 within tolerance)")
    eqs = interior_equilibria(p)
    if len(eqs) != 1:
        raise DomainError("degenerate interior equilibrium not found")
    return eqs[0]


def sotomayor_saddle_node(p: Params) -> SotomayorCheck:
    """Nondegeneracy check for the fold in the fear intensity.

    t1 is w . dF/dlam and t2 is w . D2F(v, v), with v and w the right/left
    null vectors of the Jacobian at the degenerate equilibrium.  Both must be
    nonzero for a genuine saddle-node bifurcation.
    """
    e = _fold_point(p)
    s0 = s_zero(p)
    if abs(p.s - s0) <= 1e-9 * max(1.0, s0):
        raise DomainError("Sotomayor check requires s != s0 (nonzero trace direction)")

    jac = jacobian_xy(p, e.x, e.y)
    # right null vector, normalized to (1, 1) when the second entry allows it
    v = _null_vector(jac)
    if abs(v[1]) > 1e-12:
        v = v / v[1]
    # left null vector, infinity-norm 1, first entry nonnegative
    w = _null_vector(jac.T)
    w = w / np.max(np.abs(w))
    if w[0] < 0.0:
        w = -w

    d_lam = np.array(rhs_param_gradient(p, State(e.x, e.y))["lam"])
    t1 = float(w @ d_lam)

    quad = field_derivatives(p, State(e.x, e.y)).quad
    # D2F(v, v): (Fxx v1^2 + 2 Fxy v1 v2 + Fyy v2^2) per component
    d2 = np.array(
        [
            2.0 * quad[i, 0] * v[0] ** 2 + 2.0 * quad[i, 1] * v[0] * v[1] + 2.0 * quad[i, 2] * v[1] ** 2
            for i in (0, 1)
        ]
    )
    t2 = float(w @ d2)
    passes = abs(t1) > 1e-9 and abs(t2) > 1e-9
    return SotomayorCheck(v=v, w=w, t1=t1, t2=t2, passes=passes)


def _null_vector(mat: np.ndarray) -> np.ndarray:
    """Null vector of a (numerically) rank-1 2x2 matrix via SVD."""
    _, sigma, vt = np.linalg.svd(mat)
    if sigma[0] > 0.0 and sigma[1] / sigma[0] > 1e-7:
        raise DomainError("matrix has no numerical null space")
    return vt[1]


def fold_quadratic_coefficient(p: Params) -> float:
    """Quadratic normal-form coefficient along the center direction at the fold.

    Computed from the shifted Taylor coefficients via the similarity that
    diagonalizes the linear part; nonvanishing certifies the saddle-node.
    """
    e = _fold_point(p)
    s0 = s_zero(p)
    coeffs = taylor_at(p, e, order=2)
    a1, a2 = coeffs.lin[0]
    a3, a4, a5 = coeffs.quad[0]
    b3, b4, b5 = coeffs.quad[1]
    return -a1 * (s0 - p.s) * (a3 + a4 + a5) + a1 * a1 * (
        (a3 - b3) + (a4 - b4) + (a5 - b5)
    )


def saddle_node_type(p: Params) -> str:
    """Attraction type of the degenerate interior equilibrium off the cusp.

    The hyperbolic eigenvalue at the fold equals s0 - s; its sign decides
    whether the parabolic sector hangs on a stable or an unstable direction.
    The quadratic normal-form coefficient must be nonzero (nondegeneracy).
    """
    s0 = s_zero(p)
    if abs(p.s - s0) <= 1e-9 * max(1.0, s0):
        raise DomainError("saddle-node type requires s != s0")
    c1 = fold_quadratic_coefficient(p)
    if abs(c1) <= 1e-12:
        raise DomainError("degenerate fold: quadratic normal-form coefficient vanishes")
    return REPELLING_SADDLE_NODE if p.s < s0 else ATTRACTING_SADDLE_NODE


def cusp_check(p: Params) -> str:
    """Codimension-2 check at the joint degeneracy (fold and zero trace)."""
    e = _fold_point(p)
    s0 = s_zero(p)
    if abs(p.s - s0) > 1e-9 * max(1.0, s0):
        raise DomainError("cusp check requires s = s0 (nilpotent linear part)")
    coeffs = taylor_at(p, e, order=2)
    a1, a2 = coeffs.lin[0]
    b1 = coeffs.lin[1, 0]
    a3, a4, a5 = coeffs.quad[0]
    b3, b4, b5 = coeffs.quad[1]
    # the two equivalent closed forms for the leading normal-form coefficient
    f1_full = -a2 * a2 * (a3 - b3) + a1 * a2 * (a4 - b4) - a1 * a1 * (a5 - b5)
    f1_short = -b1 * b1 * (a3 + a4 + a5)
    if abs(f1_full - f1_short) > 1e-8 * max(1.0, abs(f1_short)):
        raise DomainError("inconsistent normal-form coefficient at the cusp point")
    f2_plus_2e1 = -b1 * (2.0 * a3 + a4)
    product = f1_short * f2_plus_2e1
    return CUSP_CODIM_2 if abs(product) > 1e-12 else DEGENERATE


def hopf_detect(p: Params, kind: str = KIND_INTERIOR_LOW) -> HopfReport:
    """Hopf candidate in the predator growth rate at an interior equilibrium.

    The Jacobian trace at the target equilibrium is mu(s) = s_crit - s, so
    the transversality derivative is exactly -1.  A genuine Hopf point needs
    a positive determinant there; at the lower equilibrium (the published
    choice, and the default) the determinant is negative for every parameter
    set, so this raises :class:`DomainError` -- the weak center lives at the
    upper equilibrium (kind "E5").
    """
    if discriminant(p) <= discriminant_tolerance(p):
        raise DomainError("Hopf detection requires two interior equilibria")
    if kind == KIND_INTERIOR_LOW:
        crit = s_star(p)
    elif kind == KIND_INTERIOR_HIGH:
        crit = s_star_upper(p)
    else:
        raise DomainError(f"Hopf detection targets E4 or E5, got kind={kind!r}")
    if crit <= 0.0:
        raise DomainError(f"no positive Hopf threshold at {kind}: s_crit={crit!r}")
    at_crit = replace(p, s=crit)
    target = next(e for e in interior_equilibria(at_crit) if e.kind == kind)
    jac = jacobian_xy(at_crit, target.x, target.y)
    det = float(np.linalg.det(jac))
    if det <= 0.0:
        raise DomainError(
            f"no pure-imaginary pair at {kind}: determinant {det!r} nonpositive at the trace zero"
        )
    return HopfReport(s_star=crit, mu_prime=-1.0, omega=math.sqrt(det), l1=None, direction=None)


# ---------------------------------------------------------------------------
# first Lyapunov coefficient


def _poly_mul(a: dict, b: dict, max_deg: int = 3) -> dict:
    out: dict = {}
    for (i, j), ca in a.items():
        for (k, l), cb in b.items():
            if i + j + k + l > max_deg:
                continue
            key = (i + k, j + l)
            out[key] = out.get(key, 0.0) + ca * cb
    return out


def _substitute(coeffs_quad: np.ndarray, coeffs_cubic: np.ndarray, T: np.ndarray) -> list[dict]:
    """Expand each nonlinear component polynomial under (u, v) = T (X, Y)."""
    u = {(1, 0): T[0, 0], (0, 1): T[0, 1]}
    v = {(1, 0): T[1, 0], (0, 1): T[1, 1]}
    uu = _poly_mul(u, u)
    uv = _poly_mul(u, v)
    vv = _poly_mul(v, v)
    uuu = _poly_mul(uu, u)
    uuv = _poly_mul(uu, v)
    uvv = _poly_mul(u, vv)
    vvv = _poly_mul(vv, v)
    polys = []
    for comp in (0, 1):
        acc: dict = {}
        for mono, c in zip((uu, uv, vv), coeffs_quad[comp]):
            for key, val in mono.items():
                acc[key] = acc.get(key, 0.0) + c * val
        for mono, c in zip((uuu, uuv, uvv, vvv), coeffs_cubic[comp]):
            for key, val in mono.items():
                acc[key] = acc.get(key, 0.0) + c * val
        polys.append(acc)
    return polys


def lyapunov_rotated(lin: np.ndarray, quad: np.ndarray, cubic: np.ndarray) -> float:
    """First Lyapunov quantity via the rotation normal form.

    Transforms the linear part (trace zero, positive determinant) to
    ((0, omega), (-omega, 0)) and applies the classical cubic averaging
    formula; negative means a stable (supercritical) small cycle.
    """
    m1, m2 = lin[0]
    det = float(np.linalg.det(lin))
    if det <= 0.0:
        raise DomainError("rotation form requires positive determinant")
    omega = math.sqrt(det)
    if abs(m2) <= 1e-14:
        raise DomainError("degenerate transformation: vanishing off-diagonal entry")
    T = np.array([[m2, 0.0], [-m1, omega]])
    Tinv = np.linalg.inv(T)
    raw = _substitute(quad, cubic, T)
    # f, g: nonlinear parts of the X and Y equations after the similarity
    f: dict = {}
    g: dict = {}
    for key in set(raw[0]) | set(raw[1]):
        vec = Tinv @ np.array([raw[0].get(key, 0.0), raw[1].get(key, 0.0)])
        f[key] = float(vec[0])
        g[key] = float(vec[1])

    def d(poly: dict, i: int, j: int) -> float:
        # partial derivative of given orders at the origin
        return poly.get((i, j), 0.0) * math.factorial(i) * math.factorial(j)

    cubic_part = d(g, 0, 3) + d(g, 2, 1) + d(f, 1, 2) + d(f, 3, 0)
    mixed = (
        d(g, 1, 1) * (d(g, 0, 2) + d(g, 2, 0))
        - d(f, 1, 1) * (d(f, 0, 2) + d(f, 2, 0))
        - d(g, 0, 2) * d(f, 0, 2)
        + d(g, 2, 0) * d(f, 2, 0)
    )
    return (cubic_part + mixed / omega) / 16.0


def lyapunov_general(lin: np.ndarray, quad: np.ndarray, cubic: np.ndarray) -> float:
    """First Lyapunov quantity for a general trace-free linear part.

    Instantiation of the planar weak-focus formula directly in the original
    coordinates (no intermediate rotation), following the classical textbook
    derivation for a linear part ((a, b), (c, d)) with a + d = 0.
    """
    a, b = lin[0]
    c, dd = lin[1]
    det = a * dd - b * c
    if det <= 0.0:
        raise DomainError("Lyapunov quantity requires positive determinant")
    a20, a11, a02 = quad[0]
    b20, b11, b02 = quad[1]
    a30, a21, a12, a03 = cubic[0]
    b30, b21, b12, b03 = cubic[1]
    braces = (
        a * c * (a11 * a11 + a11 * b02 + a02 * b11)
        + a * b * (b11 * b11 + a20 * b11 + a11 * b20)
        + c * c * (a11 * a02 + 2.0 * a02 * b02)
        - 2.0 * a * c * (b02 * b02 - a20 * a02)
        - 2.0 * a * b * (a20 * a20 - b20 * b02)
        - b * b * (2.0 * a20 * b20 + b11 * b20)
        + (b * c - 2.0 * a * a) * (b11 * b02 - a11 * a20)
    ) - (a * a + b * c) * (
        3.0 * (c * b03 - b * a30) + 2.0 * a * (a21 + b12) + (c * a12 - b * b21)
    )
    return (-3.0 * math.pi) / (2.0 * b * det ** 1.5) * braces


def first_lyapunov(p: Params, kind: str = KIND_INTERIOR_LOW) -> HopfReport:
    """First Lyapunov coefficient and Hopf direction at the critical growth rate.

    Requires p.s to already sit at the trace zero of the target equilibrium.
    Uses the general-linear-part formula as the primary path and the
    rotation-normal-form path as an internal consistency check; the two
    agree in sign by construction (both are sign-equivalent to the cubic
    normal-form coefficient).  With the default kind this inherits the
    failure of :func:`hopf_detect` at the lower equilibrium.
    """
    report = hopf_detect(p, kind=kind)
    crit = report.s_star
    if abs(p.s - crit) > 1e-8 * max(1.0, crit):
        raise DomainError(
            f"first Lyapunov coefficient is defined at s = {crit!r} (trace zero of {kind}), got s={p.s!r}"
        )
    at_crit = replace(p, s=crit)
    target = next(e for e in interior_equilibria(at_crit) if e.kind == kind)
    coeffs = taylor_at(at_crit, target, order=3)
    # remove the residual trace so both paths see an exactly trace-free part
    lin = coeffs.lin.copy()
    shift = (lin[0, 0] + lin[1, 1]) / 2.0
    lin[0, 0] -= shift
    lin[1, 1] -= shift
    l1 = lyapunov_general(lin, coeffs.quad, coeffs.cubic)
    if abs(l1) < 1e-8:
        direction = UNDETERMINED
    elif l1 < 0.0:
        direction = SUPERCRITICAL
    else:
        direction = SUBCRITICAL
    return HopfReport(
        s_star=crit, mu_prime=-1.0, omega=report.omega, l1=l1, direction=direction
    )
