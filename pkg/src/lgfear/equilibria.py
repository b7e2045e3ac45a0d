"""Closed-form equilibria and the existence-regime classification.

Boundary equilibria sit on the invariant prey axis at x = 1 and x = m.
Interior equilibria lie on the diagonal y = x and their prey levels are the
positive roots of

    (1 + lam*a) x^2 - (1 + m - a) x + m = 0.

The discriminant of that quadratic counts the interior equilibria; the fold
in the fear intensity sits at lam = lam_SN where the discriminant vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .model import Params

KIND_PREY_ONLY_CAPACITY = "E1"   # (1, 0)
KIND_PREY_ONLY_ALLEE = "E2"      # (m, 0)
KIND_INTERIOR_DEGENERATE = "E3"  # double root at the fold
KIND_INTERIOR_LOW = "E4"         # smaller interior root
KIND_INTERIOR_HIGH = "E5"        # larger interior root

NO_INTERIOR = "NoInterior"
ONE_DEGENERATE = "OneDegenerate"
TWO_INTERIOR = "TwoInterior"

# reason codes for existence_regime, keyed by the inequality that fired
REASON_PRESSURE_DOMINATES = "a>=m+1"
REASON_PRESSURE_IN_FOLD_WINDOW = "a1*<=a<m+1"
REASON_FEAR_ABOVE_CRITICAL = "lam>lam_SN"
REASON_FEAR_AT_CRITICAL = "lam=lam_SN"
REASON_FEAR_BELOW_CRITICAL = "lam<lam_SN"


@dataclass(frozen=True)
class Equilibrium:
    x: float
    y: float
    kind: str


@dataclass(frozen=True)
class ExistenceRegime:
    label: str
    delta: float
    a1_star: float
    lam_crit: float | None
    reason: str


def discriminant(p: Params) -> float:
    """Discriminant of the interior-equilibrium quadratic."""
    b = p.m + 1.0 - p.a
    return b * b - 4.0 * p.m * (1.0 + p.lam * p.a)


def discriminant_tolerance(p: Params) -> float:
    # relative tolerance: the quadratic's coefficients are O(1) in the regimes
    # of interest, but (m+1-a)^2 sets the natural scale of the discriminant
    return 1e-12 * max(1.0, (p.m + 1.0 - p.a) ** 2)


def allee_competition_threshold(m: float) -> float:
    """Competition level above which the fold window in the fear intensity closes."""
    if not (0.0 < m < 1.0):
        raise DomainError(f"threshold defined only for 0 < m < 1, got m={m!r}")
    return m + 1.0 - 2.0 * math.sqrt(m)


def critical_fear(m: float, a: float) -> float:
    """Fear intensity at which the two interior equilibria collide (the fold)."""
    a1 = allee_competition_threshold(m)
    if not (0.0 < a < a1):
        raise DomainError(
            f"critical fear defined only for 0 < a < {a1!r} (a1* at m={m!r}), got a={a!r}"
        )
    return (a * a - 2.0 * (m + 1.0) * a + (m - 1.0) ** 2) / (4.0 * m * a)


def boundary_equilibria(p: Params) -> list[Equilibrium]:
    """The two predator-free steady states (1, 0) and (m, 0)."""
    p.require_strong_allee()
    return [
        Equilibrium(x=1.0, y=0.0, kind=KIND_PREY_ONLY_CAPACITY),
        Equilibrium(x=p.m, y=0.0, kind=KIND_PREY_ONLY_ALLEE),
    ]


def interior_equilibria(p: Params) -> list[Equilibrium]:
    """Interior equilibria (on the diagonal y = x), ordered by prey level.

    Returns zero, one (degenerate double root) or two points.  The quadratic
    is solved in the cancellation-safe form: the larger-magnitude root first,
    then the smaller one from the root product m / (1 + lam*a).
    """
    p.require_strong_allee()
    b = p.m + 1.0 - p.a
    if b <= 0.0:
        return []
    coeff = 1.0 + p.lam * p.a
    delta = discriminant(p)
    tol = discriminant_tolerance(p)
    if delta < -tol:
        return []
    if abs(delta) <= tol:
        x3 = b / (2.0 * coeff)
        return [Equilibrium(x=x3, y=x3, kind=KIND_INTERIOR_DEGENERATE)]
    root = math.sqrt(delta)
    x_high = (b + root) / (2.0 * coeff)
    x_low = p.m / (coeff * x_high)
    return [
        Equilibrium(x=x_low, y=x_low, kind=KIND_INTERIOR_LOW),
        Equilibrium(x=x_high, y=x_high, kind=KIND_INTERIOR_HIGH),
    ]


def existence_regime(p: Params) -> ExistenceRegime:
    """Count interior equilibria and record which inequality decided it."""
    p.require_strong_allee()
    delta = discriminant(p)
    a1 = allee_competition_threshold(p.m)
    if p.a >= p.m + 1.0:
        # the quadratic has no positive roots once 1 + m - a <= 0
        return ExistenceRegime(NO_INTERIOR, delta, a1, None, REASON_PRESSURE_DOMINATES)
    if p.a >= a1:
        # critical fear is nonpositive here, so delta < 0 for every lam > 0
        return ExistenceRegime(NO_INTERIOR, delta, a1, None, REASON_PRESSURE_IN_FOLD_WINDOW)
    lam_crit = critical_fear(p.m, p.a)
    if abs(delta) <= discriminant_tolerance(p):
        return ExistenceRegime(ONE_DEGENERATE, delta, a1, lam_crit, REASON_FEAR_AT_CRITICAL)
    if delta < 0.0:
        return ExistenceRegime(NO_INTERIOR, delta, a1, lam_crit, REASON_FEAR_ABOVE_CRITICAL)
    return ExistenceRegime(TWO_INTERIOR, delta, a1, lam_crit, REASON_FEAR_BELOW_CRITICAL)


def all_equilibria(p: Params) -> list[Equilibrium]:
    return boundary_equilibria(p) + interior_equilibria(p)
