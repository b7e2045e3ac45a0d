"""Shared fixtures: the closed-form reference point and seeded parameter samplers."""

from __future__ import annotations

import numpy as np
import pytest

from lgfear import Params
from lgfear.equilibria import allee_competition_threshold, critical_fear

# reference point with two interior equilibria and clean closed forms
FIXTURE = Params(m=0.25, a=0.2, lam=0.3, s=0.1)

# supercritical Hopf point: l1 < 0 at the upper-equilibrium trace zero
SUPERCRITICAL_POINT = Params(m=0.04, a=0.6, lam=0.1, s=0.13)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260823)


def sample_strong_allee(rng: np.random.Generator, n: int) -> list[Params]:
    """Random parameter points in the strong-Allee regime (no other constraint)."""
    out = []
    for _ in range(n):
        out.append(
            Params(
                m=float(rng.uniform(0.1, 0.9)),
                a=float(rng.uniform(0.02, 1.5)),
                lam=float(rng.uniform(0.05, 2.0)),
                s=float(rng.uniform(0.01, 0.5)),
            )
        )
    return out


def sample_two_interior(rng: np.random.Generator, n: int) -> list[Params]:
    """Random points with two interior equilibria (positive discriminant)."""
    out = []
    while len(out) < n:
        m = float(rng.uniform(0.1, 0.9))
        a1 = allee_competition_threshold(m)
        a = float(rng.uniform(0.05, 0.95)) * a1
        lam_sn = critical_fear(m, a)
        lam = float(rng.uniform(0.05, 0.95)) * lam_sn
        s = float(rng.uniform(0.01, 0.5))
        out.append(Params(m=m, a=a, lam=lam, s=s))
    return out


def sample_fold(rng: np.random.Generator, n: int) -> list[Params]:
    """Random points exactly on the fold manifold lam = lam_SN(m, a)."""
    out = []
    while len(out) < n:
        m = float(rng.uniform(0.1, 0.9))
        a1 = allee_competition_threshold(m)
        a = float(rng.uniform(0.1, 0.9)) * a1
        lam = critical_fear(m, a)
        s = float(rng.uniform(0.01, 0.5))
        out.append(Params(m=m, a=a, lam=lam, s=s))
    return out
