"""Linear classification, trace/determinant identities and the origin blow-up."""

import math

import numpy as np
import pytest

from conftest import FIXTURE, sample_strong_allee, sample_two_interior
from _oracles import fd_jacobian

from lgfear import (
    DomainError,
    Params,
    classify,
    divisor_flow,
    interior_equilibria,
    interior_trace_threshold,
    linear_analysis_at,
    origin_blowup,
    s_star,
    s_star_upper,
    s_zero,
)
from lgfear.equilibria import boundary_equilibria, critical_fear
from lgfear.stability import (
    ORIGIN_ATTRACTING,
    SADDLE,
    STABLE_FOCUS,
    STABLE_NODE,
    UNSTABLE_NODE,
    blowup_jacobian,
    blowup_rhs,
)
from dataclasses import replace


def test_classify_rejects_non_equilibria():
    from lgfear.equilibria import Equilibrium

    with pytest.raises(DomainError):
        classify(FIXTURE, Equilibrium(x=0.7, y=0.3, kind="E1"))


def test_boundary_classification(rng):
    for p in sample_strong_allee(rng, 100):
        capacity, allee = boundary_equilibria(p)
        assert classify(p, capacity).label == SADDLE
        assert classify(p, allee).label == UNSTABLE_NODE


def test_interior_trace_identity(rng):
    """tr J at an interior equilibrium equals the threshold value minus s."""
    for p in sample_two_interior(rng, 50):
        for e in interior_equilibria(p):
            lin = classify(p, e)
            assert lin.trace == pytest.approx(
                interior_trace_threshold(p, e.x) - p.s, rel=1e-10, abs=1e-12
            )


def test_interior_determinant_signs(rng):
    """The lower interior equilibrium is a saddle; the upper has det > 0."""
    for p in sample_two_interior(rng, 100):
        low, high = interior_equilibria(p)
        assert classify(p, low).det < 0.0
        assert classify(p, low).label == SADDLE
        assert classify(p, high).det > 0.0


def test_upper_equilibrium_flips_at_its_trace_zero():
    crit = s_star_upper(FIXTURE)
    below = classify(replace(FIXTURE, s=crit * 0.9), interior_equilibria(replace(FIXTURE, s=crit * 0.9))[1])
    above = classify(replace(FIXTURE, s=crit * 1.1), interior_equilibria(replace(FIXTURE, s=crit * 1.1))[1])
    assert below.trace > 0.0 and above.trace < 0.0
    assert above.label == STABLE_FOCUS


def test_s_star_values():
    assert s_star(FIXTURE) == pytest.approx(0.16140467653991858, rel=1e-12)
    assert s_star_upper(FIXTURE) == pytest.approx(0.03267504803563758, rel=1e-12)


def test_s_zero_requires_fold():
    with pytest.raises(DomainError):
        s_zero(FIXTURE)
    lam_sn = critical_fear(0.25, 0.2)
    p = Params(m=0.25, a=0.2, lam=lam_sn, s=0.1)
    # closed form at the double root x3: (-2 x3^2 + (m+1) x3)/(1 + lam x3)
    x3 = 10.0 / 21.0
    expected = (-2.0 * x3 * x3 + 1.25 * x3) / (1.0 + lam_sn * x3)
    assert s_zero(p) == pytest.approx(expected, rel=1e-10)


def test_blowup_jacobian_matches_finite_differences(rng):
    for p in sample_strong_allee(rng, 30):
        u = float(rng.uniform(0.0, 0.5))
        v = float(rng.uniform(0.1, 3.0))
        fd = fd_jacobian(lambda uu, vv: blowup_rhs(p, uu, vv), u, v)
        assert np.allclose(blowup_jacobian(p, u, v), fd, atol=1e-6)


def test_blowup_singularities(rng):
    for p in sample_strong_allee(rng, 50):
        rep = origin_blowup(p)
        assert len(rep.singularities) == 2
        first, second = rep.singularities
        assert first.v == 0.0
        assert second.v == pytest.approx((p.s + p.m) / p.s, rel=1e-14)
        for sing in rep.singularities:
            assert abs(divisor_flow(p, sing.v)) < 1e-10
        assert first.label == SADDLE
        assert second.label == STABLE_NODE
        # both sectors contract toward the blown-down origin
        assert all(s.eigs[0] == pytest.approx(-p.m, rel=1e-12) for s in rep.singularities)
        assert rep.origin_verdict == ORIGIN_ATTRACTING
        assert rep.matches_published_claim is False


def test_linear_analysis_eigs_consistent(rng):
    for p in sample_strong_allee(rng, 30):
        x = float(rng.uniform(0.1, 1.2))
        y = float(rng.uniform(0.0, 1.2))
        lin = linear_analysis_at(p, x, y)
        e1, e2 = lin.eigs
        assert (e1 + e2).real == pytest.approx(lin.trace, rel=1e-9, abs=1e-12)
        assert (e1 * e2).real == pytest.approx(lin.det, rel=1e-9, abs=1e-12)
