"""Acceptance suite: one test per exit criterion, at the stated tolerances.

Criteria that encode stability assignments contradicted by the computed
linear algebra are kept as strict xfails (they document the disagreement and
would flag any change), each paired with a corrected, passing counterpart;
the discrepancies themselves are carried in the errata report.
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from conftest import FIXTURE, SUPERCRITICAL_POINT, sample_strong_allee, sample_two_interior
from _oracles import fd_jacobian, loglog_slope, quadratic_roots

from lgfear import (
    DomainError,
    IntegratorConfig,
    Params,
    allee_competition_threshold,
    classify,
    critical_fear,
    detect_limit_cycle,
    discriminant,
    divisor_flow,
    errata_report,
    first_lyapunov,
    hopf_detect,
    integrate,
    integrate_fixed_step,
    interior_equilibria,
    interior_trace_threshold,
    origin_attraction_probe,
    origin_blowup,
    s_star,
    s_star_upper,
    s_zero,
    sotomayor_saddle_node,
)
from lgfear.equilibria import NO_INTERIOR, ONE_DEGENERATE, TWO_INTERIOR, boundary_equilibria, existence_regime
from lgfear.model import rhs_xy
from lgfear.stability import SADDLE, UNSTABLE_NODE, blowup_rhs, blowup_jacobian
from lgfear.bifurcation import SUBCRITICAL, SUPERCRITICAL


def test_criterion_1_closed_form_fixtures():
    m, a = 0.25, 0.2
    assert allee_competition_threshold(m) == pytest.approx(0.25, abs=1e-6)
    lam_sn = critical_fear(m, a)
    assert lam_sn == pytest.approx(0.5125, abs=1e-6)
    p = Params(m=m, a=a, lam=0.3, s=0.1)
    assert discriminant(p) == pytest.approx(0.0425, abs=1e-6)
    roots = quadratic_roots(m, a, 0.3)
    low, high = interior_equilibria(p)
    assert low.x == pytest.approx(roots[0], abs=1e-6)
    assert high.x == pytest.approx(roots[1], abs=1e-6)
    assert low.x == pytest.approx(0.398040, abs=1e-6)
    assert high.x == pytest.approx(0.592526, abs=1e-6)
    assert s_star(p) == pytest.approx(0.161405, abs=1e-6)
    at_fold = Params(m=m, a=a, lam=lam_sn, s=0.1)
    (degenerate,) = interior_equilibria(at_fold)
    assert degenerate.x == pytest.approx(10.0 / 21.0, abs=1e-6)
    assert s_zero(at_fold) == pytest.approx(0.113921, abs=1e-6)


def test_criterion_2_jacobian_finite_differences(rng):
    from lgfear import jacobian_xy

    for p in sample_strong_allee(rng, 1000):
        x = float(rng.uniform(0.05, 1.5))
        y = float(rng.uniform(0.01, 1.5))
        fd = fd_jacobian(lambda u, v: rhs_xy(p, u, v), x, y)
        assert np.allclose(jacobian_xy(p, x, y), fd, atol=1e-6)
    for p in sample_strong_allee(rng, 1000):
        u = float(rng.uniform(0.0, 0.6))
        v = float(rng.uniform(0.05, 3.0))
        fd = fd_jacobian(lambda uu, vv: blowup_rhs(p, uu, vv), u, v)
        assert np.allclose(blowup_jacobian(p, u, v), fd, atol=1e-6)


def test_criterion_3_regime_map_grid():
    m = 0.25
    a1 = allee_competition_threshold(m)
    a_grid = np.linspace(0.02, 1.4, 50)
    lam_grid = np.linspace(0.05, 2.0, 50)
    for a in a_grid:
        lam_sn = critical_fear(m, float(a)) if a < a1 else None
        for lam in lam_grid:
            p = Params(m=m, a=float(a), lam=float(lam), s=0.1)
            regime = existence_regime(p)
            delta = discriminant(p)
            if a >= a1 or lam > lam_sn:
                assert regime.label == NO_INTERIOR
                assert delta < 0.0 or a >= m + 1.0
            elif lam < lam_sn:
                assert regime.label == TWO_INTERIOR
                assert delta > 0.0
            # sign(delta) correspondence: label matches the root count
            n = len(interior_equilibria(p))
            expected = {NO_INTERIOR: 0, ONE_DEGENERATE: 1, TWO_INTERIOR: 2}[regime.label]
            assert n == expected


def test_criterion_4_boundary_classification(rng):
    for p in sample_strong_allee(rng, 100):
        capacity, allee = boundary_equilibria(p)
        assert classify(p, capacity).label == SADDLE
        assert classify(p, allee).label == UNSTABLE_NODE


def test_criterion_4_upper_determinant_positive(rng):
    for p in sample_two_interior(rng, 200):
        _, high = interior_equilibria(p)
        assert classify(p, high).det > 0.0


@pytest.mark.xfail(
    strict=True,
    reason=(
        "published claim: tr J < 0 at the upper interior equilibrium whenever it "
        "exists.  The trace equals a positive threshold minus s, so it is positive "
        "for small s; see errata entry upper-trace-claim"
    ),
)
def test_criterion_4_upper_trace_negative_everywhere(rng):
    points = sample_two_interior(rng, 200)
    # deterministic witness: the reference point with s below its trace zero
    points.append(replace(FIXTURE, s=0.5 * s_star_upper(FIXTURE)))
    for p in points:
        _, high = interior_equilibria(p)
        assert classify(p, high).trace < 0.0


@pytest.mark.xfail(
    strict=True,
    reason=(
        "published claim: the lower interior equilibrium has det J > 0 and flips "
        "from unstable to stable at its trace zero.  Its determinant is negative "
        "for every admissible parameter set (closed-form sign identity), so it is "
        "a saddle throughout; see errata entry interior-determinant-sign"
    ),
)
def test_criterion_4_lower_flips_at_s_star(rng):
    for p in sample_two_interior(rng, 50):
        low, _ = interior_equilibria(p)
        assert classify(p, low).det > 0.0
    crit = s_star(FIXTURE)
    below = classify(replace(FIXTURE, s=0.9 * crit), interior_equilibria(FIXTURE)[0])
    above = classify(replace(FIXTURE, s=1.1 * crit), interior_equilibria(FIXTURE)[0])
    assert below.label != above.label


def test_criterion_4_corrected_interior_assignment(rng):
    """The saddle sits at the lower equilibrium; the flip happens at the upper one."""
    for p in sample_two_interior(rng, 200):
        low, high = interior_equilibria(p)
        assert classify(p, low).label == SADDLE
        lin = classify(p, high)
        flip = interior_trace_threshold(p, high.x)
        assert (lin.trace > 0.0) == (p.s < flip)


def test_criterion_5_degeneracies(rng):
    from lgfear import jacobian_xy

    for m, a in [(0.25, 0.2), (0.16, 0.1), (0.49, 0.05), (0.36, 0.1)]:
        lam_sn = critical_fear(m, a)
        p = Params(m=m, a=a, lam=lam_sn, s=0.1)
        assert abs(discriminant(p)) < 1e-12
        (e,) = interior_equilibria(p)
        jac = jacobian_xy(p, e.x, e.y)
        assert abs(np.linalg.det(jac)) < 1e-9
    # joint degeneracy at the reference pair: nilpotent linear part at s = s0.
    # For a defective matrix the eigenvalues carry an error of order
    # sqrt(round-off) even when trace and det vanish to 1e-16, so the
    # invariants get the tight bound and the eigenvalues the sqrt floor.
    p = Params(m=0.25, a=0.2, lam=critical_fear(0.25, 0.2), s=0.1)
    (e,) = interior_equilibria(p)
    p0 = replace(p, s=s_zero(p))
    jac0 = jacobian_xy(p0, e.x, e.y)
    assert abs(jac0[0, 0] + jac0[1, 1]) < 1e-9
    assert abs(np.linalg.det(jac0)) < 1e-9
    eigs = np.linalg.eigvals(jac0)
    assert np.all(np.abs(eigs) < 1e-7)


def test_criterion_6_sotomayor(rng):
    from conftest import sample_fold

    count = 0
    for p in sample_fold(rng, 60):
        if abs(p.s - s_zero(p)) <= 1e-6:
            continue
        check = sotomayor_saddle_node(p)
        assert abs(check.t1) > 1e-9
        assert abs(check.t2) > 1e-9
        (e,) = interior_equilibria(p)
        closed = -p.a * e.x**3 / (1.0 + p.lam * e.x)
        assert check.t1 / check.w[0] == pytest.approx(closed, rel=1e-8)
        count += 1
        if count == 50:
            break
    assert count == 50


def test_criterion_7_hopf_trace_and_transversality():
    """mu(s_crit) = 0 to 1e-12 and mu'(s_crit) = -1 +- 1e-10, at both trace zeros."""
    for threshold_fn, idx in ((s_star, 0), (s_star_upper, 1)):
        crit = threshold_fn(FIXTURE)
        p = replace(FIXTURE, s=crit)
        e = interior_equilibria(p)[idx]
        assert abs(classify(p, e).trace) < 1e-12
        h = 1e-6
        mu_plus = classify(replace(p, s=crit + h), interior_equilibria(p)[idx]).trace
        mu_minus = classify(replace(p, s=crit - h), interior_equilibria(p)[idx]).trace
        assert (mu_plus - mu_minus) / (2.0 * h) == pytest.approx(-1.0, abs=1e-10)
    assert hopf_detect(FIXTURE, kind="E5").mu_prime == -1.0


@pytest.mark.xfail(
    strict=True,
    reason=(
        "published claim: a Hopf bifurcation with computable first Lyapunov "
        "coefficient occurs at the lower interior equilibrium at s = s*.  The "
        "determinant there is negative, so the eigenvalues at the trace zero are "
        "real of opposite sign and no Hopf bifurcation exists; see errata entry "
        "hopf-location"
    ),
)
def test_criterion_7_lyapunov_at_lower_equilibrium():
    crit = s_star(FIXTURE)
    report = first_lyapunov(replace(FIXTURE, s=crit))
    assert report.l1 is not None


def test_criterion_7_corrected_sign_vs_simulation():
    """sign(l1) at the genuine (upper) weak center agrees with simulation.

    The reference point is subcritical (l1 > 0): just below the threshold a
    small perturbation escapes instead of settling onto a stable cycle.  The
    supercritical point (l1 < 0) produces a detectable stable cycle.
    """
    crit = s_star_upper(FIXTURE)
    rep = first_lyapunov(replace(FIXTURE, s=crit), kind="E5")
    assert rep.l1 > 0.0 and rep.direction == SUBCRITICAL
    for frac in (0.97, 0.99):
        p = replace(FIXTURE, s=frac * crit)
        high = interior_equilibria(p)[1]
        search = detect_limit_cycle(p, (high.x * 1.05, high.y * 1.05))
        assert search.status != "cycle"

    crit2 = s_star_upper(SUPERCRITICAL_POINT)
    rep2 = first_lyapunov(replace(SUPERCRITICAL_POINT, s=crit2), kind="E5")
    assert rep2.l1 < 0.0 and rep2.direction == SUPERCRITICAL
    for frac in (0.97, 0.99):
        p = replace(SUPERCRITICAL_POINT, s=frac * crit2)
        high = interior_equilibria(p)[1]
        search = detect_limit_cycle(p, (high.x * 1.05, high.y * 1.05))
        assert search.status == "cycle"


@pytest.mark.xfail(
    strict=True,
    reason=(
        "the stated amplitude window s/s_crit in {0.90 ... 0.99} is not in the "
        "asymptotic regime: at its lower end the orbit escapes to extinction "
        "before reaching a cycle, and the wide-window fit leaves 0.5 +- 0.1"
    ),
)
def test_criterion_7_amplitude_exponent_stated_window():
    crit = s_star_upper(SUPERCRITICAL_POINT)
    fracs = np.array([0.90, 0.925, 0.95, 0.975, 0.99])
    amps = []
    for frac in fracs:
        p = replace(SUPERCRITICAL_POINT, s=float(frac) * crit)
        high = interior_equilibria(p)[1]
        search = detect_limit_cycle(p, (high.x * 1.05, high.y * 1.05))
        assert search.status == "cycle"
        amps.append(search.cycle.amplitude)
    slope = loglog_slope((1.0 - fracs) * crit, np.array(amps))
    assert abs(slope - 0.5) <= 0.1


def test_criterion_7_amplitude_exponent_near_onset():
    """Square-root amplitude law measured close to the supercritical threshold."""
    crit = s_star_upper(SUPERCRITICAL_POINT)
    fracs = np.array([0.99, 0.9925, 0.995, 0.9975, 0.999])
    cfg = IntegratorConfig(max_steps=20_000_000)
    amps = []
    for frac in fracs:
        p = replace(SUPERCRITICAL_POINT, s=float(frac) * crit)
        high = interior_equilibria(p)[1]
        search = detect_limit_cycle(p, (high.x * 1.05, high.y * 1.05), cfg=cfg, max_time=1.2e6)
        assert search.status == "cycle"
        amps.append(search.cycle.amplitude)
    slope = loglog_slope((1.0 - fracs) * crit, np.array(amps))
    assert abs(slope - 0.5) <= 0.1


def test_criterion_8_fold_scaling():
    m, a = 0.25, 0.2
    lam_sn = critical_fear(m, a)
    gaps = np.geomspace(1e-6, 1e-3, 13)
    widths = []
    for gap in gaps:
        p = Params(m=m, a=a, lam=lam_sn - float(gap), s=0.1)
        low, high = interior_equilibria(p)
        widths.append(high.x - low.x)
    slope = loglog_slope(gaps, np.array(widths))
    assert abs(slope - 0.5) <= 0.05


def test_criterion_9_origin_adjudication(rng):
    verdict_map = {"Attracting": "ConvergesToOrigin", "Unstable": "Escapes"}
    for p in sample_strong_allee(rng, 20):
        rep = origin_blowup(p)
        for sing in rep.singularities:
            assert abs(divisor_flow(p, sing.v)) < 1e-10
        probe = origin_attraction_probe(p, 1e-3)
        assert probe == verdict_map[rep.origin_verdict]
    # the disagreement with the published claims is recorded, not silent
    entries = {e["id"]: e for e in errata_report()["entries"]}
    claim = entries["origin-stability-claim"]
    assert "unstable" in claim["published"]
    assert "Attracting" in claim["computed"]
    root = entries["blowup-second-divisor-root"]
    assert "s/(s-m)" in root["published"]
    assert "(s+m)/s" in root["computed"]


def test_criterion_10_integrator():
    # self-convergence order of the fixed-step scheme
    init = (0.6, 0.3)
    results = [np.array(integrate_fixed_step(FIXTURE, init, 5.0, h)) for h in (0.2, 0.1, 0.05)]
    e1 = np.linalg.norm(results[0] - results[2])
    e2 = np.linalg.norm(results[1] - results[2])
    assert math.log2(e1 / e2) >= 4.0
    # drift from the stable upper equilibrium over t = 1e3
    high = interior_equilibria(FIXTURE)[1]
    traj = integrate(FIXTURE, (high.x, high.y), 1e3)
    drift = np.max(np.hypot(traj.x - high.x, traj.y - high.y))
    assert drift < 1e-6
    # byte-identical CSV across repeated identical invocations
    csv1 = integrate(FIXTURE, init, 50.0).to_csv()
    csv2 = integrate(FIXTURE, init, 50.0).to_csv()
    assert csv1.encode() == csv2.encode()
