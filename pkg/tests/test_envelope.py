import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppflight import envelope as env
from ppflight.errors import InfeasibleEnvelope, InvalidParameter, NegativeTime


def _env(rho0=3.0, rho_inf=0.05, l=1.0):
    return env.PerformanceEnvelope((rho0,) * 3, (rho_inf,) * 3, l)


def test_rho_at_boundary_and_asymptote():
    e = _env()
    assert env.rho_at(e, 0.0) == (3.0, 3.0, 3.0)
    far = env.rho_at(e, 80.0)
    assert all(abs(x - 0.05) < 1e-12 for x in far)


def test_rho_at_scalar_oracle():
    e = _env()
    want = 2.95 * math.exp(-1.0) + 0.05
    got = env.rho_at(e, 1.0)[0]
    assert got == want
    assert abs(got - 1.13524) < 1e-5


def test_rho_monotone_decreasing_within_bounds():
    e = _env()
    prev = env.rho_at(e, 0.0)
    for k in range(1, 60):
        cur = env.rho_at(e, 0.1 * k)
        for i in range(3):
            assert e.rho_inf[i] < cur[i] < prev[i] <= e.rho0[i]
        prev = cur


def test_rho_negative_time_raises():
    with pytest.raises(NegativeTime):
        env.rho_at(_env(), -0.1)


def test_rho_rate_matches_finite_differences():
    e = env.PerformanceEnvelope((2.0, 3.0, 1.0), (0.05, 0.1, 0.02), 1.7)
    h = 1e-5
    for t in (0.1, 0.7, 2.3):
        fd = (np.array(env.rho_at(e, t + h)) - np.array(env.rho_at(e, t - h))) / (2 * h)
        got = np.array(env.rho_rate_at(e, t))
        assert np.allclose(got, fd, rtol=1e-6)


def test_envelope_invalid_parameters():
    with pytest.raises(InvalidParameter):
        env.PerformanceEnvelope((1.0, 1.0, 1.0), (1.5, 0.1, 0.1), 1.0)
    with pytest.raises(InvalidParameter):
        env.PerformanceEnvelope((1.0, 1.0, 1.0), (0.1, 0.1, 0.1), -1.0)


def test_beta_initial_values_exact():
    xi0 = (-0.8, 0.8, -0.8)
    xi_dot0 = (0.13, -0.02, 0.4)
    traj = env.PresetTrajectory.from_initial_error(xi0, xi_dot0, 1.0, (5.0, 5.0, 5.0))
    b, db, _ = env.beta_at(traj, 0.0)
    assert b == xi0
    assert db == xi_dot0


def test_beta_scalar_oracle():
    # xi0 = 1, xi_dot0 = 0, l = 1, c = 5, t = 1
    traj = env.PresetTrajectory.from_initial_error((1.0,) * 3, (0.0,) * 3, 1.0, (5.0,) * 3)
    b, db, ddb = env.beta_at(traj, 1.0)
    want = math.exp(-1.0) * (1.0 + (1.0 / 5.0) * (1.0 - math.exp(-5.0)))
    assert abs(b[0] - want) < 1e-15
    assert abs(b[0] - 0.44096) < 1e-5
    # derivative cross-check at the same point
    h = 1e-6
    bp, dbp, _ = env.beta_at(traj, 1.0 + h)
    bm, dbm, _ = env.beta_at(traj, 1.0 - h)
    assert abs(db[0] - (bp[0] - bm[0]) / (2 * h)) < 1e-6 * max(1.0, abs(db[0]))
    assert abs(ddb[0] - (dbp[0] - dbm[0]) / (2 * h)) < 1e-6 * max(1.0, abs(ddb[0]))


@settings(max_examples=100, deadline=None)
@given(
    xi0=st.floats(-2.0, 2.0),
    xi_dot0=st.floats(-2.0, 2.0),
    l=st.floats(0.3, 3.0),
    c=st.floats(0.5, 10.0),
    t=st.floats(0.01, 4.0),
)
def test_beta_derivatives_match_finite_differences(xi0, xi_dot0, l, c, t):
    traj = env.PresetTrajectory.from_initial_error((xi0,) * 3, (xi_dot0,) * 3, l, (c,) * 3)
    h = 1e-5
    bp = env.beta_at(traj, t + h)
    bm = env.beta_at(traj, t - h)
    _, db, ddb = env.beta_at(traj, t)
    fd1 = (bp[0][0] - bm[0][0]) / (2 * h)
    fd2 = (bp[1][0] - bm[1][0]) / (2 * h)
    assert abs(db[0] - fd1) <= 1e-6 * max(1.0, abs(fd1))
    assert abs(ddb[0] - fd2) <= 1e-6 * max(1.0, abs(fd2))


def test_beta_decays_to_zero():
    traj = env.PresetTrajectory.from_initial_error((1.5, -2.0, 0.3), (1.0, 0.0, -1.0), 0.8, (4.0,) * 3)
    b, _, _ = env.beta_at(traj, 40.0)
    assert all(abs(x) < 1e-10 for x in b)


def test_c_lower_bound_zero_numerator():
    traj = env.PresetTrajectory.from_initial_error((0.5,) * 3, (-0.5,) * 3, 1.0, (5.0,) * 3)
    # b = l*xi0 + xi_dot0 = 0
    assert traj.b == (0.0, 0.0, 0.0)
    c_min = env.c_lower_bound(traj, _env(), (0.04,) * 3)
    assert c_min == (0.0, 0.0, 0.0)


def test_c_lower_bound_arithmetic():
    # rho0=3, |xi0|=1.5, eps=0.5, |b|=2 -> c_min = 2.0
    traj = env.PresetTrajectory.from_initial_error((1.5,) * 3, (0.5,) * 3, 1.0, (5.0,) * 3)
    assert traj.b == (2.0, 2.0, 2.0)
    c_min = env.c_lower_bound(traj, _env(), (0.5,) * 3)
    assert c_min == (2.0, 2.0, 2.0)


def test_c_lower_bound_infeasible():
    traj = env.PresetTrajectory.from_initial_error((3.1,) * 3, (0.0,) * 3, 1.0, (5.0,) * 3)
    with pytest.raises(InfeasibleEnvelope):
        env.c_lower_bound(traj, _env(), (0.04,) * 3)


def test_validate_c_flags_violations():
    traj = env.PresetTrajectory.from_initial_error((1.5,) * 3, (0.5,) * 3, 1.0, (1.5,) * 3)
    report = env.validate_c(traj, _env(), env.MarginConstants((0.5,) * 3))
    assert not report.ok
    assert report.violations == (0, 1, 2)
    ok = env.validate_c(
        env.PresetTrajectory.from_initial_error((1.5,) * 3, (0.5,) * 3, 1.0, (2.5,) * 3),
        _env(),
        env.MarginConstants((0.5,) * 3),
    )
    assert ok.ok


def test_validate_c_theorem_variant_margin():
    traj = env.PresetTrajectory.from_initial_error((1.5,) * 3, (0.5,) * 3, 1.0, (2.5,) * 3)
    # larger effective margin shrinks the denominator and raises the bound
    report = env.validate_c(traj, _env(), env.MarginConstants((0.1,) * 3), delta_over_gain=(1.0,) * 3)
    assert report.c_min == (4.0, 4.0, 4.0)
    assert not report.ok


def test_containment_admissible_parameters():
    traj = env.PresetTrajectory.from_initial_error((-0.8, 0.8, -0.8), (0.0,) * 3, 1.0, (5.0,) * 3)
    report = env.containment_check(traj, _env(), env.MarginConstants((0.04,) * 3))
    assert report.ok


def test_containment_degenerate_equal_trajectories():
    # initial error sitting on the envelope edge violates immediately
    traj = env.PresetTrajectory.from_initial_error((3.0,) * 3, (0.0,) * 3, 1.0, (5.0,) * 3)
    report = env.containment_check(traj, _env(), env.MarginConstants((0.04,) * 3))
    assert not report.ok
    assert report.t_violation == 0.0


def test_containment_randomized_admissible_draws():
    rng = np.random.default_rng(7)
    for _ in range(200):
        rho0 = rng.uniform(0.5, 4.0)
        rho_inf = rng.uniform(0.01, 0.25) * rho0
        l = rng.uniform(0.3, 3.0)
        xi0 = rng.uniform(-0.9, 0.9) * rho0
        xi_dot0 = rng.uniform(-2.0, 2.0)
        eps = 0.9 * min(rho_inf, rho0 - abs(xi0))
        e = env.PerformanceEnvelope((rho0,) * 3, (rho_inf,) * 3, l)
        traj = env.PresetTrajectory.from_initial_error((xi0,) * 3, (xi_dot0,) * 3, l, (1.0,) * 3)
        c_min = env.c_lower_bound(traj, e, (eps,) * 3)[0]
        c = max(c_min * rng.uniform(1.01, 5.0), 1e-3)
        traj = env.PresetTrajectory.from_initial_error((xi0,) * 3, (xi_dot0,) * 3, l, (c,) * 3)
        report = env.containment_check(traj, e, env.MarginConstants((eps,) * 3))
        assert report.ok, (rho0, rho_inf, l, xi0, xi_dot0, eps, c, report)


def test_margin_constants_validation():
    with pytest.raises(InvalidParameter):
        env.MarginConstants((0.0, 0.1, 0.1))
    m = env.MarginConstants((0.04,) * 3)
    m.check_against(_env(), (0.5, 0.5, 0.5))
    with pytest.raises(InfeasibleEnvelope):
        env.MarginConstants((0.06,) * 3).check_against(_env(), (0.5, 0.5, 0.5))
