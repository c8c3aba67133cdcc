import math

import numpy as np
import pytest

from ppflight.dynamics import (
    CommandLimits,
    ControlCommand,
    CouplingSample,
    NoiseConfig,
    QuadParams,
    RigidBodyState,
    ZERO_COUPLING,
    add_measurement_noise,
    derivative,
    rk4_step,
)
from ppflight.errors import InvalidParameter, NonFiniteState
from ppflight.so3 import diag3, mat_vec, orthonormality_error, rotation_about, to_array

PARAMS = QuadParams(m_b=5.40, m_r=2.32, inertia=diag3((0.22, 0.22, 0.38)))
IDENT = (1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0)


def _state(p=(0.0, 0.0, 0.0), v=(0.0, 0.0, 0.0), R=IDENT, w=(0.0, 0.0, 0.0)):
    return RigidBodyState(p=p, v=v, R=R, omega=w)


def test_hover_equilibrium():
    thrust = PARAMS.mass_total * PARAMS.g
    assert abs(thrust - 75.73) < 0.01  # 5.40 + 2.32 kg at 9.81
    d = derivative(_state(), ControlCommand(thrust, (0.0, 0.0, 0.0)), ZERO_COUPLING, PARAMS)
    assert max(abs(x) for x in d.dv) < 1e-12
    assert d.dp == (0.0, 0.0, 0.0)
    assert d.domega == (0.0, 0.0, 0.0)


def test_free_fall():
    d = derivative(_state(), ControlCommand(0.0, (0.0, 0.0, 0.0)), ZERO_COUPLING, PARAMS)
    assert d.dv == (0.0, 0.0, PARAMS.g)  # +z is down


def test_principal_axis_spin_has_zero_angular_acceleration():
    for axis in range(3):
        w = [0.0, 0.0, 0.0]
        w[axis] = 2.0
        d = derivative(
            _state(w=tuple(w)), ControlCommand(0.0, (0.0, 0.0, 0.0)), ZERO_COUPLING, PARAMS
        )
        assert d.domega == (0.0, 0.0, 0.0)


def test_gyroscopic_term_against_numpy_oracle(rng):
    ine = to_array(PARAMS.inertia)
    for _ in range(20):
        w = tuple(rng.uniform(-3, 3, 3))
        tau = tuple(rng.uniform(-2, 2, 3))
        d = derivative(
            _state(w=w), ControlCommand(0.0, tau), ZERO_COUPLING, PARAMS
        )
        want = np.linalg.solve(ine, np.array(tau) - np.cross(w, ine @ np.array(w)))
        assert np.allclose(d.domega, want, atol=1e-12)


def test_standard_quadrotor_degeneration(rng):
    # with m_r = 0 and zero coupling the model must match an independently
    # coded plain-quadrotor right-hand side
    params = QuadParams(m_b=1.3, m_r=0.0, inertia=diag3((0.011, 0.012, 0.021)))
    ine = to_array(params.inertia)
    for _ in range(25):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        R = rotation_about(tuple(axis), rng.uniform(-1.5, 1.5))
        v = tuple(rng.uniform(-2, 2, 3))
        w = tuple(rng.uniform(-3, 3, 3))
        thrust = rng.uniform(0, 30)
        tau = tuple(rng.uniform(-0.5, 0.5, 3))
        d = derivative(
            _state(v=v, R=R, w=w), ControlCommand(thrust, tau), ZERO_COUPLING, params
        )
        Rm = to_array(R)
        dv_want = -thrust * (Rm @ [0, 0, 1]) / params.m_b + np.array([0, 0, params.g])
        dw_want = np.linalg.solve(ine, np.array(tau) - np.cross(w, ine @ np.array(w)))
        dR_want = Rm @ np.array(
            [[0, -w[2], w[1]], [w[2], 0, -w[0]], [-w[1], w[0], 0]]
        )
        assert np.allclose(d.dv, dv_want, atol=1e-12)
        assert np.allclose(d.domega, dw_want, atol=1e-12)
        assert np.allclose(to_array(d.dR), dR_want, atol=1e-12)
        assert d.dp == v


def test_rk4_zero_dynamics_identity():
    params = QuadParams(m_b=5.40, m_r=2.32, inertia=diag3((0.22, 0.22, 0.38)), g=0.0)
    st = _state(p=(1.0, -2.0, 3.0))
    nxt = rk4_step(st, ControlCommand(0.0, (0.0, 0.0, 0.0)), lambda t: ZERO_COUPLING, 0.0, 1e-3, params)
    assert nxt.p == st.p and nxt.v == st.v and nxt.R == st.R and nxt.omega == st.omega


def test_rk4_polynomial_exactness():
    # constant 1 m/s^2 on x for 1 s: v = 1, p = 0.5 to rounding accumulation
    params = QuadParams(m_b=5.40, m_r=2.32, inertia=diag3((0.22, 0.22, 0.38)), g=0.0)
    coupling = CouplingSample((1.0, 0.0, 0.0), (0.0, 0.0, 0.0))
    st = _state()
    cmd = ControlCommand(0.0, (0.0, 0.0, 0.0))
    for k in range(1000):
        st = rk4_step(st, cmd, lambda t: coupling, k * 1e-3, 1e-3, params)
    assert abs(st.v[0] - 1.0) < 1e-12
    assert abs(st.p[0] - 0.5) < 1e-12


def _momentum_drift(dt, t_end=1.0):
    params = QuadParams(m_b=5.4, m_r=2.32, inertia=diag3((0.22, 0.31, 0.38)), g=0.0)
    st = _state(w=(2.0, -2.5, 1.2))
    cmd = ControlCommand(0.0, (0.0, 0.0, 0.0))
    L0 = np.array(mat_vec(st.R, mat_vec(params.inertia, st.omega)))
    for k in range(int(round(t_end / dt))):
        st = rk4_step(st, cmd, lambda t: ZERO_COUPLING, k * dt, dt, params)
    L = np.array(mat_vec(st.R, mat_vec(params.inertia, st.omega)))
    return np.abs(L - L0).max()


def test_free_body_momentum_fourth_order():
    e1 = _momentum_drift(4e-3)
    e2 = _momentum_drift(2e-3)
    ratio = e1 / e2
    assert 10.0 <= ratio <= 24.0


def test_rotation_orthonormality_maintained():
    params = QuadParams(m_b=5.4, m_r=2.32, inertia=diag3((0.22, 0.31, 0.38)), g=0.0)
    st = _state(w=(2.0, -2.5, 1.2))
    cmd = ControlCommand(0.0, (0.0, 0.0, 0.0))
    worst = 0.0
    for k in range(20000):
        st = rk4_step(st, cmd, lambda t: ZERO_COUPLING, k * 1e-3, 1e-3, params)
        if k % 500 == 0:
            worst = max(worst, orthonormality_error(st.R))
    assert max(worst, orthonormality_error(st.R)) < 1e-12


def test_rk4_raises_on_divergence():
    with pytest.raises(NonFiniteState):
        rk4_step(
            _state(),
            ControlCommand(0.0, (1e308, 0.0, 0.0)),
            lambda t: ZERO_COUPLING,
            0.0,
            1.0,
            PARAMS,
        )


def test_command_validation_and_limits():
    with pytest.raises(InvalidParameter):
        ControlCommand(-1.0, (0.0, 0.0, 0.0))
    lim = CommandLimits(thrust_max=10.0, torque_max=0.5)
    cut = lim.apply(ControlCommand(20.0, (1.0, -2.0, 0.1)))
    assert cut.thrust == 10.0
    assert cut.torque == (0.5, -0.5, 0.1)
    kept = lim.apply(ControlCommand(5.0, (0.1, 0.2, -0.3)))
    assert kept.thrust == 5.0 and kept.torque == (0.1, 0.2, -0.3)


def test_quad_params_validation():
    with pytest.raises(InvalidParameter):
        QuadParams(m_b=-1.0, m_r=0.0, inertia=diag3((1.0, 1.0, 1.0)))
    with pytest.raises(InvalidParameter):
        QuadParams(m_b=1.0, m_r=0.0, inertia=diag3((1.0, -1.0, 1.0)))
    asym = (1.0, 0.2, 0.0, 0.1, 1.0, 0.0, 0.0, 0.0, 1.0)
    with pytest.raises(InvalidParameter):
        QuadParams(m_b=1.0, m_r=0.0, inertia=asym)


def test_noise_zero_std_is_identity(rng):
    st = _state(v=(1.0, 2.0, 3.0))
    out = add_measurement_noise(st, NoiseConfig(), rng)
    assert out is st


def test_noise_deterministic_given_seed():
    st = _state(v=(1.0, 2.0, 3.0), w=(0.1, 0.2, 0.3))
    cfg = NoiseConfig(velocity_std=0.01, omega_std=0.02)
    a = add_measurement_noise(st, cfg, np.random.default_rng(42))
    b = add_measurement_noise(st, cfg, np.random.default_rng(42))
    assert a.v == b.v and a.omega == b.omega
    c = add_measurement_noise(st, cfg, np.random.default_rng(43))
    assert a.v != c.v


def test_noise_empirical_std_within_two_percent():
    st = _state()
    cfg = NoiseConfig(velocity_std=0.01, omega_std=0.0)
    rng = np.random.default_rng(5)
    samples = np.array(
        [add_measurement_noise(st, cfg, rng).v[0] for _ in range(100000)]
    )
    assert abs(samples.std() - 0.01) / 0.01 < 0.02
    assert abs(samples.mean()) < 3 * 0.01 / math.sqrt(100000)
