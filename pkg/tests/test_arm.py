import math

import numpy as np
import pytest

from ppflight.arm import (
    ArmTrajectoryProfile,
    ExternalForceEvent,
    JointWave,
    LumpedArmParams,
    coupling_from_arm,
    end_effector_state,
    external_force_coupling,
    joint_state_at,
)
from ppflight.dynamics import QuadParams
from ppflight.errors import InvalidParameter
from ppflight.so3 import diag3, rotation_about, to_array

QUAD = QuadParams(m_b=5.40, m_r=2.32, inertia=diag3((0.22, 0.22, 0.38)))
IDENT = (1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0)


def _profile(waves=None, tau=0.0):
    base = [JointWave() for _ in range(6)]
    for idx, wave in (waves or {}).items():
        base[idx] = wave
    return ArmTrajectoryProfile(joints=tuple(base), servo_tau=tau)


def _arm(mass=1.0, mount=(0.0, 0.0, 0.1), links=(0.19, 0.19)):
    return LumpedArmParams(point_mass=mass, mount_offset=mount, link_lengths=links)


def test_zero_amplitude_constant_offsets():
    prof = _profile({0: JointWave(offset=0.3), 2: JointWave(offset=-0.7)}, tau=0.05)
    for t in (0.0, 0.5, 3.0):
        th, dth, ddth = joint_state_at(prof, t)
        assert th[0] == 0.3 and th[2] == -0.7
        assert all(x == 0.0 for x in dth)
        assert all(x == 0.0 for x in ddth)


def test_instantaneous_servo_rate_peak():
    # A = 1, f = 0.5 Hz -> peak rate 2 pi 0.5 = pi
    prof = _profile({0: JointWave(amplitude=1.0, frequency_hz=0.5)}, tau=0.0)
    peak = max(abs(joint_state_at(prof, 0.001 * k)[1][0]) for k in range(4000))
    assert abs(peak - math.pi) < 1e-4


def test_servo_initial_condition_and_attenuation():
    wave = JointWave(amplitude=1.0, frequency_hz=1.0, phase=0.7, offset=0.2)
    prof = _profile({0: wave}, tau=0.08)
    th0 = joint_state_at(prof, 0.0)[0][0]
    assert abs(th0 - (0.2 + math.sin(0.7))) < 1e-12  # starts at the commanded angle
    # steady-state amplitude shrinks by 1/sqrt(1 + (w tau)^2)
    ts = np.arange(3.0, 6.0, 1e-3)
    amp = max(abs(joint_state_at(prof, float(t))[0][0] - 0.2) for t in ts)
    want = 1.0 / math.sqrt(1.0 + (2 * math.pi * 0.08) ** 2)
    assert abs(amp - want) < 2e-3


def test_joint_derivatives_match_finite_differences():
    rng = np.random.default_rng(3)
    for _ in range(100):
        wave = JointWave(
            amplitude=rng.uniform(0.1, 1.2),
            frequency_hz=rng.uniform(0.1, 2.0),
            phase=rng.uniform(0, 6.28),
            offset=rng.uniform(-1, 1),
        )
        tau = rng.choice([0.0, 0.02, 0.08])
        prof = _profile({1: wave}, tau=float(tau))
        t = rng.uniform(0.05, 4.0)
        h = 1e-5
        thp = joint_state_at(prof, t + h)
        thm = joint_state_at(prof, t - h)
        th, dth, ddth = joint_state_at(prof, t)
        fd1 = (thp[0][1] - thm[0][1]) / (2 * h)
        fd2 = (thp[0][1] - 2 * th[1] + thm[0][1]) / (h * h)
        assert abs(dth[1] - fd1) <= 1e-5 * max(1.0, abs(fd1))
        assert abs(ddth[1] - fd2) <= 1e-4 * max(1.0, abs(fd2))


def test_negative_time_rejected():
    with pytest.raises(InvalidParameter):
        joint_state_at(_profile(), -0.5)


def test_forward_kinematics_straight_down():
    arm = _arm()
    js = joint_state_at(_profile(), 0.0)
    pos, vel, acc = end_effector_state(arm, js)
    assert np.allclose(pos, (0.0, 0.0, 0.1 + 0.38), atol=1e-15)
    assert vel == (0.0, 0.0, 0.0)
    assert acc == (0.0, 0.0, 0.0)


def test_end_effector_derivatives_match_position_differences():
    arm = _arm()
    prof = _profile(
        {
            0: JointWave(amplitude=0.9, frequency_hz=0.4, phase=0.3, offset=0.5),
            1: JointWave(amplitude=0.4, frequency_hz=0.7, phase=1.0, offset=0.4),
            2: JointWave(amplitude=0.5, frequency_hz=1.1, phase=2.0, offset=0.6),
        },
        tau=0.05,
    )
    h = 1e-5
    for t in (0.3, 1.1, 2.7):
        pp_, vp, _ = end_effector_state(arm, joint_state_at(prof, t + h))
        pm, vm, _ = end_effector_state(arm, joint_state_at(prof, t - h))
        p0, v0, a0 = end_effector_state(arm, joint_state_at(prof, t))
        fd_v = (np.array(pp_) - np.array(pm)) / (2 * h)
        fd_a = (np.array(vp) - np.array(vm)) / (2 * h)
        assert np.allclose(v0, fd_v, rtol=1e-6, atol=1e-8)
        assert np.allclose(a0, fd_a, rtol=1e-6, atol=1e-6)


def test_zero_mass_gives_exact_zero_coupling():
    arm = _arm(mass=0.0)
    prof = _profile({0: JointWave(amplitude=1.0, frequency_hz=1.0)})
    c = coupling_from_arm(arm, joint_state_at(prof, 0.37), IDENT, QUAD)
    assert c.delta_v == (0.0, 0.0, 0.0)
    assert c.delta_omega == (0.0, 0.0, 0.0)


def test_static_arm_gravity_moment_only():
    # static arm: no reaction force; torque is the weight moment about the base
    arm = _arm(mass=1.0)
    prof = _profile({1: JointWave(offset=0.8)})  # shoulder leaning
    js = joint_state_at(prof, 2.0)
    c = coupling_from_arm(arm, js, IDENT, QUAD)
    assert c.delta_v == (0.0, 0.0, 0.0)
    pos, _, _ = end_effector_state(arm, js)
    want = np.linalg.solve(
        to_array(QUAD.inertia), np.cross(pos, [0.0, 0.0, 1.0 * QUAD.g])
    )
    assert np.allclose(c.delta_omega, want, atol=1e-12)


def test_static_arm_straight_down_zero_coupling():
    arm = _arm(mount=(0.0, 0.0, 0.1))
    c = coupling_from_arm(arm, joint_state_at(_profile(), 1.0), IDENT, QUAD)
    assert c.delta_v == (0.0, 0.0, 0.0)
    assert np.allclose(c.delta_omega, (0.0, 0.0, 0.0), atol=1e-15)


def test_swing_coupling_against_finite_difference_oracle():
    # reaction model cross-checked against numerically differentiated kinematics
    arm = _arm(mass=1.0)
    prof = _profile(
        {
            0: JointWave(amplitude=1.0, frequency_hz=0.22, offset=0.7),
            1: JointWave(amplitude=0.3, frequency_hz=0.45, phase=0.9, offset=0.5),
            2: JointWave(amplitude=0.4, frequency_hz=1.3, phase=1.7, offset=0.55),
        },
        tau=0.04,
    )
    R = rotation_about((0.2, -0.3, 0.9), 0.4)
    Rm = to_array(R)
    h = 1e-4
    peak = 0.0
    for t in np.arange(0.2, 4.0, 0.05):
        pos_p = np.array(end_effector_state(arm, joint_state_at(prof, t + h))[0])
        pos_0 = np.array(end_effector_state(arm, joint_state_at(prof, t))[0])
        pos_m = np.array(end_effector_state(arm, joint_state_at(prof, t - h))[0])
        a_fd = (pos_p - 2 * pos_0 + pos_m) / (h * h)
        dv_want = -(1.0 / QUAD.mass_total) * (Rm @ a_fd)
        grav_body = QUAD.g * (Rm.T @ [0.0, 0.0, 1.0])
        torque = np.cross(pos_0, 1.0 * (grav_body - a_fd))
        dw_want = np.linalg.solve(to_array(QUAD.inertia), torque)
        c = coupling_from_arm(arm, joint_state_at(prof, float(t)), R, QUAD)
        assert np.allclose(c.delta_v, dv_want, rtol=1e-4, atol=1e-6)
        assert np.allclose(c.delta_omega, dw_want, rtol=1e-4, atol=1e-5)
        peak = max(peak, float(np.linalg.norm(c.delta_v)))
    # reference disturbance level of the default-style swing profile
    assert 0.05 < peak < 1.0


def test_coupling_bounded_and_continuous():
    arm = _arm(mass=1.0)
    prof = _profile(
        {
            0: JointWave(amplitude=1.0, frequency_hz=0.22, offset=0.7),
            2: JointWave(amplitude=0.4, frequency_hz=1.3, phase=1.7, offset=0.55),
        },
        tau=0.04,
    )
    prev = coupling_from_arm(arm, joint_state_at(prof, 0.0), IDENT, QUAD)
    for k in range(1, 4000):
        cur = coupling_from_arm(arm, joint_state_at(prof, k * 1e-3), IDENT, QUAD)
        dv_rate = max(
            abs(a - b) / 1e-3 for a, b in zip(cur.delta_v, prev.delta_v)
        )
        assert dv_rate < 50.0  # bounded derivative
        assert all(abs(x) < 20.0 for x in cur.delta_v + cur.delta_omega)
        prev = cur


def test_external_event_inactive_outside_window():
    ev = ExternalForceEvent(t_start=1.0, t_stop=2.0, force=(0.0, 10.0, 0.0), point=(0.0, 0.0, 0.4))
    for t in (0.0, 0.99, 2.01, 5.0):
        c = external_force_coupling(ev, IDENT, QUAD, t)
        assert c.delta_v == (0.0, 0.0, 0.0) and c.delta_omega == (0.0, 0.0, 0.0)


def test_external_event_plateau_arithmetic():
    # 10 N lateral at 0.4 m below: dv_y = 10 / 7.72, dw = I^-1 (r x F)
    ev = ExternalForceEvent(t_start=1.0, t_stop=3.0, force=(0.0, 10.0, 0.0), point=(0.0, 0.0, 0.4))
    c = external_force_coupling(ev, IDENT, QUAD, 2.0)
    assert abs(c.delta_v[1] - 10.0 / 7.72) < 1e-12
    assert abs(c.delta_v[1] - 1.295) < 1e-3
    want = np.linalg.solve(to_array(QUAD.inertia), np.cross([0, 0, 0.4], [0, 10.0, 0]))
    assert np.allclose(c.delta_omega, want, atol=1e-12)


def test_external_event_ramp_is_continuous():
    ev = ExternalForceEvent(t_start=1.0, t_stop=3.0, force=(0.0, 10.0, 0.0), point=(0.0, 0.0, 0.4), ramp=0.05)
    vals = [external_force_coupling(ev, IDENT, QUAD, 1.0 + k * 1e-3).delta_v[1] for k in range(60)]
    assert vals[0] == 0.0
    assert abs(vals[-1] - 10.0 / 7.72) < 1e-9
    diffs = np.diff(vals)
    assert (diffs >= 0).all()
    assert diffs.max() < 0.1  # no step jump


def test_profile_validation():
    with pytest.raises(InvalidParameter):
        ArmTrajectoryProfile(joints=(JointWave(),) * 5)
    with pytest.raises(InvalidParameter):
        LumpedArmParams(point_mass=-0.1, mount_offset=(0, 0, 0), link_lengths=(0.1, 0.1))
