"""Synthetic ground-truth generator for the arm-induced coupling.

The six joints follow commanded sinusoids through a first-order servo model
with analytic joint position/velocity/acceleration.  A lumped point mass at
the end-effector of a shoulder/elbow chain (azimuth about body z, elevation,
elbow; the wrist joints carry negligible mass) turns joint motion into the
reaction force/torque felt by the base:

    delta_v     = -(m_eq / m_total) * R a_rel                  (inertial)
    delta_omega = I^-1 [ r_ee x (m_eq (g R^T n - a_rel)) ]      (body)

``a_rel`` is the end-effector acceleration relative to the base, expressed in
body axes; the gravity-moment term is what a hanging arm exerts even at rest
(the arm's weight is already part of the translational gravity term, its
moment about the base center of mass is not).  Everything is smooth in time,
so the coupling and its derivative stay bounded, and ``m_eq = 0`` reproduces
the coupling-free plant exactly.

External end-effector force events (e.g. dragging a load) produce

    delta_v = s(t) R F / m_total,   delta_omega = s(t) I^-1 (r x F),

with ``F`` and ``r`` in body axes and ``s`` a smoothstep ramp at both event
edges so the disturbance derivative stays bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .dynamics import CouplingSample, QuadParams
from .errors import InvalidParameter
from .so3 import Mat3, Vec3, mat_vec

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class JointWave:
    """Commanded joint angle offset + A sin(2 pi f t + phase)."""

    amplitude: float = 0.0
    frequency_hz: float = 0.0
    phase: float = 0.0
    offset: float = 0.0

    def __post_init__(self) -> None:
        if self.frequency_hz < 0.0:
            raise InvalidParameter("frequency must be non-negative")


#: precomputed servo-wave evaluation constants:
#: (offset, ag, w, arg0, c0, inv_tau); inv_tau = 0 flags the filterless case.
_WaveConsts = tuple[float, float, float, float, float, float]


def _wave_constants(wave: JointWave, tau: float) -> _WaveConsts:
    """Constants of the filtered-sinusoid closed form.

    For input x(t) = off + A sin(W t + phi) through tau y' = x - y with
    y(0) = x(0): y = off + A G sin(W t + phi - psi) + C exp(-t / tau), where
    G = 1 / sqrt(1 + (W tau)^2), psi = atan(W tau), and C matches the
    initial condition.  A constant input (W = 0) or an instantaneous servo
    (tau = 0) passes through unchanged.
    """
    w = _TWO_PI * wave.frequency_hz
    if tau == 0.0 or w == 0.0:
        return (wave.offset, wave.amplitude, w, wave.phase, 0.0, 0.0)
    g = 1.0 / math.sqrt(1.0 + (w * tau) ** 2)
    psi = math.atan(w * tau)
    c0 = wave.amplitude * math.sin(wave.phase) - wave.amplitude * g * math.sin(
        wave.phase - psi
    )
    return (wave.offset, wave.amplitude * g, w, wave.phase - psi, c0, 1.0 / tau)


def _eval_wave(k: _WaveConsts, t: float) -> tuple[float, float, float]:
    off, ag, w, arg0, c0, inv_tau = k
    arg = w * t + arg0
    s, c = math.sin(arg), math.cos(arg)
    if inv_tau == 0.0:
        return (off + ag * s, ag * w * c, -ag * w * w * s)
    e = c0 * math.exp(-t * inv_tau)
    return (
        off + ag * s + e,
        ag * w * c - inv_tau * e,
        -ag * w * w * s + inv_tau * inv_tau * e,
    )


@dataclass(frozen=True)
class ArmTrajectoryProfile:
    """Six joint waves plus the servo time constant (0 = instantaneous)."""

    joints: tuple[JointWave, ...]
    servo_tau: float = 0.05

    def __post_init__(self) -> None:
        if len(self.joints) != 6:
            raise InvalidParameter("profile needs exactly 6 joint waves")
        if self.servo_tau < 0.0:
            raise InvalidParameter("servo time constant must be non-negative")

    @cached_property
    def _consts(self) -> tuple[_WaveConsts, ...]:
        return tuple(_wave_constants(w, self.servo_tau) for w in self.joints)


JointState = tuple[tuple[float, ...], tuple[float, ...], tuple[float, ...]]


def joint_state_at(profile: ArmTrajectoryProfile, t: float) -> JointState:
    """(theta, dtheta, ddtheta) for all six joints at time t >= 0."""
    if t < 0.0:
        raise InvalidParameter("t must be non-negative")
    states = [_eval_wave(k, t) for k in profile._consts]
    return (
        tuple(s[0] for s in states),
        tuple(s[1] for s in states),
        tuple(s[2] for s in states),
    )


def _joint_state3(profile: ArmTrajectoryProfile, t: float) -> JointState:
    """Mass-relevant joints only (wrist waves carry no lumped mass)."""
    k = profile._consts
    a = _eval_wave(k[0], t)
    b = _eval_wave(k[1], t)
    c = _eval_wave(k[2], t)
    return ((a[0], b[0], c[0]), (a[1], b[1], c[1]), (a[2], b[2], c[2]))


@dataclass(frozen=True)
class LumpedArmParams:
    """Equivalent point mass at the end-effector of a two-link chain."""

    point_mass: float
    mount_offset: Vec3
    link_lengths: tuple[float, float]

    def __post_init__(self) -> None:
        if self.point_mass < 0.0:
            raise InvalidParameter("point mass must be non-negative")
        if any(length <= 0.0 for length in self.link_lengths):
            raise InvalidParameter("link lengths must be positive")


def end_effector_state(
    arm: LumpedArmParams, joints: JointState
) -> tuple[Vec3, Vec3, Vec3]:
    """Position, velocity, and acceleration of the end-effector in body axes.

    Joint 1 rotates about body z (down), joint 2 is the shoulder elevation
    measured from straight-down, joint 3 folds the elbow in the same plane.
    """
    th, dth, ddth = joints
    t1, t2, t3 = th[0], th[1], th[2]
    d1, d2, d3 = dth[0], dth[1], dth[2]
    a1, a2, a3 = ddth[0], ddth[1], ddth[2]
    l1, l2 = arm.link_lengths
    s1, c1 = math.sin(t1), math.cos(t1)
    s2, c2 = math.sin(t2), math.cos(t2)
    s23, c23 = math.sin(t2 + t3), math.cos(t2 + t3)
    d23 = d2 + d3
    a23 = a2 + a3

    # radial (horizontal) and vertical extension of the chain
    rho = l1 * s2 + l2 * s23
    zeta = l1 * c2 + l2 * c23
    drho = l1 * c2 * d2 + l2 * c23 * d23
    dzeta = -l1 * s2 * d2 - l2 * s23 * d23
    ddrho = l1 * (c2 * a2 - s2 * d2 * d2) + l2 * (c23 * a23 - s23 * d23 * d23)
    ddzeta = -l1 * (s2 * a2 + c2 * d2 * d2) - l2 * (s23 * a23 + c23 * d23 * d23)

    mx, my, mz = arm.mount_offset
    pos = (mx + rho * c1, my + rho * s1, mz + zeta)
    vel = (
        drho * c1 - rho * s1 * d1,
        drho * s1 + rho * c1 * d1,
        dzeta,
    )
    acc = (
        ddrho * c1 - 2.0 * drho * s1 * d1 - rho * c1 * d1 * d1 - rho * s1 * a1,
        ddrho * s1 + 2.0 * drho * c1 * d1 - rho * s1 * d1 * d1 + rho * c1 * a1,
        ddzeta,
    )
    return pos, vel, acc


def coupling_from_arm(
    arm: LumpedArmParams,
    joints: JointState,
    base_rotation: Mat3,
    quad: QuadParams,
) -> CouplingSample:
    """Reaction of the lumped end-effector mass on the base.

    Known exactly to the simulator (ground truth for the observer error)
    while remaining unknown to the controller.
    """
    m = arm.point_mass
    if m == 0.0:
        return CouplingSample((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))
    r_ee, _, a_rel = end_effector_state(arm, joints)
    mt = quad.mass_total
    r = base_rotation
    # inertial reaction acceleration on the base
    scale = -m / mt
    ax = r[0] * a_rel[0] + r[1] * a_rel[1] + r[2] * a_rel[2]
    ay = r[3] * a_rel[0] + r[4] * a_rel[1] + r[5] * a_rel[2]
    az = r[6] * a_rel[0] + r[7] * a_rel[1] + r[8] * a_rel[2]
    delta_v = (scale * ax, scale * ay, scale * az)
    # body-frame gravity direction R^T n
    nx, ny, nz = quad.n
    gb = (
        r[0] * nx + r[3] * ny + r[6] * nz,
        r[1] * nx + r[4] * ny + r[7] * nz,
        r[2] * nx + r[5] * ny + r[8] * nz,
    )
    g = quad.g
    fx = m * (g * gb[0] - a_rel[0])
    fy = m * (g * gb[1] - a_rel[1])
    fz = m * (g * gb[2] - a_rel[2])
    tx = r_ee[1] * fz - r_ee[2] * fy
    ty = r_ee[2] * fx - r_ee[0] * fz
    tz = r_ee[0] * fy - r_ee[1] * fx
    delta_omega = mat_vec(quad.inertia_inv, (tx, ty, tz))
    return CouplingSample(delta_v, delta_omega)


@dataclass(frozen=True)
class ExternalForceEvent:
    """Constant body-frame force applied at a body-frame point on a window."""

    t_start: float
    t_stop: float
    force: Vec3
    point: Vec3
    ramp: float = 0.05

    def __post_init__(self) -> None:
        if self.t_stop <= self.t_start:
            raise InvalidParameter("event must have t_stop > t_start")
        if self.ramp < 0.0:
            raise InvalidParameter("ramp must be non-negative")


def _smoothstep01(u: float) -> float:
    if u <= 0.0:
        return 0.0
    if u >= 1.0:
        return 1.0
    return u * u * (3.0 - 2.0 * u)


def external_force_coupling(
    event: ExternalForceEvent,
    base_rotation: Mat3,
    quad: QuadParams,
    t: float,
) -> CouplingSample:
    """Coupling accelerations of one force event at time t (zero outside it)."""
    if t <= event.t_start or t >= event.t_stop:
        return CouplingSample((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))
    if event.ramp > 0.0:
        w = _smoothstep01((t - event.t_start) / event.ramp) * _smoothstep01(
            (event.t_stop - t) / event.ramp
        )
    else:
        w = 1.0
    f = event.force
    r = base_rotation
    s = w / quad.mass_total
    delta_v = (
        s * (r[0] * f[0] + r[1] * f[1] + r[2] * f[2]),
        s * (r[3] * f[0] + r[4] * f[1] + r[5] * f[2]),
        s * (r[6] * f[0] + r[7] * f[1] + r[8] * f[2]),
    )
    p = event.point
    tq = (
        w * (p[1] * f[2] - p[2] * f[1]),
        w * (p[2] * f[0] - p[0] * f[2]),
        w * (p[0] * f[1] - p[1] * f[0]),
    )
    return CouplingSample(delta_v, mat_vec(quad.inertia_inv, tq))
