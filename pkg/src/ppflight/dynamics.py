"""Ground-truth rigid-body plant of the multirotor base.

North-east-down inertial frame (altitude is negative z); the body z-axis
points down, thrust acts along ``-R n`` with ``n = (0, 0, 1)``.  The coupling
terms enter as additive accelerations:

    dp/dt     = v
    dv/dt     = -T R n / (m_B + m_R) + g n + delta_v
    dR/dt     = R hat(omega)
    domega/dt = I^-1 (tau - omega x I omega) + delta_omega

Integration is classical fixed-step RK4 with the rotation re-orthonormalized
(one polar Newton step) after every step.  With both coupling terms zero and
``m_R = 0`` this is a standard quadrotor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

from .errors import InvalidParameter, NonFiniteState
from .so3 import (
    Mat3,
    Vec3,
    mat_is_finite,
    polar_orthonormalize_step,
    sym_inverse,
    vis_finite,
)


@dataclass(frozen=True)
class QuadParams:
    """Masses, inertia, and gravity of the plant.

    ``inertia`` is the symmetric positive-definite inertia matrix of the base
    in body axes; its inverse is precomputed for the hot loop.
    """

    m_b: float
    m_r: float
    inertia: Mat3
    g: float = 9.81
    n: Vec3 = (0.0, 0.0, 1.0)

    def __post_init__(self) -> None:
        if self.m_b <= 0.0 or self.m_r < 0.0:
            raise InvalidParameter("masses must be positive (m_r may be zero)")
        ine = self.inertia
        if not mat_is_finite(ine):
            raise InvalidParameter("inertia entries must be finite")
        if max(abs(ine[1] - ine[3]), abs(ine[2] - ine[6]), abs(ine[5] - ine[7])) > 1e-12:
            raise InvalidParameter("inertia must be symmetric")
        # Sylvester criterion for positive definiteness
        d1 = ine[0]
        d2 = ine[0] * ine[4] - ine[1] * ine[3]
        d3 = (
            ine[0] * (ine[4] * ine[8] - ine[5] * ine[7])
            - ine[1] * (ine[3] * ine[8] - ine[5] * ine[6])
            + ine[2] * (ine[3] * ine[7] - ine[4] * ine[6])
        )
        if d1 <= 0.0 or d2 <= 0.0 or d3 <= 0.0:
            raise InvalidParameter("inertia must be positive definite")
        nn = math.sqrt(self.n[0] ** 2 + self.n[1] ** 2 + self.n[2] ** 2)
        if abs(nn - 1.0) > 1e-12:
            raise InvalidParameter("n must be a unit vector")
        object.__setattr__(self, "_inertia_inv", sym_inverse(ine))

    @property
    def mass_total(self) -> float:
        return self.m_b + self.m_r

    @property
    def inertia_inv(self) -> Mat3:
        return self._inertia_inv  # type: ignore[attr-defined]


@dataclass(frozen=True)
class RigidBodyState:
    """Position/velocity in the inertial frame, rotation body->inertial,
    angular velocity in the body frame."""

    p: Vec3
    v: Vec3
    R: Mat3
    omega: Vec3

    def is_finite(self) -> bool:
        return (
            vis_finite(self.p)
            and vis_finite(self.v)
            and mat_is_finite(self.R)
            and vis_finite(self.omega)
        )


@dataclass(frozen=True)
class ControlCommand:
    """Thrust magnitude (N) plus body torque (N m); the only actuation channel."""

    thrust: float
    torque: Vec3

    def __post_init__(self) -> None:
        if self.thrust < 0.0:
            raise InvalidParameter(f"thrust must be non-negative, got {self.thrust}")

    def saturated(self, thrust_max: float, torque_max: float) -> "ControlCommand":
        t = min(self.thrust, thrust_max)
        tq = tuple(max(-torque_max, min(torque_max, x)) for x in self.torque)
        return ControlCommand(t, tq)  # type: ignore[arg-type]


@dataclass(frozen=True)
class CommandLimits:
    """Optional actuation saturation (disabled when a limit is zero)."""

    thrust_max: float = 0.0
    torque_max: float = 0.0

    def apply(self, cmd: "ControlCommand") -> "ControlCommand":
        thrust = cmd.thrust
        torque = cmd.torque
        if self.thrust_max > 0.0 and thrust > self.thrust_max:
            thrust = self.thrust_max
        if self.torque_max > 0.0:
            lim = self.torque_max
            torque = (
                min(lim, max(-lim, torque[0])),
                min(lim, max(-lim, torque[1])),
                min(lim, max(-lim, torque[2])),
            )
        if thrust is cmd.thrust and torque is cmd.torque:
            return cmd
        return ControlCommand(thrust, torque)


@dataclass(frozen=True)
class CouplingSample:
    """Coupling accelerations exerted on the base (translational, angular)."""

    delta_v: Vec3
    delta_omega: Vec3


ZERO_COUPLING = CouplingSample((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))


@dataclass(frozen=True)
class StateDerivative:
    dp: Vec3
    dv: Vec3
    dR: Mat3
    domega: Vec3


def _deriv(
    v: Vec3,
    r: Mat3,
    w: Vec3,
    thrust: float,
    torque: Vec3,
    coupling: CouplingSample,
    params: QuadParams,
) -> tuple[Vec3, Vec3, Mat3, Vec3]:
    tm = thrust / params.mass_total
    g = params.g
    nx, ny, nz = params.n
    dv = (
        g * nx + coupling.delta_v[0] - tm * (r[0] * nx + r[1] * ny + r[2] * nz),
        g * ny + coupling.delta_v[1] - tm * (r[3] * nx + r[4] * ny + r[5] * nz),
        g * nz + coupling.delta_v[2] - tm * (r[6] * nx + r[7] * ny + r[8] * nz),
    )
    wx, wy, wz = w
    dr = (
        r[1] * wz - r[2] * wy, r[2] * wx - r[0] * wz, r[0] * wy - r[1] * wx,
        r[4] * wz - r[5] * wy, r[5] * wx - r[3] * wz, r[3] * wy - r[4] * wx,
        r[7] * wz - r[8] * wy, r[8] * wx - r[6] * wz, r[6] * wy - r[7] * wx,
    )
    ine = params.inertia
    iw = (
        ine[0] * wx + ine[1] * wy + ine[2] * wz,
        ine[3] * wx + ine[4] * wy + ine[5] * wz,
        ine[6] * wx + ine[7] * wy + ine[8] * wz,
    )
    mx = torque[0] - (wy * iw[2] - wz * iw[1])
    my = torque[1] - (wz * iw[0] - wx * iw[2])
    mz = torque[2] - (wx * iw[1] - wy * iw[0])
    ii = params.inertia_inv
    dw = (
        ii[0] * mx + ii[1] * my + ii[2] * mz + coupling.delta_omega[0],
        ii[3] * mx + ii[4] * my + ii[5] * mz + coupling.delta_omega[1],
        ii[6] * mx + ii[7] * my + ii[8] * mz + coupling.delta_omega[2],
    )
    return v, dv, dr, dw


def derivative(
    state: RigidBodyState,
    cmd: ControlCommand,
    coupling: CouplingSample,
    params: QuadParams,
) -> StateDerivative:
    """Exact evaluation of the four right-hand sides at the given state."""
    dp, dv, dr, dw = _deriv(
        state.v, state.R, state.omega, cmd.thrust, cmd.torque, coupling, params
    )
    return StateDerivative(dp=dp, dv=dv, dR=dr, domega=dw)


def rk4_step(
    state: RigidBodyState,
    cmd: ControlCommand,
    coupling_fn: Callable[[float], CouplingSample],
    t: float,
    dt: float,
    params: QuadParams,
) -> RigidBodyState:
    """One classical RK4 step; the command is held over the step while the
    coupling is sampled at t, t + dt/2, and t + dt."""
    if dt <= 0.0:
        raise InvalidParameter("dt must be positive")
    thrust, torque = cmd.thrust, cmd.torque
    c0 = coupling_fn(t)
    cm = coupling_fn(t + 0.5 * dt)
    c1 = coupling_fn(t + dt)
    p, v, r, w = state.p, state.v, state.R, state.omega

    ap1, av1, ar1, aw1 = _deriv(v, r, w, thrust, torque, c0, params)
    h = 0.5 * dt
    ap2, av2, ar2, aw2 = _deriv(
        (v[0] + h * av1[0], v[1] + h * av1[1], v[2] + h * av1[2]),
        (r[0] + h * ar1[0], r[1] + h * ar1[1], r[2] + h * ar1[2],
         r[3] + h * ar1[3], r[4] + h * ar1[4], r[5] + h * ar1[5],
         r[6] + h * ar1[6], r[7] + h * ar1[7], r[8] + h * ar1[8]),
        (w[0] + h * aw1[0], w[1] + h * aw1[1], w[2] + h * aw1[2]),
        thrust, torque, cm, params,
    )
    ap3, av3, ar3, aw3 = _deriv(
        (v[0] + h * av2[0], v[1] + h * av2[1], v[2] + h * av2[2]),
        (r[0] + h * ar2[0], r[1] + h * ar2[1], r[2] + h * ar2[2],
         r[3] + h * ar2[3], r[4] + h * ar2[4], r[5] + h * ar2[5],
         r[6] + h * ar2[6], r[7] + h * ar2[7], r[8] + h * ar2[8]),
        (w[0] + h * aw2[0], w[1] + h * aw2[1], w[2] + h * aw2[2]),
        thrust, torque, cm, params,
    )
    ap4, av4, ar4, aw4 = _deriv(
        (v[0] + dt * av3[0], v[1] + dt * av3[1], v[2] + dt * av3[2]),
        (r[0] + dt * ar3[0], r[1] + dt * ar3[1], r[2] + dt * ar3[2],
         r[3] + dt * ar3[3], r[4] + dt * ar3[4], r[5] + dt * ar3[5],
         r[6] + dt * ar3[6], r[7] + dt * ar3[7], r[8] + dt * ar3[8]),
        (w[0] + dt * aw3[0], w[1] + dt * aw3[1], w[2] + dt * aw3[2]),
        thrust, torque, c1, params,
    )
    d6 = dt / 6.0
    p2 = (
        p[0] + d6 * (ap1[0] + 2.0 * ap2[0] + 2.0 * ap3[0] + ap4[0]),
        p[1] + d6 * (ap1[1] + 2.0 * ap2[1] + 2.0 * ap3[1] + ap4[1]),
        p[2] + d6 * (ap1[2] + 2.0 * ap2[2] + 2.0 * ap3[2] + ap4[2]),
    )
    v2 = (
        v[0] + d6 * (av1[0] + 2.0 * av2[0] + 2.0 * av3[0] + av4[0]),
        v[1] + d6 * (av1[1] + 2.0 * av2[1] + 2.0 * av3[1] + av4[1]),
        v[2] + d6 * (av1[2] + 2.0 * av2[2] + 2.0 * av3[2] + av4[2]),
    )
    r2 = (
        r[0] + d6 * (ar1[0] + 2.0 * ar2[0] + 2.0 * ar3[0] + ar4[0]),
        r[1] + d6 * (ar1[1] + 2.0 * ar2[1] + 2.0 * ar3[1] + ar4[1]),
        r[2] + d6 * (ar1[2] + 2.0 * ar2[2] + 2.0 * ar3[2] + ar4[2]),
        r[3] + d6 * (ar1[3] + 2.0 * ar2[3] + 2.0 * ar3[3] + ar4[3]),
        r[4] + d6 * (ar1[4] + 2.0 * ar2[4] + 2.0 * ar3[4] + ar4[4]),
        r[5] + d6 * (ar1[5] + 2.0 * ar2[5] + 2.0 * ar3[5] + ar4[5]),
        r[6] + d6 * (ar1[6] + 2.0 * ar2[6] + 2.0 * ar3[6] + ar4[6]),
        r[7] + d6 * (ar1[7] + 2.0 * ar2[7] + 2.0 * ar3[7] + ar4[7]),
        r[8] + d6 * (ar1[8] + 2.0 * ar2[8] + 2.0 * ar3[8] + ar4[8]),
    )
    w2 = (
        w[0] + d6 * (aw1[0] + 2.0 * aw2[0] + 2.0 * aw3[0] + aw4[0]),
        w[1] + d6 * (aw1[1] + 2.0 * aw2[1] + 2.0 * aw3[1] + aw4[1]),
        w[2] + d6 * (aw1[2] + 2.0 * aw2[2] + 2.0 * aw3[2] + aw4[2]),
    )
    isf = math.isfinite
    if not (
        isf(p2[0]) and isf(p2[1]) and isf(p2[2])
        and isf(v2[0]) and isf(v2[1]) and isf(v2[2])
        and isf(w2[0]) and isf(w2[1]) and isf(w2[2])
        and isf(r2[0]) and isf(r2[4]) and isf(r2[8])
        and isf(r2[1]) and isf(r2[2]) and isf(r2[3])
        and isf(r2[5]) and isf(r2[6]) and isf(r2[7])
    ):
        raise NonFiniteState(f"state non-finite after step at t = {t}")
    return RigidBodyState(p=p2, v=v2, R=polar_orthonormalize_step(r2), omega=w2)


@dataclass(frozen=True)
class NoiseConfig:
    """Zero-mean Gaussian measurement noise on velocity and body rate."""

    velocity_std: float = 0.0
    omega_std: float = 0.0

    def __post_init__(self) -> None:
        if self.velocity_std < 0.0 or self.omega_std < 0.0:
            raise InvalidParameter("noise std must be non-negative")

    @property
    def enabled(self) -> bool:
        return self.velocity_std > 0.0 or self.omega_std > 0.0


def add_measurement_noise(
    state: RigidBodyState, noise: NoiseConfig, rng
) -> RigidBodyState:
    """Measured state: v and omega perturbed, p and R passed through.

    A zero-noise config returns the state object unchanged (and draws
    nothing, keeping the RNG stream untouched).
    """
    if not noise.enabled:
        return state
    draws = rng.normal(0.0, 1.0, 6)
    sv, sw = noise.velocity_std, noise.omega_std
    v = (
        state.v[0] + sv * float(draws[0]),
        state.v[1] + sv * float(draws[1]),
        state.v[2] + sv * float(draws[2]),
    )
    w = (
        state.omega[0] + sw * float(draws[3]),
        state.omega[1] + sw * float(draws[4]),
        state.omega[2] + sw * float(draws[5]),
    )
    return replace(state, v=v, omega=w)
