"""Flight controllers: the prescribed-performance design and its ablations,
plus a cascaded PID baseline, all behind one step interface.

Position loop.  With position error ``p_err = p - p_d``, preset trajectory
``beta`` and its derivatives, the deviation ``z = p_err - beta`` and sliding
vector ``s = dz + Lam z`` give the commanded force vector

    t_vec = m_total (g n + dv_est - ddp_d - ddbeta + Lam dz + K s),

whose norm is the thrust and whose direction defines the desired body
z-axis.  In closed loop (inner loop converged) ``ds/dt = -K s + (dv - dv_est)``.

Attitude loop.  Rotation error ``Rt = R_d^T R`` with scalar-positive error
quaternion ``(q0, qv)`` and ``Q = q0 I + hat(qv)``.  The desired angular
velocity ``omega_d = vee(R_d^T dR_d/dt)`` lives in the desired frame and is
transported by ``Rt^T``, giving the rate error ``wt = omega - Rt^T omega_d``
and the exact kinematics ``d(qv)/dt = Q wt / 2``.  With ``z = qv - beta_q``,
``s = dz + Lam_q z`` the torque

    tau = 2 I Q^-1 (-f_q - Q dw_est / 2 + ddbeta_q - Lam_q dz - K_q s)

cancels the nonlinearity

    f_q = (dQ wt - Q I^-1 (omega x I omega) + Q (wt x Rt^T omega_d)
           - Q Rt^T domega_d) / 2,

yielding ``ds/dt = -K_q s + Q (dw - dw_est) / 2``.

``omega_d`` is recovered numerically: the desired rotation history is
sampled every ``fd_stride`` ticks, differentiated with a 5-point one-sided
stencil (4th-order), projected back to a skew matrix, and first-order
low-passed; measurement noise reaching R_d would otherwise be amplified by
the 1/h of the stencil.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .dynamics import CommandLimits, ControlCommand, QuadParams, RigidBodyState
from .envelope import (
    MarginConstants,
    PerformanceEnvelope,
    PresetTrajectory,
    beta_at,
    validate_c,
)
from .errors import (
    ConfigInvalid,
    DegenerateThrust,
    InsufficientHistory,
    InvalidParameter,
    YawAlignmentSingularity,
)
from .eso import EsoTriplet, EsoUnitConfig, attitude_eso_step, position_eso_step
from .so3 import (
    ErrorQuaternion,
    Mat3,
    Vec3,
    error_quaternion,
    mat_mul,
    mat_t,
    mat_vec,
    q_matrix,
    q_matrix_inverse,
    rotation_to_quaternion,
    skew_part,
    vadd,
    vcross,
    vdot,
    vee,
    vmul,
    vnorm,
    vscale,
    vsub,
)

ZERO3: Vec3 = (0.0, 0.0, 0.0)
ZERO_TRIPLE: tuple[Vec3, Vec3, Vec3] = (ZERO3, ZERO3, ZERO3)


class ControllerVariant(str, Enum):
    PROPOSED = "proposed"
    PID = "pid"
    NO_ESO = "no_eso"
    NO_PRESET = "no_preset"


@dataclass(frozen=True)
class ReferenceSignal:
    """Desired position with two derivatives plus yaw and yaw rate."""

    p_d: Vec3
    dp_d: Vec3
    ddp_d: Vec3
    psi_d: float = 0.0
    dpsi_d: float = 0.0


@dataclass(frozen=True)
class TrackingLoopConfig:
    """One prescribed-performance loop: gains, envelope, preset shaping,
    observer settings, and the residual bound assumed when validating the
    shaping constants against the tracking-theorem conditions."""

    lam: Vec3
    k: Vec3
    envelope: PerformanceEnvelope
    c: Vec3
    margin: MarginConstants
    eso: tuple[EsoUnitConfig, EsoUnitConfig, EsoUnitConfig]
    assumed_delta_f: float

    def __post_init__(self) -> None:
        if any(x <= 0.0 for x in self.lam) or any(x <= 0.0 for x in self.k):
            raise InvalidParameter("gain diagonals must be positive")
        if self.assumed_delta_f < 0.0:
            raise InvalidParameter("assumed residual bound must be non-negative")

    @property
    def k_min(self) -> float:
        return min(self.k)

    def delta_over_gain(self) -> Vec3:
        """Per-axis delta_f / (Lam_ii * min(K)); the theorem-variant margin."""
        km = self.k_min
        return (
            self.assumed_delta_f / (self.lam[0] * km),
            self.assumed_delta_f / (self.lam[1] * km),
            self.assumed_delta_f / (self.lam[2] * km),
        )


# Aliases naming the two loop instances; the shape is identical.
PositionCtlConfig = TrackingLoopConfig
AttitudeCtlConfig = TrackingLoopConfig


@dataclass(frozen=True)
class PositionControlResult:
    t_vec: Vec3
    thrust: float
    z: Vec3
    dz: Vec3
    s: Vec3


def position_control(
    p_err: Vec3,
    v_err: Vec3,
    ddp_d: Vec3,
    beta: tuple[Vec3, Vec3, Vec3],
    dv_est: Vec3,
    cfg: TrackingLoopConfig,
    quad: QuadParams,
) -> PositionControlResult:
    """Commanded force vector of the position loop (see module docstring)."""
    b, db, ddb = beta
    z = vsub(p_err, b)
    dz = vsub(v_err, db)
    s = vadd(dz, vmul(cfg.lam, z))
    m = quad.mass_total
    g = quad.g
    n = quad.n
    t_vec = (
        m * (g * n[0] + dv_est[0] - ddp_d[0] - ddb[0] + cfg.lam[0] * dz[0] + cfg.k[0] * s[0]),
        m * (g * n[1] + dv_est[1] - ddp_d[1] - ddb[1] + cfg.lam[1] * dz[1] + cfg.k[1] * s[1]),
        m * (g * n[2] + dv_est[2] - ddp_d[2] - ddb[2] + cfg.lam[2] * dz[2] + cfg.k[2] * s[2]),
    )
    return PositionControlResult(t_vec=t_vec, thrust=vnorm(t_vec), z=z, dz=dz, s=s)


def desired_attitude(t_vec: Vec3, psi_d: float) -> Mat3:
    """Desired rotation from the force vector and yaw heading.

    Columns: b3 along the force vector, b2 = (b3 x a)/|b3 x a| with
    a = (cos psi, sin psi, 0), b1 = b2 x b3; always a proper rotation.
    """
    t = vnorm(t_vec)
    if t < 1e-6:
        raise DegenerateThrust(f"|t_vec| = {t:.3e}")
    b3 = (t_vec[0] / t, t_vec[1] / t, t_vec[2] / t)
    a = (math.cos(psi_d), math.sin(psi_d), 0.0)
    c = vcross(b3, a)
    nc = vnorm(c)
    if nc < 1e-6:
        raise YawAlignmentSingularity(f"|b3 x a| = {nc:.3e}")
    b2 = (c[0] / nc, c[1] / nc, c[2] / nc)
    b1 = vcross(b2, b3)
    return (
        b1[0], b2[0], b3[0],
        b1[1], b2[1], b3[1],
        b1[2], b2[2], b3[2],
    )


_FD5 = (3.0, -16.0, 36.0, -48.0, 25.0)  # one-sided, oldest..newest, / (12 h)


def _rate_at(history: Sequence[Mat3], idx: int, h: float) -> Vec3:
    """vee of the skew projection of R_d^T dR_d at history position idx
    (idx >= 4), using the 4th-order one-sided stencil."""
    dr = [0.0] * 9
    for j, coeff in enumerate(_FD5):
        m = history[idx - 4 + j]
        for i in range(9):
            dr[i] += coeff * m[i]
    inv = 1.0 / (12.0 * h)
    drm: Mat3 = tuple(x * inv for x in dr)  # type: ignore[assignment]
    return vee(skew_part(mat_mul(mat_t(history[idx]), drm)))


def desired_angular_velocity(
    history: Sequence[Mat3], h: float
) -> tuple[Vec3, Vec3]:
    """(omega_d, domega_d) from a desired-rotation history sampled at spacing h.

    Needs at least 5 samples for the rate (raises
    :class:`InsufficientHistory` otherwise) and 9 for its derivative, which
    is returned as zero until enough history exists.  The caller decides the
    fallback for the earliest ticks.
    """
    n = len(history)
    if n < 5:
        raise InsufficientHistory(f"need 5 samples, have {n}")
    omega_d = _rate_at(history, n - 1, h)
    if n < 9:
        return omega_d, ZERO3
    rates = [_rate_at(history, n - 1 - j, h) for j in range(4, -1, -1)]
    acc = [0.0, 0.0, 0.0]
    for j, coeff in enumerate(_FD5):
        r = rates[j]
        acc[0] += coeff * r[0]
        acc[1] += coeff * r[1]
        acc[2] += coeff * r[2]
    inv = 1.0 / (12.0 * h)
    return omega_d, (acc[0] * inv, acc[1] * inv, acc[2] * inv)


@dataclass(frozen=True)
class AttitudeControlResult:
    torque: Vec3
    q_err: ErrorQuaternion
    z: Vec3
    dz: Vec3
    s: Vec3
    dq_v: Vec3


def attitude_control(
    rotation: Mat3,
    omega: Vec3,
    r_d: Mat3,
    omega_d: Vec3,
    domega_d: Vec3,
    beta_q: tuple[Vec3, Vec3, Vec3],
    dw_est: Vec3,
    cfg: TrackingLoopConfig,
    quad: QuadParams,
) -> AttitudeControlResult:
    """Control torque of the attitude loop (see module docstring)."""
    rt = mat_mul(mat_t(r_d), rotation)
    q = error_quaternion(rt)
    qm = q_matrix(q)
    wd_body = mat_vec(mat_t(rt), omega_d)
    wt = vsub(omega, wd_body)
    dq_v = vscale(mat_vec(qm, wt), 0.5)
    dq_0 = -0.5 * vdot(q.qv, wt)

    b, db, ddb = beta_q
    z = vsub(q.qv, b)
    dz = vsub(dq_v, db)
    s = vadd(dz, vmul(cfg.lam, z))

    # f_q: collected nonlinear terms of the qv error dynamics
    dqm = (
        dq_0, -dq_v[2], dq_v[1],
        dq_v[2], dq_0, -dq_v[0],
        -dq_v[1], dq_v[0], dq_0,
    )
    ine = quad.inertia
    iw = mat_vec(ine, omega)
    gyro = mat_vec(quad.inertia_inv, vcross(omega, iw))
    transport = vcross(wt, wd_body)
    inner = vsub(transport, mat_vec(mat_t(rt), domega_d))
    f_q = vscale(
        vadd(mat_vec(dqm, wt), mat_vec(qm, vsub(inner, gyro))),
        0.5,
    )

    u = (
        -f_q[0] - 0.5 * (qm[0] * dw_est[0] + qm[1] * dw_est[1] + qm[2] * dw_est[2])
        + ddb[0] - cfg.lam[0] * dz[0] - cfg.k[0] * s[0],
        -f_q[1] - 0.5 * (qm[3] * dw_est[0] + qm[4] * dw_est[1] + qm[5] * dw_est[2])
        + ddb[1] - cfg.lam[1] * dz[1] - cfg.k[1] * s[1],
        -f_q[2] - 0.5 * (qm[6] * dw_est[0] + qm[7] * dw_est[1] + qm[8] * dw_est[2])
        + ddb[2] - cfg.lam[2] * dz[2] - cfg.k[2] * s[2],
    )
    torque = vscale(mat_vec(ine, mat_vec(q_matrix_inverse(q), u)), 2.0)
    return AttitudeControlResult(torque=torque, q_err=q, z=z, dz=dz, s=s, dq_v=dq_v)


@dataclass
class TickDiagnostics:
    """Per-tick quantities streamed to the trial log."""

    t_vec: Vec3 = ZERO3
    p_err: Vec3 = ZERO3
    v_err: Vec3 = ZERO3
    z_p: Vec3 = ZERO3
    dz_p: Vec3 = ZERO3
    s_p: Vec3 = ZERO3
    beta_p: Vec3 = ZERO3
    q_err_v: Vec3 = ZERO3
    z_q: Vec3 = ZERO3
    dz_q: Vec3 = ZERO3
    s_q: Vec3 = ZERO3
    beta_q: Vec3 = ZERO3
    dv_est: Vec3 = ZERO3
    dw_est: Vec3 = ZERO3
    omega_d: Vec3 = ZERO3


@dataclass(frozen=True)
class EstimatorOptions:
    """Inner-loop reference shaping knobs shared by the geometric variants.

    ``thrust_shaping_tau`` first-order-filters the commanded force direction
    before the desired rotation is built; without it a step position
    reference would demand an instantaneous large rotation of the thrust
    axis, which no inner loop can track and which can start the attitude
    error outside its envelope.  The filter state starts at hover, so a
    vehicle starting at rest on its setpoint sees an exactly constant
    reference.  ``fd_stride``/``filter_tau`` control the finite-difference
    reconstruction of the desired angular velocity.
    """

    fd_stride: int = 10
    filter_tau: float = 0.04
    thrust_shaping_tau: float = 0.12

    def __post_init__(self) -> None:
        if self.fd_stride < 1:
            raise InvalidParameter("fd_stride must be >= 1")
        if self.filter_tau < 0.0:
            raise InvalidParameter("filter_tau must be non-negative")
        if self.thrust_shaping_tau < 0.0:
            raise InvalidParameter("thrust_shaping_tau must be non-negative")


class FlightController:
    """Prescribed-performance controller and its two ablations.

    ``use_eso`` gates feeding the observer estimates to the control laws (the
    observers always run, so their logs stay comparable across variants);
    ``use_preset`` gates the preset error trajectories, which are built from
    the first measured errors so both sliding vectors start at zero.
    """

    def __init__(
        self,
        quad: QuadParams,
        pos_cfg: TrackingLoopConfig,
        att_cfg: TrackingLoopConfig,
        dt: float,
        use_eso: bool = True,
        use_preset: bool = True,
        options: EstimatorOptions = EstimatorOptions(),
        limits: CommandLimits | None = None,
    ) -> None:
        self.quad = quad
        self.pos_cfg = pos_cfg
        self.att_cfg = att_cfg
        self.dt = dt
        self.use_eso = use_eso
        self.use_preset = use_preset
        self.options = options
        self.limits = limits
        self.pos_eso: EsoTriplet | None = None
        self.att_eso: EsoTriplet | None = None
        self.preset_p: PresetTrajectory | None = None
        self.preset_q: PresetTrajectory | None = None
        self._rd_history: list[Mat3] = []
        self._omega_d: Vec3 = ZERO3
        self._domega_d: Vec3 = ZERO3
        self._omega_d_raw: Vec3 = ZERO3
        self._domega_d_raw: Vec3 = ZERO3
        self._t_shaped: Vec3 = (0.0, 0.0, quad.mass_total * quad.g)
        self._tick = 0

    # -- preset construction -------------------------------------------------

    def _build_preset(
        self, cfg: TrackingLoopConfig, xi0: Vec3, xi_dot0: Vec3, label: str
    ) -> PresetTrajectory:
        preset = PresetTrajectory.from_initial_error(xi0, xi_dot0, cfg.envelope.l, cfg.c)
        cfg.margin.check_against(cfg.envelope, xi0)
        lemma = validate_c(preset, cfg.envelope, cfg.margin)
        theorem = validate_c(preset, cfg.envelope, cfg.margin, cfg.delta_over_gain())
        if not lemma.ok or not theorem.ok:
            bad = sorted(set(lemma.violations) | set(theorem.violations))
            raise ConfigInvalid(
                f"{label} preset shaping c too small on axes {bad}: "
                f"c={preset.c}, lemma bound={lemma.c_min}, theorem bound={theorem.c_min}"
            )
        return preset

    # -- desired-rate reconstruction -----------------------------------------

    def _update_desired_rate(self, r_d: Mat3) -> None:
        opts = self.options
        if self._tick % opts.fd_stride == 0:
            self._rd_history.append(r_d)
            if len(self._rd_history) > 9:
                del self._rd_history[0]
            if len(self._rd_history) >= 5:
                self._omega_d_raw, self._domega_d_raw = desired_angular_velocity(
                    self._rd_history, opts.fd_stride * self.dt
                )
        if opts.filter_tau == 0.0:
            self._omega_d = self._omega_d_raw
            self._domega_d = self._domega_d_raw
        else:
            a = self.dt / (opts.filter_tau + self.dt)
            wd, wr = self._omega_d, self._omega_d_raw
            self._omega_d = (
                wd[0] + a * (wr[0] - wd[0]),
                wd[1] + a * (wr[1] - wd[1]),
                wd[2] + a * (wr[2] - wd[2]),
            )
            ad, ar = self._domega_d, self._domega_d_raw
            self._domega_d = (
                ad[0] + a * (ar[0] - ad[0]),
                ad[1] + a * (ar[1] - ad[1]),
                ad[2] + a * (ar[2] - ad[2]),
            )

    # -- main step -----------------------------------------------------------

    def step(
        self, t: float, meas: RigidBodyState, ref: ReferenceSignal
    ) -> tuple[ControlCommand, TickDiagnostics]:
        quad = self.quad
        dt = self.dt
        first = self._tick == 0
        if first:
            self.pos_eso = EsoTriplet.start(self.pos_cfg.eso, meas.v)
            self.att_eso = EsoTriplet.start(self.att_cfg.eso, meas.omega)

        p_err = vsub(meas.p, ref.p_d)
        v_err = vsub(meas.v, ref.dp_d)
        if first and self.use_preset:
            self.preset_p = self._build_preset(self.pos_cfg, p_err, v_err, "position")
        beta_p = (
            beta_at(self.preset_p, t) if self.preset_p is not None else ZERO_TRIPLE
        )

        dv_used = self.pos_eso.estimate if self.use_eso else ZERO3
        pos = position_control(p_err, v_err, ref.ddp_d, beta_p, dv_used, self.pos_cfg, quad)
        tau_s = self.options.thrust_shaping_tau
        if tau_s > 0.0:
            a = dt / (tau_s + dt)
            ts = self._t_shaped
            tv = pos.t_vec
            self._t_shaped = (
                ts[0] + a * (tv[0] - ts[0]),
                ts[1] + a * (tv[1] - ts[1]),
                ts[2] + a * (tv[2] - ts[2]),
            )
            r_d = desired_attitude(self._t_shaped, ref.psi_d)
        else:
            r_d = desired_attitude(pos.t_vec, ref.psi_d)
        self._update_desired_rate(r_d)

        if first and self.use_preset:
            rt0 = mat_mul(mat_t(r_d), meas.R)
            q0 = error_quaternion(rt0)
            wt0 = vsub(meas.omega, mat_vec(mat_t(rt0), self._omega_d))
            dqv0 = vscale(mat_vec(q_matrix(q0), wt0), 0.5)
            self.preset_q = self._build_preset(self.att_cfg, q0.qv, dqv0, "attitude")
        beta_q = (
            beta_at(self.preset_q, t) if self.preset_q is not None else ZERO_TRIPLE
        )

        dw_used = self.att_eso.estimate if self.use_eso else ZERO3
        att = attitude_control(
            meas.R, meas.omega, r_d, self._omega_d, self._domega_d,
            beta_q, dw_used, self.att_cfg, quad,
        )
        cmd = ControlCommand(thrust=pos.thrust, torque=att.torque)
        if self.limits is not None:
            cmd = self.limits.apply(cmd)

        # observers advance with the compact-form inputs of the applied command
        tm = cmd.thrust / quad.mass_total
        rn = mat_vec(meas.R, quad.n)
        u_v = (
            quad.g * quad.n[0] - tm * rn[0],
            quad.g * quad.n[1] - tm * rn[1],
            quad.g * quad.n[2] - tm * rn[2],
        )
        iw = mat_vec(quad.inertia, meas.omega)
        u_w = mat_vec(
            quad.inertia_inv, vsub(cmd.torque, vcross(meas.omega, iw))
        )
        position_eso_step(self.pos_eso, meas.v, u_v, dt)
        attitude_eso_step(self.att_eso, meas.omega, u_w, dt)

        diag = TickDiagnostics(
            t_vec=pos.t_vec,
            p_err=p_err,
            v_err=v_err,
            z_p=pos.z,
            dz_p=pos.dz,
            s_p=pos.s,
            beta_p=beta_p[0],
            q_err_v=att.q_err.qv,
            z_q=att.z,
            dz_q=att.dz,
            s_q=att.s,
            beta_q=beta_q[0],
            dv_est=self.pos_eso.estimate,
            dw_est=self.att_eso.estimate,
            omega_d=self._omega_d,
        )
        self._tick += 1
        return cmd, diag


# ---------------------------------------------------------------------------
# Cascaded PID baseline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PidGains:
    """Generic position-P / velocity-PID / attitude-P / rate-PID cascade."""

    pos_p: float = 1.5
    vel_p: float = 4.0
    vel_i: float = 1.0
    vel_d: float = 0.0
    att_p: float = 7.0
    rate_p: float = 14.0
    rate_i: float = 6.0
    rate_d: float = 0.0
    vel_int_limit: float = 3.0
    rate_int_limit: float = 3.0


class PidController:
    """Stand-in for a stock cascaded flight stack: no coupling compensation,
    no error-trajectory shaping, velocity feed-forward only."""

    def __init__(
        self,
        quad: QuadParams,
        gains: PidGains,
        dt: float,
        limits: CommandLimits | None = None,
    ) -> None:
        self.quad = quad
        self.g = gains
        self.dt = dt
        self.limits = limits
        self._vel_int: Vec3 = ZERO3
        self._rate_int: Vec3 = ZERO3
        self._prev_vel_err: Vec3 | None = None
        self._prev_rate_err: Vec3 | None = None

    @staticmethod
    def _clampv(v: Vec3, lim: float) -> Vec3:
        return (
            min(lim, max(-lim, v[0])),
            min(lim, max(-lim, v[1])),
            min(lim, max(-lim, v[2])),
        )

    def step(
        self, t: float, meas: RigidBodyState, ref: ReferenceSignal
    ) -> tuple[ControlCommand, TickDiagnostics]:
        g = self.g
        quad = self.quad
        dt = self.dt
        p_err = vsub(meas.p, ref.p_d)
        vel_sp = vadd(vscale(p_err, -g.pos_p), ref.dp_d)
        e_v = vsub(vel_sp, meas.v)
        self._vel_int = self._clampv(
            vadd(self._vel_int, vscale(e_v, dt)), g.vel_int_limit
        )
        de_v = (
            vscale(vsub(e_v, self._prev_vel_err), 1.0 / dt)
            if (g.vel_d != 0.0 and self._prev_vel_err is not None)
            else ZERO3
        )
        self._prev_vel_err = e_v
        acc_sp = vadd(
            vadd(vscale(e_v, g.vel_p), vscale(self._vel_int, g.vel_i)),
            vscale(de_v, g.vel_d),
        )
        m = quad.mass_total
        t_vec = (
            m * (quad.g * quad.n[0] - acc_sp[0]),
            m * (quad.g * quad.n[1] - acc_sp[1]),
            m * (quad.g * quad.n[2] - acc_sp[2]),
        )
        r_d = desired_attitude(t_vec, ref.psi_d)
        rt = mat_mul(mat_t(r_d), meas.R)
        e_att = vee(skew_part(rt))
        rate_sp = vscale(e_att, -g.att_p)
        e_w = vsub(rate_sp, meas.omega)
        self._rate_int = self._clampv(
            vadd(self._rate_int, vscale(e_w, dt)), g.rate_int_limit
        )
        de_w = (
            vscale(vsub(e_w, self._prev_rate_err), 1.0 / dt)
            if (g.rate_d != 0.0 and self._prev_rate_err is not None)
            else ZERO3
        )
        self._prev_rate_err = e_w
        pid = vadd(
            vadd(vscale(e_w, g.rate_p), vscale(self._rate_int, g.rate_i)),
            vscale(de_w, g.rate_d),
        )
        torque = mat_vec(quad.inertia, pid)
        cmd = ControlCommand(thrust=vnorm(t_vec), torque=torque)
        if self.limits is not None:
            cmd = self.limits.apply(cmd)
        diag = TickDiagnostics(
            t_vec=t_vec,
            p_err=p_err,
            v_err=vsub(meas.v, ref.dp_d),
            q_err_v=rotation_to_quaternion(rt).qv,
        )
        return cmd, diag


Controller = FlightController | PidController


def build_controller(
    variant: ControllerVariant,
    quad: QuadParams,
    pos_cfg: TrackingLoopConfig,
    att_cfg: TrackingLoopConfig,
    pid_gains: PidGains,
    dt: float,
    options: EstimatorOptions = EstimatorOptions(),
    limits: CommandLimits | None = None,
) -> Controller:
    """One controller instance per trial; exactly one variant active."""
    if variant == ControllerVariant.PID:
        return PidController(quad, pid_gains, dt, limits=limits)
    return FlightController(
        quad,
        pos_cfg,
        att_cfg,
        dt,
        use_eso=variant != ControllerVariant.NO_ESO,
        use_preset=variant != ControllerVariant.NO_PRESET,
        options=options,
        limits=limits,
    )
