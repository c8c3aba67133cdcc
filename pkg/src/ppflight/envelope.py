"""Performance envelopes and preset error trajectories.

The envelope is the symmetric time-varying bound

    rho_i(t) = (rho0_i - rho_inf_i) exp(-l t) + rho_inf_i,

and the preset error trajectory for an initial error ``xi0`` with initial
error rate ``xi_dot0`` is, per axis,

    beta_i(t) = beta_i(0) exp(-l t) + (b_i / c_i)(1 - exp(-c_i t)) exp(-l t),

with ``beta_i(0) = xi0_i`` and ``b_i = l xi0_i + xi_dot0_i``, so that
``beta(0) = xi0`` and ``dbeta(0) = xi_dot0`` hold as algebraic identities.
First and second time derivatives are implemented in closed form because the
control laws consume ``ddbeta`` every tick; differencing inside the loop
would inject noise.

Evaluation of the first derivative is arranged as

    dbeta_i(t) = E [ xi_dot0_i F - (1 - F)(l beta_i(0) + l b_i / c_i) ],

with ``E = exp(-l t)`` and ``F = exp(-c_i t)``, which is algebraically equal
to the direct differentiation but returns ``xi_dot0`` bitwise at ``t = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InfeasibleEnvelope, InvalidParameter, NegativeTime
from .so3 import Vec3


@dataclass(frozen=True)
class PerformanceEnvelope:
    """Per-axis decaying error bound rho(t), rho0 -> rho_inf at rate l."""

    rho0: Vec3
    rho_inf: Vec3
    l: float

    def __post_init__(self) -> None:
        if self.l <= 0.0:
            raise InvalidParameter("decay rate l must be positive")
        for i in range(3):
            if not (self.rho0[i] > self.rho_inf[i] > 0.0):
                raise InvalidParameter(
                    f"axis {i}: need rho0 > rho_inf > 0, got "
                    f"{self.rho0[i]} / {self.rho_inf[i]}"
                )


def rho_at(env: PerformanceEnvelope, t: float) -> Vec3:
    """Envelope upper bound at time t (strictly decreasing toward rho_inf)."""
    if t < 0.0:
        raise NegativeTime(f"t = {t}")
    e = math.exp(-env.l * t)
    return (
        (env.rho0[0] - env.rho_inf[0]) * e + env.rho_inf[0],
        (env.rho0[1] - env.rho_inf[1]) * e + env.rho_inf[1],
        (env.rho0[2] - env.rho_inf[2]) * e + env.rho_inf[2],
    )


def rho_rate_at(env: PerformanceEnvelope, t: float) -> Vec3:
    """Analytic d(rho)/dt."""
    if t < 0.0:
        raise NegativeTime(f"t = {t}")
    e = -env.l * math.exp(-env.l * t)
    return (
        (env.rho0[0] - env.rho_inf[0]) * e,
        (env.rho0[1] - env.rho_inf[1]) * e,
        (env.rho0[2] - env.rho_inf[2]) * e,
    )


@dataclass(frozen=True)
class MarginConstants:
    """Per-axis clearance between the preset trajectory and the envelope.

    Named distinctly from the observer tuning parameter that shares its
    symbol elsewhere; the two are unrelated quantities.
    """

    epsilon: Vec3

    def __post_init__(self) -> None:
        if any(e <= 0.0 for e in self.epsilon):
            raise InvalidParameter("margins must be positive")

    def check_against(self, env: PerformanceEnvelope, xi0: Vec3) -> None:
        """Require eps_i < min(rho_inf_i, rho0_i - |xi0_i|) on every axis."""
        for i in range(3):
            limit = min(env.rho_inf[i], env.rho0[i] - abs(xi0[i]))
            if self.epsilon[i] >= limit:
                raise InfeasibleEnvelope(
                    f"axis {i}: margin {self.epsilon[i]} >= {limit}"
                )


@dataclass(frozen=True)
class PresetTrajectory:
    """Smooth error reference decaying inside the envelope.

    Built from the measured initial error and error rate via
    :meth:`from_initial_error`; ``b = l * beta0 + xi_dot0``.
    """

    beta0: Vec3
    xi_dot0: Vec3
    b: Vec3
    c: Vec3
    l: float

    def __post_init__(self) -> None:
        if self.l <= 0.0:
            raise InvalidParameter("decay rate l must be positive")
        if any(ci <= 0.0 for ci in self.c):
            raise InvalidParameter("shaping constants c must be positive")

    @classmethod
    def from_initial_error(
        cls, xi0: Vec3, xi_dot0: Vec3, l: float, c: Vec3
    ) -> "PresetTrajectory":
        b = (
            l * xi0[0] + xi_dot0[0],
            l * xi0[1] + xi_dot0[1],
            l * xi0[2] + xi_dot0[2],
        )
        return cls(beta0=xi0, xi_dot0=xi_dot0, b=b, c=c, l=l)


def beta_at(traj: PresetTrajectory, t: float) -> tuple[Vec3, Vec3, Vec3]:
    """(beta, dbeta, ddbeta) at time t, all in closed form."""
    if t < 0.0:
        raise NegativeTime(f"t = {t}")
    l = traj.l
    e = math.exp(-l * t)
    beta = [0.0, 0.0, 0.0]
    dbeta = [0.0, 0.0, 0.0]
    ddbeta = [0.0, 0.0, 0.0]
    for i in range(3):
        b0 = traj.beta0[i]
        b = traj.b[i]
        c = traj.c[i]
        f = math.exp(-c * t)
        one_mf = 1.0 - f
        bl_over_c = b * l / c
        beta[i] = b0 * e + (b / c) * one_mf * e
        dbeta[i] = e * (traj.xi_dot0[i] * f - one_mf * (l * b0 + bl_over_c))
        ddbeta[i] = e * (
            l * l * b0 + bl_over_c * l * one_mf - (c + 2.0 * l) * b * f
        )
    return (tuple(beta), tuple(dbeta), tuple(ddbeta))  # type: ignore[return-value]


def c_lower_bound(
    traj: PresetTrajectory, env: PerformanceEnvelope, margin: Vec3
) -> Vec3:
    """Per-axis minimum admissible shaping constant |b_i| / (rho0_i - |beta0_i| - m_i).

    ``margin`` is either the design clearance (:class:`MarginConstants`) or
    the disturbance-over-gain quantity ``delta_f / (Lambda_ii * lambda_min(K))``
    when validating the tracking-theorem conditions.  Raises
    :class:`InfeasibleEnvelope` when an axis has no room at all.
    """
    out = [0.0, 0.0, 0.0]
    for i in range(3):
        denom = env.rho0[i] - abs(traj.beta0[i]) - margin[i]
        if denom <= 0.0:
            raise InfeasibleEnvelope(
                f"axis {i}: rho0 - |xi0| - margin = {denom} <= 0"
            )
        out[i] = abs(traj.b[i]) / denom
    return tuple(out)  # type: ignore[return-value]


@dataclass(frozen=True)
class CValidation:
    """Result of checking configured c against its per-axis lower bound."""

    c_min: Vec3
    ok: bool
    violations: tuple[int, ...]


def validate_c(
    traj: PresetTrajectory,
    env: PerformanceEnvelope,
    margins: MarginConstants,
    delta_over_gain: Vec3 | None = None,
) -> CValidation:
    """Check c_i > c_i^min; the optional ``delta_over_gain`` swaps the margin
    for the theorem-condition variant."""
    margin = delta_over_gain if delta_over_gain is not None else margins.epsilon
    c_min = c_lower_bound(traj, env, margin)
    bad = tuple(i for i in range(3) if traj.c[i] <= c_min[i])
    return CValidation(c_min=c_min, ok=not bad, violations=bad)


@dataclass(frozen=True)
class ContainmentReport:
    ok: bool
    t_violation: float | None = None
    axis: int | None = None
    beta_abs: float | None = None
    bound: float | None = None


def containment_check(
    traj: PresetTrajectory,
    env: PerformanceEnvelope,
    margins: MarginConstants,
    horizon: float | None = None,
    dt: float = 1e-3,
) -> ContainmentReport:
    """Grid check of |beta_i(t)| < rho_i(t) - eps_i.

    Default horizon is 5/l (five envelope time constants); the grid spacing
    matches the 1 kHz control rate.  Returns the first violating sample when
    containment fails.
    """
    t_end = horizon if horizon is not None else 5.0 / traj.l
    n = int(math.ceil(t_end / dt)) + 1
    eps = margins.epsilon
    for k in range(n):
        t = min(k * dt, t_end)
        beta, _, _ = beta_at(traj, t)
        rho = rho_at(env, t)
        for i in range(3):
            if abs(beta[i]) >= rho[i] - eps[i]:
                return ContainmentReport(
                    ok=False,
                    t_violation=t,
                    axis=i,
                    beta_abs=abs(beta[i]),
                    bound=rho[i] - eps[i],
                )
    return ContainmentReport(ok=True)
