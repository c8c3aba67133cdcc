"""Variable-gain extended state observers.

Each scalar unit estimates the unknown additive term ``D`` of a first-order
channel ``dy1/dt = D + u`` from the measured output ``y1`` and the known
input ``u``.  The observer integrates an internal auxiliary state ``h``:

    dh/dt = alpha * g(e) / epsilon + u,      e = y1 - h,
    estimate = alpha * g(e) / epsilon,

with the nonlinear gain

    g(e) = e * (exp(e) + exp(-e)) / (w * (exp(e) + exp(-e)) + d).

``g`` is odd, bounded by ``|e| / w``, with slope ``2 / (2 w + d)`` at the
origin: small innovations see a low gain (noise rejection), large ones a
high gain (fast reconvergence).  Shrinking ``epsilon`` in (0, 1) tightens
the steady estimation error at the cost of noise sensitivity.

The observer is a discrete-time filter co-located with the controller, so
``h`` advances with explicit Euler at the control rate.  After the step the
estimate is recomputed from the post-step innovation and latched; callers
consume the latched value on the following tick.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidParameter, NonFiniteState
from .so3 import Vec3

#: beyond this |e| the cosh term is clamped; the neglected d/S correction is
#: below 1e-12 relative while exp alone would overflow near e = 710.
_GAIN_CLAMP = 700.0


@dataclass(frozen=True)
class GainFunctionParams:
    """Shape constants of the nonlinear gain: floor lifts with d, ceiling with 1/w."""

    w: float
    d: float

    def __post_init__(self) -> None:
        if self.w <= 0.0 or self.d <= 0.0:
            raise InvalidParameter("gain constants w, d must be positive")


def gain_g(e: float, params: GainFunctionParams) -> float:
    """Odd variable gain, overflow-safe for arbitrarily large |e|.

    Evaluated as ``e / (w + d / S)`` with ``S = 2 cosh(min(|e|, 700))``; the
    rearrangement avoids the exp overflow of the textbook form while agreeing
    with it to rounding for all representable inputs.
    """
    s = 2.0 * math.cosh(min(abs(e), _GAIN_CLAMP))
    return e / (params.w + params.d / s)


@dataclass(frozen=True)
class EsoUnitConfig:
    alpha: float
    epsilon: float
    gain: GainFunctionParams

    def __post_init__(self) -> None:
        if self.alpha <= 0.0:
            raise InvalidParameter("alpha must be positive")
        if not 0.0 < self.epsilon < 1.0:
            raise InvalidParameter("epsilon must lie in (0, 1)")


@dataclass
class VariableGainEsoUnit:
    """Scalar observer state; start with ``h(0)`` equal to the first measurement."""

    config: EsoUnitConfig
    h: float
    last_estimate: float = 0.0

    @classmethod
    def start(cls, config: EsoUnitConfig, y0: float) -> "VariableGainEsoUnit":
        # h(0) = y1(0) makes the innovation, and hence the estimate, exactly 0.
        return cls(config=config, h=float(y0), last_estimate=0.0)

    def step(self, y1: float, u: float, dt: float) -> float:
        """Advance h by one Euler step, relatch the estimate from the post-step
        innovation, and return it."""
        cfg = self.config
        scale = cfg.alpha / cfg.epsilon
        e = y1 - self.h
        self.h += dt * (scale * gain_g(e, cfg.gain) + u)
        if not math.isfinite(self.h):
            raise NonFiniteState("observer auxiliary state diverged")
        self.last_estimate = scale * gain_g(y1 - self.h, cfg.gain)
        return self.last_estimate


@dataclass
class EsoTriplet:
    """Three independent scalar units, one per axis."""

    units: tuple[VariableGainEsoUnit, VariableGainEsoUnit, VariableGainEsoUnit]

    @classmethod
    def start(
        cls, configs: tuple[EsoUnitConfig, EsoUnitConfig, EsoUnitConfig], y0: Vec3
    ) -> "EsoTriplet":
        return cls(
            units=(
                VariableGainEsoUnit.start(configs[0], y0[0]),
                VariableGainEsoUnit.start(configs[1], y0[1]),
                VariableGainEsoUnit.start(configs[2], y0[2]),
            )
        )

    @property
    def estimate(self) -> Vec3:
        u = self.units
        return (u[0].last_estimate, u[1].last_estimate, u[2].last_estimate)

    def step(self, y1: Vec3, u: Vec3, dt: float) -> Vec3:
        us = self.units
        return (
            us[0].step(y1[0], u[0], dt),
            us[1].step(y1[1], u[1], dt),
            us[2].step(y1[2], u[2], dt),
        )


def position_eso_step(trip: EsoTriplet, v: Vec3, u_v: Vec3, dt: float) -> Vec3:
    """Per-axis update against the measured velocity.

    ``u_v`` is the known specific-force input of the translational channel,
    ``g n - T R n / (m_B + m_R)`` evaluated with the measured attitude; the
    returned vector estimates the coupling acceleration.
    """
    return trip.step(v, u_v, dt)


def attitude_eso_step(trip: EsoTriplet, omega: Vec3, u_omega: Vec3, dt: float) -> Vec3:
    """Per-axis update against the measured body rate.

    ``u_omega = I^-1 (tau - omega x I omega)``; the returned vector estimates
    the coupling angular acceleration.
    """
    return trip.step(omega, u_omega, dt)
