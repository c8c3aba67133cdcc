"""Reference trajectories, initial states, and the scenario catalog."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arm import ArmTrajectoryProfile, ExternalForceEvent
from .controllers import ReferenceSignal
from .dynamics import RigidBodyState
from .errors import InvalidParameter
from .so3 import Vec3, rotation_from_yaw

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SetpointReference:
    """Constant target position and yaw."""

    target: Vec3
    psi: float = 0.0

    def at(self, t: float) -> ReferenceSignal:
        return ReferenceSignal(self.target, (0.0, 0.0, 0.0), (0.0, 0.0, 0.0), self.psi, 0.0)


@dataclass(frozen=True)
class CircleReference:
    """Horizontal circle traversed once per period, constant altitude/yaw."""

    center: Vec3
    radius: float
    period: float
    psi: float = 0.0

    def at(self, t: float) -> ReferenceSignal:
        w = _TWO_PI / self.period
        a = w * t
        c, s = math.cos(a), math.sin(a)
        r = self.radius
        p = (self.center[0] + r * c, self.center[1] + r * s, self.center[2])
        v = (-r * w * s, r * w * c, 0.0)
        acc = (-r * w * w * c, -r * w * w * s, 0.0)
        return ReferenceSignal(p, v, acc, self.psi, 0.0)


@dataclass(frozen=True)
class FigureEightReference:
    """Lemniscate x = ax sin(4 pi t / T), y = ay sin(2 pi t / T) about a center."""

    center: Vec3
    amp_x: float = 0.65
    amp_y: float = 1.3
    period: float = 16.0
    psi: float = 0.0

    def at(self, t: float) -> ReferenceSignal:
        wx = 2.0 * _TWO_PI / self.period
        wy = _TWO_PI / self.period
        sx, cx = math.sin(wx * t), math.cos(wx * t)
        sy, cy = math.sin(wy * t), math.cos(wy * t)
        p = (self.center[0] + self.amp_x * sx, self.center[1] + self.amp_y * sy, self.center[2])
        v = (self.amp_x * wx * cx, self.amp_y * wy * cy, 0.0)
        acc = (-self.amp_x * wx * wx * sx, -self.amp_y * wy * wy * sy, 0.0)
        return ReferenceSignal(p, v, acc, self.psi, 0.0)


ReferenceGenerator = SetpointReference | CircleReference | FigureEightReference


@dataclass(frozen=True)
class InitialState:
    position: Vec3
    velocity: Vec3 = (0.0, 0.0, 0.0)
    yaw: float = 0.0
    omega: Vec3 = (0.0, 0.0, 0.0)

    def to_state(self) -> RigidBodyState:
        r = rotation_from_yaw(self.yaw) if self.yaw != 0.0 else (
            1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0,
        )
        return RigidBodyState(p=self.position, v=self.velocity, R=r, omega=self.omega)


@dataclass(frozen=True)
class Scenario:
    """One benchmark task: reference, initial state, arm motion, force events."""

    name: str
    reference: ReferenceGenerator
    duration: float
    initial: InitialState
    arm_profile: ArmTrajectoryProfile | None = None
    events: tuple[ExternalForceEvent, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.duration <= 0.0:
            raise InvalidParameter("duration must be positive")
