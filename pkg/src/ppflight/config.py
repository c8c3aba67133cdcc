"""Experiment configuration: typed tree, YAML (de)serialization, validation.

The file format is nested key/value YAML with units spelled out in key names
(``k_per_s``, ``rho_inf_m``, ...) and a ``schema_version`` gate.  Parsing is
strict: unknown keys are rejected so typos fail loudly.  ``to_dict`` /
``from_dict`` round-trip exactly, which the harness relies on for config
hashing and provenance.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import yaml

from .arm import ArmTrajectoryProfile, ExternalForceEvent, JointWave, LumpedArmParams
from .controllers import EstimatorOptions, PidGains, TrackingLoopConfig
from .dynamics import NoiseConfig, QuadParams
from .envelope import MarginConstants, PerformanceEnvelope, PresetTrajectory, validate_c
from .errors import ConfigInvalid, PpflightError
from .eso import EsoUnitConfig, GainFunctionParams
from .scenarios import (
    CircleReference,
    FigureEightReference,
    InitialState,
    ReferenceGenerator,
    Scenario,
    SetpointReference,
)
from .so3 import Vec3, diag3

SCHEMA_VERSION = 1


def _vec(x) -> Vec3:
    if len(x) != 3:
        raise ConfigInvalid(f"expected 3 components, got {x!r}")
    return (float(x[0]), float(x[1]), float(x[2]))


def _check_keys(d: dict, allowed: set[str], where: str) -> None:
    unknown = set(d) - allowed
    if unknown:
        raise ConfigInvalid(f"unknown keys in {where}: {sorted(unknown)}")


@dataclass(frozen=True)
class PhysicsConfig:
    m_b: float = 5.40
    m_r: float = 2.32
    inertia_diag: Vec3 = (0.22, 0.22, 0.38)
    gravity: float = 9.81
    dt: float = 1e-3
    thrust_limit: float = 0.0  # 0 disables saturation
    torque_limit: float = 0.0

    def quad_params(self) -> QuadParams:
        return QuadParams(
            m_b=self.m_b, m_r=self.m_r, inertia=diag3(self.inertia_diag), g=self.gravity
        )

    def to_dict(self) -> dict:
        return {
            "m_b_kg": self.m_b,
            "m_r_kg": self.m_r,
            "inertia_diag_kg_m2": list(self.inertia_diag),
            "gravity_m_s2": self.gravity,
            "dt_s": self.dt,
            "thrust_limit_n": self.thrust_limit,
            "torque_limit_n_m": self.torque_limit,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PhysicsConfig":
        _check_keys(d, set(cls().to_dict()), "physics")
        base = cls()
        return cls(
            m_b=float(d.get("m_b_kg", base.m_b)),
            m_r=float(d.get("m_r_kg", base.m_r)),
            inertia_diag=_vec(d.get("inertia_diag_kg_m2", base.inertia_diag)),
            gravity=float(d.get("gravity_m_s2", base.gravity)),
            dt=float(d.get("dt_s", base.dt)),
            thrust_limit=float(d.get("thrust_limit_n", base.thrust_limit)),
            torque_limit=float(d.get("torque_limit_n_m", base.torque_limit)),
        )


@dataclass(frozen=True)
class LoopSettings:
    """Serializable form of one prescribed-performance loop."""

    k: Vec3
    lam: Vec3
    rho0: Vec3
    rho_inf: Vec3
    decay_l: float
    c: Vec3
    margin: Vec3
    assumed_delta_f: float
    eso_alpha: Vec3
    eso_epsilon: Vec3
    gain_w: float = 0.5
    gain_d: float = 5.0

    def eso_configs(self) -> tuple[EsoUnitConfig, EsoUnitConfig, EsoUnitConfig]:
        gain = GainFunctionParams(w=self.gain_w, d=self.gain_d)
        return tuple(
            EsoUnitConfig(alpha=self.eso_alpha[i], epsilon=self.eso_epsilon[i], gain=gain)
            for i in range(3)
        )  # type: ignore[return-value]

    def loop_config(self) -> TrackingLoopConfig:
        return TrackingLoopConfig(
            lam=self.lam,
            k=self.k,
            envelope=PerformanceEnvelope(rho0=self.rho0, rho_inf=self.rho_inf, l=self.decay_l),
            c=self.c,
            margin=MarginConstants(epsilon=self.margin),
            eso=self.eso_configs(),
            assumed_delta_f=self.assumed_delta_f,
        )

    def to_dict(self) -> dict:
        return {
            "k": list(self.k),
            "lambda": list(self.lam),
            "rho0": list(self.rho0),
            "rho_inf": list(self.rho_inf),
            "decay_l_per_s": self.decay_l,
            "c_shape": list(self.c),
            "margin": list(self.margin),
            "assumed_delta_f": self.assumed_delta_f,
            "eso_alpha_per_s": list(self.eso_alpha),
            "eso_epsilon": list(self.eso_epsilon),
            "eso_gain_w": self.gain_w,
            "eso_gain_d": self.gain_d,
        }

    @classmethod
    def from_dict(cls, d: dict, where: str) -> "LoopSettings":
        allowed = {
            "k", "lambda", "rho0", "rho_inf", "decay_l_per_s", "c_shape",
            "margin", "assumed_delta_f", "eso_alpha_per_s", "eso_epsilon",
            "eso_gain_w", "eso_gain_d",
        }
        _check_keys(d, allowed, where)
        try:
            return cls(
                k=_vec(d["k"]),
                lam=_vec(d["lambda"]),
                rho0=_vec(d["rho0"]),
                rho_inf=_vec(d["rho_inf"]),
                decay_l=float(d["decay_l_per_s"]),
                c=_vec(d["c_shape"]),
                margin=_vec(d["margin"]),
                assumed_delta_f=float(d["assumed_delta_f"]),
                eso_alpha=_vec(d["eso_alpha_per_s"]),
                eso_epsilon=_vec(d["eso_epsilon"]),
                gain_w=float(d.get("eso_gain_w", 0.5)),
                gain_d=float(d.get("eso_gain_d", 5.0)),
            )
        except KeyError as exc:
            raise ConfigInvalid(f"{where}: missing key {exc}") from exc


@dataclass(frozen=True)
class ArmSettings:
    point_mass: float
    mount_offset: Vec3
    link_lengths: tuple[float, float]
    servo_tau: float
    joints: tuple[JointWave, ...]

    def profile(self) -> ArmTrajectoryProfile:
        return ArmTrajectoryProfile(joints=self.joints, servo_tau=self.servo_tau)

    def lumped(self) -> LumpedArmParams:
        return LumpedArmParams(
            point_mass=self.point_mass,
            mount_offset=self.mount_offset,
            link_lengths=self.link_lengths,
        )

    def to_dict(self) -> dict:
        return {
            "point_mass_kg": self.point_mass,
            "mount_offset_m": list(self.mount_offset),
            "link_lengths_m": list(self.link_lengths),
            "servo_tau_s": self.servo_tau,
            "joints": [
                {
                    "amplitude_rad": j.amplitude,
                    "frequency_hz": j.frequency_hz,
                    "phase_rad": j.phase,
                    "offset_rad": j.offset,
                }
                for j in self.joints
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ArmSettings":
        allowed = {"point_mass_kg", "mount_offset_m", "link_lengths_m", "servo_tau_s", "joints"}
        _check_keys(d, allowed, "arm")
        joints = []
        for i, j in enumerate(d["joints"]):
            _check_keys(
                j, {"amplitude_rad", "frequency_hz", "phase_rad", "offset_rad"},
                f"arm.joints[{i}]",
            )
            joints.append(
                JointWave(
                    amplitude=float(j.get("amplitude_rad", 0.0)),
                    frequency_hz=float(j.get("frequency_hz", 0.0)),
                    phase=float(j.get("phase_rad", 0.0)),
                    offset=float(j.get("offset_rad", 0.0)),
                )
            )
        lengths = d["link_lengths_m"]
        return cls(
            point_mass=float(d["point_mass_kg"]),
            mount_offset=_vec(d["mount_offset_m"]),
            link_lengths=(float(lengths[0]), float(lengths[1])),
            servo_tau=float(d["servo_tau_s"]),
            joints=tuple(joints),
        )


def _reference_to_dict(ref: ReferenceGenerator) -> dict:
    if isinstance(ref, SetpointReference):
        return {"type": "setpoint", "target_m": list(ref.target), "yaw_rad": ref.psi}
    if isinstance(ref, CircleReference):
        return {
            "type": "circle",
            "center_m": list(ref.center),
            "radius_m": ref.radius,
            "period_s": ref.period,
            "yaw_rad": ref.psi,
        }
    if isinstance(ref, FigureEightReference):
        return {
            "type": "figure_eight",
            "center_m": list(ref.center),
            "amp_x_m": ref.amp_x,
            "amp_y_m": ref.amp_y,
            "period_s": ref.period,
            "yaw_rad": ref.psi,
        }
    raise ConfigInvalid(f"unknown reference generator {type(ref).__name__}")


def _reference_from_dict(d: dict, where: str) -> ReferenceGenerator:
    kind = d.get("type")
    if kind == "setpoint":
        _check_keys(d, {"type", "target_m", "yaw_rad"}, where)
        return SetpointReference(target=_vec(d["target_m"]), psi=float(d.get("yaw_rad", 0.0)))
    if kind == "circle":
        _check_keys(d, {"type", "center_m", "radius_m", "period_s", "yaw_rad"}, where)
        return CircleReference(
            center=_vec(d["center_m"]),
            radius=float(d["radius_m"]),
            period=float(d["period_s"]),
            psi=float(d.get("yaw_rad", 0.0)),
        )
    if kind == "figure_eight":
        _check_keys(
            d, {"type", "center_m", "amp_x_m", "amp_y_m", "period_s", "yaw_rad"}, where
        )
        return FigureEightReference(
            center=_vec(d["center_m"]),
            amp_x=float(d.get("amp_x_m", 0.65)),
            amp_y=float(d.get("amp_y_m", 1.3)),
            period=float(d.get("period_s", 16.0)),
            psi=float(d.get("yaw_rad", 0.0)),
        )
    raise ConfigInvalid(f"{where}: unknown reference type {kind!r}")


@dataclass(frozen=True)
class ScenarioSettings:
    reference: ReferenceGenerator
    duration: float
    initial: InitialState
    use_arm: bool = False
    events: tuple[ExternalForceEvent, ...] = field(default_factory=tuple)
    position_eso_alpha: Vec3 | None = None
    position_eso_epsilon: Vec3 | None = None
    attitude_eso_alpha: Vec3 | None = None
    attitude_eso_epsilon: Vec3 | None = None

    def to_dict(self) -> dict:
        d: dict = {
            "reference": _reference_to_dict(self.reference),
            "duration_s": self.duration,
            "initial": {
                "position_m": list(self.initial.position),
                "velocity_m_s": list(self.initial.velocity),
                "yaw_rad": self.initial.yaw,
            },
            "use_arm": self.use_arm,
        }
        if self.events:
            d["events"] = [
                {
                    "t_start_s": e.t_start,
                    "t_stop_s": e.t_stop,
                    "force_n": list(e.force),
                    "point_m": list(e.point),
                    "ramp_s": e.ramp,
                }
                for e in self.events
            ]
        if self.position_eso_alpha is not None:
            d["position_eso_alpha_per_s"] = list(self.position_eso_alpha)
        if self.position_eso_epsilon is not None:
            d["position_eso_epsilon"] = list(self.position_eso_epsilon)
        if self.attitude_eso_alpha is not None:
            d["attitude_eso_alpha_per_s"] = list(self.attitude_eso_alpha)
        if self.attitude_eso_epsilon is not None:
            d["attitude_eso_epsilon"] = list(self.attitude_eso_epsilon)
        return d

    @classmethod
    def from_dict(cls, d: dict, where: str) -> "ScenarioSettings":
        allowed = {
            "reference", "duration_s", "initial", "use_arm", "events",
            "position_eso_alpha_per_s", "position_eso_epsilon",
            "attitude_eso_alpha_per_s", "attitude_eso_epsilon",
        }
        _check_keys(d, allowed, where)
        init = d.get("initial", {})
        _check_keys(init, {"position_m", "velocity_m_s", "yaw_rad"}, f"{where}.initial")
        events = []
        for i, e in enumerate(d.get("events", [])):
            _check_keys(
                e, {"t_start_s", "t_stop_s", "force_n", "point_m", "ramp_s"},
                f"{where}.events[{i}]",
            )
            events.append(
                ExternalForceEvent(
                    t_start=float(e["t_start_s"]),
                    t_stop=float(e["t_stop_s"]),
                    force=_vec(e["force_n"]),
                    point=_vec(e["point_m"]),
                    ramp=float(e.get("ramp_s", 0.05)),
                )
            )

        def _optvec(key: str) -> Vec3 | None:
            return _vec(d[key]) if key in d else None

        return cls(
            reference=_reference_from_dict(d["reference"], f"{where}.reference"),
            duration=float(d["duration_s"]),
            initial=InitialState(
                position=_vec(init["position_m"]),
                velocity=_vec(init.get("velocity_m_s", (0.0, 0.0, 0.0))),
                yaw=float(init.get("yaw_rad", 0.0)),
            ),
            use_arm=bool(d.get("use_arm", False)),
            events=tuple(events),
            position_eso_alpha=_optvec("position_eso_alpha_per_s"),
            position_eso_epsilon=_optvec("position_eso_epsilon"),
            attitude_eso_alpha=_optvec("attitude_eso_alpha_per_s"),
            attitude_eso_epsilon=_optvec("attitude_eso_epsilon"),
        )


@dataclass(frozen=True)
class ExperimentConfig:
    physics: PhysicsConfig
    position_loop: LoopSettings
    attitude_loop: LoopSettings
    estimator: EstimatorOptions
    pid: PidGains
    noise: NoiseConfig
    arm: ArmSettings
    scenarios: dict[str, ScenarioSettings]

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "physics": self.physics.to_dict(),
            "position_loop": self.position_loop.to_dict(),
            "attitude_loop": self.attitude_loop.to_dict(),
            "estimator": {
                "fd_stride_ticks": self.estimator.fd_stride,
                "omega_d_filter_tau_s": self.estimator.filter_tau,
                "thrust_shaping_tau_s": self.estimator.thrust_shaping_tau,
            },
            "pid": {
                "pos_p_per_s": self.pid.pos_p,
                "vel_p": self.pid.vel_p,
                "vel_i": self.pid.vel_i,
                "vel_d": self.pid.vel_d,
                "att_p_per_s": self.pid.att_p,
                "rate_p": self.pid.rate_p,
                "rate_i": self.pid.rate_i,
                "rate_d": self.pid.rate_d,
                "vel_int_limit": self.pid.vel_int_limit,
                "rate_int_limit": self.pid.rate_int_limit,
            },
            "noise": {
                "velocity_std_m_s": self.noise.velocity_std,
                "omega_std_rad_s": self.noise.omega_std,
            },
            "arm": self.arm.to_dict(),
            "scenarios": {
                name: s.to_dict() for name, s in sorted(self.scenarios.items())
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        version = d.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ConfigInvalid(
                f"schema_version {version!r} unsupported (expected {SCHEMA_VERSION})"
            )
        allowed = {
            "schema_version", "physics", "position_loop", "attitude_loop",
            "estimator", "pid", "noise", "arm", "scenarios",
        }
        _check_keys(d, allowed, "config")
        est = d.get("estimator", {})
        _check_keys(
            est,
            {"fd_stride_ticks", "omega_d_filter_tau_s", "thrust_shaping_tau_s"},
            "estimator",
        )
        pid = d.get("pid", {})
        _check_keys(
            pid,
            {"pos_p_per_s", "vel_p", "vel_i", "vel_d", "att_p_per_s",
             "rate_p", "rate_i", "rate_d", "vel_int_limit", "rate_int_limit"},
            "pid",
        )
        noise = d.get("noise", {})
        _check_keys(noise, {"velocity_std_m_s", "omega_std_rad_s"}, "noise")
        defaults = PidGains()
        return cls(
            physics=PhysicsConfig.from_dict(d.get("physics", {})),
            position_loop=LoopSettings.from_dict(d["position_loop"], "position_loop"),
            attitude_loop=LoopSettings.from_dict(d["attitude_loop"], "attitude_loop"),
            estimator=EstimatorOptions(
                fd_stride=int(est.get("fd_stride_ticks", 10)),
                filter_tau=float(est.get("omega_d_filter_tau_s", 0.04)),
                thrust_shaping_tau=float(est.get("thrust_shaping_tau_s", 0.12)),
            ),
            pid=PidGains(
                pos_p=float(pid.get("pos_p_per_s", defaults.pos_p)),
                vel_p=float(pid.get("vel_p", defaults.vel_p)),
                vel_i=float(pid.get("vel_i", defaults.vel_i)),
                vel_d=float(pid.get("vel_d", defaults.vel_d)),
                att_p=float(pid.get("att_p_per_s", defaults.att_p)),
                rate_p=float(pid.get("rate_p", defaults.rate_p)),
                rate_i=float(pid.get("rate_i", defaults.rate_i)),
                rate_d=float(pid.get("rate_d", defaults.rate_d)),
                vel_int_limit=float(pid.get("vel_int_limit", defaults.vel_int_limit)),
                rate_int_limit=float(pid.get("rate_int_limit", defaults.rate_int_limit)),
            ),
            noise=NoiseConfig(
                velocity_std=float(noise.get("velocity_std_m_s", 0.0)),
                omega_std=float(noise.get("omega_std_rad_s", 0.0)),
            ),
            arm=ArmSettings.from_dict(d["arm"]),
            scenarios={
                name: ScenarioSettings.from_dict(s, f"scenarios.{name}")
                for name, s in d.get("scenarios", {}).items()
            },
        )

    # -- assembly helpers ----------------------------------------------------

    def scenario_names(self) -> list[str]:
        return sorted(self.scenarios)

    def build_scenario(self, name: str) -> Scenario:
        if name not in self.scenarios:
            raise ConfigInvalid(
                f"unknown scenario {name!r}; available: {self.scenario_names()}"
            )
        s = self.scenarios[name]
        return Scenario(
            name=name,
            reference=s.reference,
            duration=s.duration,
            initial=s.initial,
            arm_profile=self.arm.profile() if s.use_arm else None,
            events=s.events,
        )

    def loop_configs_for(
        self, name: str
    ) -> tuple[TrackingLoopConfig, TrackingLoopConfig]:
        """Loop configs with any per-scenario observer overrides applied."""
        s = self.scenarios[name]
        pos = self.position_loop
        att = self.attitude_loop
        if s.position_eso_alpha is not None:
            pos = replace(pos, eso_alpha=s.position_eso_alpha)
        if s.position_eso_epsilon is not None:
            pos = replace(pos, eso_epsilon=s.position_eso_epsilon)
        if s.attitude_eso_alpha is not None:
            att = replace(att, eso_alpha=s.attitude_eso_alpha)
        if s.attitude_eso_epsilon is not None:
            att = replace(att, eso_epsilon=s.attitude_eso_epsilon)
        return pos.loop_config(), att.loop_config()


def config_hash(cfg: ExperimentConfig) -> str:
    """sha256 of the canonical JSON form; stored in summaries for provenance."""
    blob = json.dumps(cfg.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def dump_yaml(cfg: ExperimentConfig) -> str:
    return yaml.safe_dump(cfg.to_dict(), sort_keys=True, default_flow_style=None)


def load_yaml(text: str) -> ExperimentConfig:
    data = yaml.safe_load(text)
    if not isinstance(data, dict):
        raise ConfigInvalid("config root must be a mapping")
    return ExperimentConfig.from_dict(data)


def load_config(path: str | Path) -> ExperimentConfig:
    return load_yaml(Path(path).read_text())


def save_config(cfg: ExperimentConfig, path: str | Path) -> None:
    Path(path).write_text(dump_yaml(cfg))


def default_config() -> ExperimentConfig:
    """Shipped defaults: benchmark gains/envelopes plus the artifact's plant,
    arm calibration, and scenario catalog.  Zero measurement noise; see
    ``configs/noisy.yaml`` for the noise-enabled preset."""
    position_loop = LoopSettings(
        k=(3.0, 3.0, 3.0),
        lam=(3.0, 3.0, 3.0),
        rho0=(3.0, 3.0, 3.0),
        rho_inf=(0.05, 0.05, 0.05),
        decay_l=1.0,
        c=(5.0, 5.0, 5.0),
        margin=(0.04, 0.04, 0.04),
        assumed_delta_f=0.35,
        eso_alpha=(0.1, 0.1, 0.1),
        eso_epsilon=(0.5, 0.5, 0.5),
    )
    attitude_loop = LoopSettings(
        k=(12.0, 12.0, 10.0),
        lam=(14.0, 14.0, 10.0),
        rho0=(0.4, 0.4, 0.4),
        rho_inf=(0.06, 0.06, 0.06),
        decay_l=1.0,
        c=(5.0, 5.0, 5.0),
        margin=(0.05, 0.05, 0.05),
        assumed_delta_f=2.0,
        eso_alpha=(1.0, 1.0, 1.0),
        eso_epsilon=(0.25, 0.25, 0.25),
    )
    # Swing calibration: peak end-effector speed 0.94 m/s relative to the
    # base (target >= 0.7), peak relative acceleration ~11 m/s^2; the slow
    # azimuth sweep dominates the coupling spectrum near 1.4 rad/s.
    arm = ArmSettings(
        point_mass=1.0,
        mount_offset=(0.0, 0.0, 0.10),
        link_lengths=(0.19, 0.19),
        servo_tau=0.04,
        joints=(
            JointWave(amplitude=1.0, frequency_hz=0.22, phase=0.0, offset=0.7),
            JointWave(amplitude=0.30, frequency_hz=0.45, phase=0.9, offset=0.5),
            JointWave(amplitude=0.40, frequency_hz=1.30, phase=1.7, offset=0.55),
            JointWave(amplitude=0.6, frequency_hz=1.0, phase=0.0, offset=0.0),
            JointWave(amplitude=0.5, frequency_hz=1.2, phase=0.5, offset=0.0),
            JointWave(amplitude=0.8, frequency_hz=0.9, phase=1.0, offset=0.0),
        ),
    )
    scenarios = {
        "setpoint": ScenarioSettings(
            reference=SetpointReference(target=(0.8, -0.8, -0.7)),
            duration=12.0,
            initial=InitialState(position=(0.0, 0.0, -1.5)),
            use_arm=True,
        ),
        "circle": ScenarioSettings(
            reference=CircleReference(center=(0.0, 0.0, -1.0), radius=1.5, period=16.0),
            duration=16.0,
            initial=InitialState(position=(1.0, -0.5, -1.5)),
            use_arm=True,
        ),
        "figure_eight": ScenarioSettings(
            reference=FigureEightReference(center=(0.0, 0.0, -1.0)),
            duration=16.0,
            initial=InitialState(position=(0.5, 0.5, -1.6)),
            use_arm=True,
        ),
        "hover": ScenarioSettings(
            reference=SetpointReference(target=(0.0, 0.0, -1.2)),
            duration=8.0,
            initial=InitialState(position=(0.0, 0.0, -1.2)),
            use_arm=False,
        ),
        "hover_arm": ScenarioSettings(
            reference=SetpointReference(target=(0.0, 0.0, -1.2)),
            duration=8.0,
            initial=InitialState(position=(0.0, 0.0, -1.2)),
            use_arm=True,
        ),
        "cart_pull": ScenarioSettings(
            reference=SetpointReference(target=(0.0, 0.0, -1.0)),
            duration=14.0,
            initial=InitialState(position=(0.0, 0.0, -1.0)),
            use_arm=False,
            events=(
                ExternalForceEvent(
                    t_start=3.0,
                    t_stop=11.0,
                    force=(0.0, 10.0, 0.0),
                    point=(0.0, 0.0, 0.4),
                    ramp=0.05,
                ),
            ),
            position_eso_alpha=(1.0, 1.0, 1.0),
            position_eso_epsilon=(0.1, 0.1, 0.1),
        ),
    }
    return ExperimentConfig(
        physics=PhysicsConfig(),
        position_loop=position_loop,
        attitude_loop=attitude_loop,
        estimator=EstimatorOptions(),
        pid=PidGains(),
        noise=NoiseConfig(),
        arm=arm,
        scenarios=scenarios,
    )


def validate_config(cfg: ExperimentConfig) -> list[str]:
    """Full static validation; returns human-readable problem strings.

    Constructs every derived object (plant, loops, scenarios) and checks the
    preset-shaping lower bounds for each scenario from its configured initial
    errors, in both the design-margin and theorem-margin variants.
    """
    problems: list[str] = []
    try:
        cfg.physics.quad_params()
    except PpflightError as exc:
        problems.append(f"physics: {exc}")
    if cfg.physics.dt <= 0.0:
        problems.append("physics: dt must be positive")
    for label, loop in (("position_loop", cfg.position_loop), ("attitude_loop", cfg.attitude_loop)):
        try:
            loop.loop_config()
        except PpflightError as exc:
            problems.append(f"{label}: {exc}")
    if problems:
        return problems
    pos_lc = cfg.position_loop.loop_config()
    for name in cfg.scenario_names():
        s = cfg.scenarios[name]
        try:
            scenario = cfg.build_scenario(name)
            scenario_pos_lc, _ = cfg.loop_configs_for(name)
        except PpflightError as exc:
            problems.append(f"scenarios.{name}: {exc}")
            continue
        ref0 = s.reference.at(0.0)
        xi0 = tuple(s.initial.position[i] - ref0.p_d[i] for i in range(3))
        xi_dot0 = tuple(s.initial.velocity[i] - ref0.dp_d[i] for i in range(3))
        try:
            preset = PresetTrajectory.from_initial_error(
                xi0, xi_dot0, pos_lc.envelope.l, pos_lc.c  # type: ignore[arg-type]
            )
            pos_lc.margin.check_against(pos_lc.envelope, xi0)  # type: ignore[arg-type]
            lemma = validate_c(preset, pos_lc.envelope, pos_lc.margin)
            theorem = validate_c(
                preset, pos_lc.envelope, pos_lc.margin, scenario_pos_lc.delta_over_gain()
            )
            if not lemma.ok:
                problems.append(
                    f"scenarios.{name}: c below lemma bound {lemma.c_min} on axes {lemma.violations}"
                )
            if not theorem.ok:
                problems.append(
                    f"scenarios.{name}: c below theorem bound {theorem.c_min} on axes {theorem.violations}"
                )
        except PpflightError as exc:
            problems.append(f"scenarios.{name}: {exc}")
    return problems
