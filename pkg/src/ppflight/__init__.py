"""Prescribed-performance flight control for aerial manipulators.

A desk-scale simulator and control library: variable-gain extended state
observers estimate the coupling force/torque a moving arm exerts on the
multirotor base, and position/attitude controllers constrained by preset
error trajectories keep the tracking errors inside prescribed performance
envelopes.  A seeded batch harness compares the design against three
baselines and audits the envelope-containment guarantees numerically.
"""

from .arm import (
    ArmTrajectoryProfile,
    ExternalForceEvent,
    JointWave,
    LumpedArmParams,
    coupling_from_arm,
    end_effector_state,
    external_force_coupling,
    joint_state_at,
)
from .batch import BatchResult, render_comparison_table, run_batch
from .config import (
    ExperimentConfig,
    config_hash,
    default_config,
    load_config,
    save_config,
    validate_config,
)
from .controllers import (
    AttitudeCtlConfig,
    ControllerVariant,
    EstimatorOptions,
    FlightController,
    PidController,
    PidGains,
    PositionCtlConfig,
    ReferenceSignal,
    TrackingLoopConfig,
    attitude_control,
    build_controller,
    desired_angular_velocity,
    desired_attitude,
    position_control,
)
from .dynamics import (
    CommandLimits,
    ControlCommand,
    CouplingSample,
    NoiseConfig,
    QuadParams,
    RigidBodyState,
    add_measurement_noise,
    derivative,
    rk4_step,
)
from .envelope import (
    ContainmentReport,
    MarginConstants,
    PerformanceEnvelope,
    PresetTrajectory,
    beta_at,
    containment_check,
    rho_at,
    rho_rate_at,
    validate_c,
)
from .eso import (
    EsoTriplet,
    EsoUnitConfig,
    GainFunctionParams,
    VariableGainEsoUnit,
    attitude_eso_step,
    gain_g,
    position_eso_step,
)
from .metrics import (
    EnvelopeViolation,
    PooledMetrics,
    SummaryMetrics,
    check_envelope,
    measure_eso_convergence,
    pool_metrics,
    summarize_trial,
)
from .scenarios import (
    CircleReference,
    FigureEightReference,
    InitialState,
    Scenario,
    SetpointReference,
)
from .trial import COLUMNS, TrialRecord, run_trial

__version__ = "0.1.0"
