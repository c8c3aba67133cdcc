"""Trial metrics: tracking-error statistics, envelope audits, observer
convergence measurement, and sliding-bound checks.

Error statistics follow the benchmark convention: the position error sample
is the Euclidean norm of the 3-axis error, reported in centimetres as
mean / standard deviation / maximum over all ticks (optionally pooled over
seeds).  The steady-state window opens at the first tick where every axis
error is inside its asymptotic envelope bound.

Observer convergence is measured, not derived: the residual bound
``delta_f`` is the sup of the estimation-error norm over the trailing half
of the trial, and ``t_f`` is the instant of the last sample exceeding it,
padded by a few closed-loop time constants so dependent quantities (the
sliding vectors) have settled to their post-convergence band.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .trial import TrialRecord


@dataclass(frozen=True)
class EsoConvergence:
    """Measured residual bound and convergence time of one observer loop."""

    delta_f: float
    t_f: float
    sup_error: float  # all-time sup of the estimation-error norm


def measure_eso_convergence(
    record: TrialRecord, loop: str, settle_time: float = 0.0
) -> EsoConvergence:
    """Measure (delta_f, t_f) from the logged true/estimated coupling.

    ``loop`` is 'position' or 'attitude'.  ``settle_time`` is added to the
    last exceedance instant (use a few multiples of 1/min(K) when the result
    feeds a sliding-bound check).
    """
    prefix = "dv" if loop == "position" else "dw"
    err = record.vectors(f"{prefix}_true") - record.vectors(f"{prefix}_est")
    norm = np.sqrt((err * err).sum(axis=1))
    half = norm[norm.shape[0] // 2 :]
    delta_f = float(half.max())
    above = np.nonzero(norm > delta_f)[0]
    t_last = float(record.time[above[-1]]) if above.size else 0.0
    return EsoConvergence(
        delta_f=delta_f,
        t_f=t_last + settle_time,
        sup_error=float(norm.max()),
    )


@dataclass(frozen=True)
class EnvelopeViolation:
    t: float
    kind: str  # 'position' | 'attitude'
    axis: int
    error: float
    bound: float


def check_envelope(record: TrialRecord) -> list[EnvelopeViolation]:
    """Every sample where |perr_i| >= rho_p_i or |qv_i| >= rho_q_i."""
    out: list[EnvelopeViolation] = []
    time = record.time
    for kind, err_prefix, rho_prefix in (
        ("position", "perr", "rho_p"),
        ("attitude", "qv", "rho_q"),
    ):
        err = np.abs(record.vectors(err_prefix))
        rho = record.vectors(rho_prefix)
        bad = err >= rho
        for row, axis in zip(*np.nonzero(bad)):
            out.append(
                EnvelopeViolation(
                    t=float(time[row]),
                    kind=kind,
                    axis=int(axis),
                    error=float(err[row, axis]),
                    bound=float(rho[row, axis]),
                )
            )
    out.sort(key=lambda v: (v.t, v.kind, v.axis))
    return out


@dataclass(frozen=True)
class SummaryMetrics:
    """Per-trial (or pooled) tracking-error statistics, lengths in cm."""

    mean_cm: float
    sd_cm: float
    max_cm: float
    mean_axes_cm: tuple[float, float, float]
    steady_state_mean_cm: float | None
    steady_state_start_s: float | None
    position_violations: int
    attitude_violations: int
    eso_position: EsoConvergence
    eso_attitude: EsoConvergence

    def to_dict(self) -> dict:
        return {
            "mean_cm": self.mean_cm,
            "sd_cm": self.sd_cm,
            "max_cm": self.max_cm,
            "mean_axes_cm": list(self.mean_axes_cm),
            "steady_state_mean_cm": self.steady_state_mean_cm,
            "steady_state_start_s": self.steady_state_start_s,
            "position_violations": self.position_violations,
            "attitude_violations": self.attitude_violations,
            "eso_position": {
                "delta_f": self.eso_position.delta_f,
                "t_f": self.eso_position.t_f,
                "sup_error": self.eso_position.sup_error,
            },
            "eso_attitude": {
                "delta_f": self.eso_attitude.delta_f,
                "t_f": self.eso_attitude.t_f,
                "sup_error": self.eso_attitude.sup_error,
            },
        }


def steady_state_start(record: TrialRecord) -> int | None:
    """First tick with every |perr_i| inside the asymptotic envelope bound."""
    err = np.abs(record.vectors("perr"))
    rho_inf = record.vectors("rho_p").min(axis=0)  # rho is decreasing -> limit
    inside = (err < rho_inf[None, :]).all(axis=1)
    idx = np.nonzero(inside)[0]
    return int(idx[0]) if idx.size else None


def summarize_trial(record: TrialRecord) -> SummaryMetrics:
    err = record.vectors("perr")
    norm_cm = 100.0 * np.sqrt((err * err).sum(axis=1))
    violations = check_envelope(record)
    k0 = steady_state_start(record)
    ss_mean = float(norm_cm[k0:].mean()) if k0 is not None else None
    ss_t = float(record.time[k0]) if k0 is not None else None
    return SummaryMetrics(
        mean_cm=float(norm_cm.mean()),
        sd_cm=float(norm_cm.std()),
        max_cm=float(norm_cm.max()),
        mean_axes_cm=tuple(100.0 * np.abs(err).mean(axis=0)),  # type: ignore[arg-type]
        steady_state_mean_cm=ss_mean,
        steady_state_start_s=ss_t,
        position_violations=sum(1 for v in violations if v.kind == "position"),
        attitude_violations=sum(1 for v in violations if v.kind == "attitude"),
        eso_position=measure_eso_convergence(record, "position"),
        eso_attitude=measure_eso_convergence(record, "attitude"),
    )


@dataclass(frozen=True)
class PooledMetrics:
    """Statistics pooled over the per-tick samples of several seeded trials."""

    mean_cm: float
    sd_cm: float
    max_cm: float
    steady_state_mean_cm: float | None
    position_violations: int
    attitude_violations: int
    n_trials: int
    per_trial_mean_cm: tuple[float, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "mean_cm": self.mean_cm,
            "sd_cm": self.sd_cm,
            "max_cm": self.max_cm,
            "steady_state_mean_cm": self.steady_state_mean_cm,
            "position_violations": self.position_violations,
            "attitude_violations": self.attitude_violations,
            "n_trials": self.n_trials,
            "per_trial_mean_cm": list(self.per_trial_mean_cm),
        }


def pool_metrics(records: list[TrialRecord]) -> PooledMetrics:
    norms = []
    ss_means = []
    pos_v = att_v = 0
    per_trial = []
    for rec in records:
        err = rec.vectors("perr")
        norm_cm = 100.0 * np.sqrt((err * err).sum(axis=1))
        norms.append(norm_cm)
        per_trial.append(float(norm_cm.mean()))
        k0 = steady_state_start(rec)
        if k0 is not None:
            ss_means.append(norm_cm[k0:].mean())
        s = summarize_trial(rec)
        pos_v += s.position_violations
        att_v += s.attitude_violations
    pooled = np.concatenate(norms)
    return PooledMetrics(
        mean_cm=float(pooled.mean()),
        sd_cm=float(pooled.std()),
        max_cm=float(pooled.max()),
        steady_state_mean_cm=float(np.mean(ss_means)) if ss_means else None,
        position_violations=pos_v,
        attitude_violations=att_v,
        n_trials=len(records),
        per_trial_mean_cm=tuple(per_trial),
    )


def sliding_bound_margin(
    record: TrialRecord, loop: str, lam_min_k: float, settle_time: float
) -> tuple[float, float]:
    """(max ||s|| after t_f, measured bound delta_f / min(K)) for one loop.

    ``lam_min_k`` is the smallest diagonal entry of the loop's K gain."""
    conv = measure_eso_convergence(record, loop, settle_time=settle_time)
    s = record.vectors("sp" if loop == "position" else "sq")
    norm = np.sqrt((s * s).sum(axis=1))
    mask = record.time >= conv.t_f
    worst = float(norm[mask].max()) if mask.any() else 0.0
    return worst, conv.delta_f / lam_min_k
