"""Seeded batch execution and the four-way comparison table.

Trials are independent; they may run on a process pool, and results are
aggregated in sorted (variant, seed) order so the outputs are byte-identical
for any worker count.  Batch outputs per scenario: one JSON summary with the
pooled statistics per variant (plus config hash for provenance) and a
plain-text comparison table across scenarios.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .config import ExperimentConfig, config_hash
from .controllers import ControllerVariant
from .metrics import PooledMetrics, pool_metrics, summarize_trial
from .trial import TrialRecord, run_trial

#: table order mirrors the benchmark comparison: stock stack first,
#: observer ablation, preset ablation, then the full design.
TABLE_ORDER: tuple[tuple[str, str], ...] = (
    ("pid", "Baseline I (pid)"),
    ("no_eso", "Baseline II (no_eso)"),
    ("no_preset", "Baseline III (no_preset)"),
    ("proposed", "Proposed"),
)


def _run_one(args: tuple[str, str, int, dict]) -> TrialRecord:
    scenario, variant, seed, cfg_dict = args
    cfg = ExperimentConfig.from_dict(cfg_dict)
    return run_trial(scenario, variant, seed, cfg)


@dataclass
class BatchResult:
    scenario: str
    pooled: dict[str, PooledMetrics]  # variant -> metrics
    seeds: tuple[int, ...]
    config_hash: str

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "seeds": list(self.seeds),
            "config_hash": self.config_hash,
            "variants": {name: m.to_dict() for name, m in sorted(self.pooled.items())},
        }


def run_batch(
    scenario: str,
    variants: list[ControllerVariant | str],
    seeds: list[int],
    cfg: ExperimentConfig,
    workers: int = 1,
    out_dir: str | Path | None = None,
    save_trials: bool = False,
) -> BatchResult:
    """Run every (variant, seed) trial of one scenario and pool per variant."""
    variant_names = [ControllerVariant(v).value for v in variants]
    tasks = [
        (scenario, v, s, cfg.to_dict())
        for v in sorted(variant_names)
        for s in sorted(seeds)
    ]
    if workers <= 1:
        records = [_run_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_one, tasks))
    by_variant: dict[str, list[TrialRecord]] = {v: [] for v in sorted(variant_names)}
    for rec in records:
        by_variant[rec.variant].append(rec)
    for recs in by_variant.values():
        recs.sort(key=lambda r: r.seed)
    result = BatchResult(
        scenario=scenario,
        pooled={v: pool_metrics(recs) for v, recs in by_variant.items()},
        seeds=tuple(sorted(seeds)),
        config_hash=config_hash(cfg),
    )
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_summary(result, out / f"summary_{scenario}.json")
        if save_trials:
            for rec in records:
                rec.to_csv(out / f"trial_{rec.scenario}_{rec.variant}_seed{rec.seed}.csv")
    return result


def write_summary(result: BatchResult, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(result.to_dict(), sort_keys=True, indent=2) + "\n"
    )


def write_trial_summary(record: TrialRecord, path: str | Path) -> None:
    summary = {
        "scenario": record.scenario,
        "variant": record.variant,
        "seed": record.seed,
        "metadata": record.metadata,
        "metrics": summarize_trial(record).to_dict(),
    }
    Path(path).write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")


def render_comparison_table(results: list[BatchResult]) -> str:
    """Plain-text table: one block of four method rows per scenario."""
    lines = [
        f"{'Scenario':<14}{'Method':<26}{'Mean +/- SD (cm)':>20}{'Maximum (cm)':>16}",
        "-" * 76,
    ]
    for res in results:
        first = True
        for variant, label in TABLE_ORDER:
            if variant not in res.pooled:
                continue
            m = res.pooled[variant]
            cell = f"{m.mean_cm:.2f} +/- {m.sd_cm:.2f}"
            lines.append(
                f"{res.scenario if first else '':<14}{label:<26}{cell:>20}{m.max_cm:>16.2f}"
            )
            first = False
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def load_summaries(out_dir: str | Path) -> list[BatchResult]:
    """Rehydrate batch results from the summary JSONs in a directory."""
    out = []
    for path in sorted(Path(out_dir).glob("summary_*.json")):
        raw = json.loads(path.read_text())
        pooled = {}
        for name, m in raw["variants"].items():
            pooled[name] = PooledMetrics(
                mean_cm=m["mean_cm"],
                sd_cm=m["sd_cm"],
                max_cm=m["max_cm"],
                steady_state_mean_cm=m["steady_state_mean_cm"],
                position_violations=m["position_violations"],
                attitude_violations=m["attitude_violations"],
                n_trials=m["n_trials"],
                per_trial_mean_cm=tuple(m["per_trial_mean_cm"]),
            )
        out.append(
            BatchResult(
                scenario=raw["scenario"],
                pooled=pooled,
                seeds=tuple(raw["seeds"]),
                config_hash=raw["config_hash"],
            )
        )
    return out
