"""Command-line interface.

Subcommands:

* ``run``      one trial -> CSV time series + JSON summary
* ``batch``    seeded batch over variants -> JSON summaries (+ optional CSVs)
* ``check``    envelope audit of a trial CSV
* ``validate`` static config validation (including preset-shaping bounds)
* ``table``    render the comparison table from batch summaries

Failures print a machine-readable JSON object on stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import batch as batch_mod
from .config import (
    ExperimentConfig,
    default_config,
    load_config,
    validate_config,
)
from .controllers import ControllerVariant
from .errors import PpflightError
from .metrics import check_envelope
from .trial import TrialRecord, run_trial

_VARIANTS = [v.value for v in ControllerVariant]


def _load(args: argparse.Namespace) -> ExperimentConfig:
    if args.config is None:
        return default_config()
    return load_config(args.config)


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _load(args)
    record = run_trial(args.scenario, args.variant, args.seed, cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"trial_{record.scenario}_{record.variant}_seed{record.seed}"
    if args.format == "csv":
        record.to_csv(out / f"{stem}.csv")
    batch_mod.write_trial_summary(record, out / f"{stem}.json")
    print(f"wrote {stem}.{args.format} and {stem}.json in {out}")
    return 0


def _cmd_batch(args: argparse.Namespace) -> int:
    cfg = _load(args)
    scenarios = args.scenario or ["setpoint", "circle", "figure_eight"]
    variants = args.variant or _VARIANTS
    seeds = list(range(args.seed, args.seed + args.trials))
    results = []
    for name in scenarios:
        res = batch_mod.run_batch(
            name,
            variants,
            seeds,
            cfg,
            workers=args.workers,
            out_dir=args.out,
            save_trials=args.save_trials,
        )
        results.append(res)
    table = batch_mod.render_comparison_table(results)
    Path(args.out).mkdir(parents=True, exist_ok=True)
    (Path(args.out) / "comparison.txt").write_text(table)
    print(table)
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    record = TrialRecord.from_csv(args.record)
    violations = check_envelope(record)
    if args.format == "json":
        payload = [
            {"t": v.t, "kind": v.kind, "axis": v.axis, "error": v.error, "bound": v.bound}
            for v in violations
        ]
        print(json.dumps({"violations": payload, "count": len(violations)}, indent=2))
    else:
        if violations:
            for v in violations:
                print(
                    f"t={v.t:.3f}s {v.kind} axis {v.axis}: "
                    f"|error| {v.error:.6f} >= bound {v.bound:.6f}"
                )
        print(f"{len(violations)} envelope violation(s) in {args.record}")
    return 1 if violations else 0


def _cmd_validate(args: argparse.Namespace) -> int:
    cfg = _load(args)
    problems = validate_config(cfg)
    if problems:
        for p in problems:
            print(f"invalid: {p}")
        return 2
    print("config ok")
    return 0


def _cmd_table(args: argparse.Namespace) -> int:
    results = batch_mod.load_summaries(args.out)
    if not results:
        raise PpflightError(f"no summary_*.json files in {args.out}")
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in results], sort_keys=True, indent=2))
    else:
        print(batch_mod.render_comparison_table(results))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ppflight",
        description="Prescribed-performance flight-control benchmark harness",
    )
    parser.add_argument("--config", type=Path, default=None, help="YAML config (default: built-in)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a single trial")
    p_run.add_argument("--scenario", required=True)
    p_run.add_argument("--variant", choices=_VARIANTS, default="proposed")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--out", type=Path, default=Path("out"))
    p_run.add_argument("--format", choices=["csv", "json"], default="csv")
    p_run.set_defaults(func=_cmd_run)

    p_batch = sub.add_parser("batch", help="run a seeded batch")
    p_batch.add_argument("--scenario", action="append", help="repeatable; default: the three tracking tasks")
    p_batch.add_argument("--variant", action="append", choices=_VARIANTS)
    p_batch.add_argument("--trials", type=int, default=10)
    p_batch.add_argument("--seed", type=int, default=0, help="first seed")
    p_batch.add_argument("--workers", type=int, default=1)
    p_batch.add_argument("--out", type=Path, default=Path("out"))
    p_batch.add_argument("--save-trials", action="store_true")
    p_batch.set_defaults(func=_cmd_batch)

    p_check = sub.add_parser("check", help="envelope audit of a trial CSV")
    p_check.add_argument("record", type=Path)
    p_check.add_argument("--format", choices=["text", "json"], default="text")
    p_check.set_defaults(func=_cmd_check)

    p_val = sub.add_parser("validate", help="validate a config file")
    p_val.set_defaults(func=_cmd_validate)

    p_table = sub.add_parser("table", help="render comparison table from summaries")
    p_table.add_argument("--out", type=Path, default=Path("out"))
    p_table.add_argument("--format", choices=["text", "json"], default="text")
    p_table.set_defaults(func=_cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PpflightError as exc:
        json.dump(
            {"error": type(exc).__name__, "detail": str(exc)},
            sys.stderr,
        )
        sys.stderr.write("\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
