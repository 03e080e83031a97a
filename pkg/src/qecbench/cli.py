"""Command-line interface.

    qecbench run --config cfg.json --out results/ [overrides]
    qecbench validate --config cfg.json
    qecbench codes

Exit codes: 0 success, 2 configuration error, 3 runtime error.
Worker count comes from QECBENCH_THREADS (default: machine cores).
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import sys
from pathlib import Path

from . import __version__
from .codes import CodeId, layout_of, stabilizer_operators
from .config import ConfigError, emit_config, load_config, parse_config
from .connectivity import SQUARE, ConnectivityGraph
from .harness import ExperimentConfig, default_worker_count, run_experiment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

HISTOGRAM_FILE = "histogram.csv"
ESTIMATE_FILE = "t1_estimate.json"
MANIFEST_FILE = "manifest.json"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qecbench",
        description="Benchmark small QEC codes against a transmon noise model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment and write results")
    run.add_argument("--config", required=True, help="JSON config file")
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--code", help="override the code", choices=[c.value for c in CodeId])
    run.add_argument("--samples", type=int, help="override sample count")
    run.add_argument("--seed", type=int, help="override master seed")
    run.add_argument("--max-iterations", type=int, help="override iteration cap")
    run.add_argument(
        "--topology",
        help="override topology: all_to_all, line, or square:RxC",
    )
    run.add_argument("--workers", type=int, help="worker processes (default: env/cores)")

    val = sub.add_parser("validate", help="check a config file and exit")
    val.add_argument("--config", required=True)

    sub.add_parser("codes", help="list supported codes and their layouts")
    return parser


def _apply_overrides(cfg: ExperimentConfig, args) -> ExperimentConfig:
    raw = emit_config(cfg)
    if args.code:
        raw["code"] = args.code
        # a code change alters the register size; keep defaults coherent
        if raw["topology"]["type"] != SQUARE:
            raw.pop("topology")
    if args.samples is not None:
        raw["samples"] = args.samples
    if args.seed is not None:
        raw["seed"] = args.seed
    if args.max_iterations is not None:
        raw["max_iterations"] = args.max_iterations
    if args.topology is not None:
        raw["topology"] = _parse_topology_flag(args.topology)
    if args.code and any(
        k in raw["noise"] for k in tuple(raw["noise"])
        if k.endswith("_per_qubit")
    ):
        raise ConfigError("--code cannot override a config with per-qubit arrays")
    return parse_config(raw)


def _parse_topology_flag(text: str) -> dict:
    if text in ("all_to_all", "line"):
        return {"type": text}
    if text.startswith("square:"):
        try:
            rows, cols = text.split(":", 1)[1].lower().split("x")
            return {"type": "square", "rows": int(rows), "cols": int(cols)}
        except (ValueError, IndexError):
            pass
    raise ConfigError(
        f"bad --topology {text!r}; expected all_to_all, line, or square:RxC"
    )


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, list):
        return [_json_safe(v) for v in value]
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    return value


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(_json_safe(payload), indent=2, sort_keys=True) + "\n")


def _write_histogram(path: Path, hist) -> None:
    lines = ["iterations,count"]
    for k in sorted(hist.counts):
        lines.append(f"{k},{hist.counts[k]}")
    lines.append(f"censored,{hist.n_censored}")
    path.write_text("\n".join(lines) + "\n")


def run_and_emit(cfg: ExperimentConfig, out_dir, n_workers=None) -> dict:
    """Execute the experiment and write histogram, estimate, and manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    started = datetime.datetime.now(datetime.timezone.utc).isoformat()
    hist, est = run_experiment(cfg, n_workers=n_workers)
    finished = datetime.datetime.now(datetime.timezone.utc).isoformat()
    _write_histogram(out / HISTOGRAM_FILE, hist)
    _write_json(
        out / ESTIMATE_FILE,
        {
            "t1_logical_s": est.t1_logical,
            "p_fail_per_cycle": est.per_cycle_failure_prob,
            "cycle_duration_s": est.cycle_duration,
            "bootstrap": est.bootstrap_distribution,
            "censored_only": est.censored_only,
            "n_failures": est.n_failures,
            "total_cycles": est.total_cycles,
            "n_samples": hist.n_samples,
        },
    )
    manifest = {
        "tool": "qecbench",
        "version": __version__,
        "master_seed": cfg.master_seed,
        "config": emit_config(cfg),
        "started_at": started,
        "finished_at": finished,
        "outputs": [HISTOGRAM_FILE, ESTIMATE_FILE],
    }
    _write_json(out / MANIFEST_FILE, manifest)
    return manifest


def _cmd_run(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    workers = args.workers if args.workers else default_worker_count()
    run_and_emit(cfg, args.out, n_workers=workers)
    print(f"wrote {HISTOGRAM_FILE}, {ESTIMATE_FILE}, {MANIFEST_FILE} to {args.out}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    cfg = load_config(args.config)
    print(f"ok: {cfg.code.value} on {cfg.topology.topology}, "
          f"{cfg.n_samples} samples, seed {cfg.master_seed}")
    return EXIT_OK


def _cmd_codes() -> int:
    for code in CodeId:
        lay = layout_of(code)
        nkd = "" if lay.nkd is None else f"  [[{lay.nkd[0]},{lay.nkd[1]},{lay.nkd[2]}]]"
        stabs = len(stabilizer_operators(code))
        print(
            f"{code.value:<12} data={lay.n_data} ancilla={lay.n_ancilla} "
            f"total={lay.n_total} stabilizers={stabs}{nkd}"
        )
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "validate":
            return _cmd_validate(args)
        return _cmd_codes()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - boundary of the CLI
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
