"""JSON experiment configuration: strict parsing, validation, round-trip.

Schema (unknown keys are rejected at every level):

    {
      "code": "three_qubit" | "steane" | "ft_steane" | "shor_nine",
      "topology": {"type": "all_to_all" | "line" | "square",
                   "rows": R, "cols": C},            # rows/cols: square only
      "noise": {
        "tg": 1e-7,                                  # gate time, seconds
        "p1": 0.001,          "p1_per_qubit": [...],
        "t1": 100e-6,         "t1_per_qubit": [...], # seconds; omit = no decay
        "t2": 100e-6,         "t2_per_qubit": [...],
        "p_prep": 0.0,        "p_prep_per_qubit": [...],
        "p_meas": 0.0,        "p_meas_per_qubit": [...],
        "depolarization": true, "relaxation": true,
        "dephasing": true,      "spam": true,
        "measure_duration": 0.0
      },
      "samples": 1000,
      "max_iterations": 10000,                       # optional, default 10000
      "seed": 42,
      "bootstrap": 0                                 # optional
    }

Scalar noise entries apply uniformly; a *_per_qubit array overrides with one
value per physical qubit of the chosen code.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .codes import CodeId, layout_of
from .connectivity import ALL_TO_ALL, LINE, SQUARE, ConnectivityGraph
from .harness import ExperimentConfig
from .noise import NoiseModel, QubitNoiseParams

DEFAULT_MAX_ITERATIONS = 10_000


class ConfigError(ValueError):
    """A malformed or inconsistent experiment configuration."""


def _reject_unknown(section: dict, allowed, where: str) -> None:
    unknown = sorted(set(section) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(unknown)}")


def _require(section: dict, key: str, where: str):
    if key not in section:
        raise ConfigError(f"missing required key {key!r} in {where}")
    return section[key]


def _number(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{field} must be a number, got {value!r}")
    return float(value)


def _per_qubit(noise: dict, name: str, default: float, n_qubits: int) -> list[float]:
    array_key = f"{name}_per_qubit"
    if array_key in noise and name in noise:
        raise ConfigError(f"give either {name!r} or {array_key!r}, not both")
    if array_key in noise:
        values = noise[array_key]
        if not isinstance(values, list):
            raise ConfigError(f"{array_key} must be an array")
        if len(values) != n_qubits:
            raise ConfigError(
                f"{array_key} must have {n_qubits} entries (one per physical "
                f"qubit), got {len(values)}"
            )
        return [_number(v, array_key) for v in values]
    if name in noise:
        return [_number(noise[name], name)] * n_qubits
    return [default] * n_qubits


_NOISE_KEYS = (
    "tg", "measure_duration",
    "p1", "p1_per_qubit", "t1", "t1_per_qubit", "t2", "t2_per_qubit",
    "p_prep", "p_prep_per_qubit", "p_meas", "p_meas_per_qubit",
    "depolarization", "relaxation", "dephasing", "spam",
)


def _parse_noise(noise: dict, n_qubits: int) -> NoiseModel:
    if not isinstance(noise, dict):
        raise ConfigError("'noise' must be an object")
    _reject_unknown(noise, _NOISE_KEYS, "'noise'")
    tg = _number(_require(noise, "tg", "'noise'"), "tg")
    p1 = _per_qubit(noise, "p1", 0.0, n_qubits)
    t1 = _per_qubit(noise, "t1", math.inf, n_qubits)
    t2 = _per_qubit(noise, "t2", math.inf, n_qubits)
    p_prep = _per_qubit(noise, "p_prep", 0.0, n_qubits)
    p_meas = _per_qubit(noise, "p_meas", 0.0, n_qubits)
    flags = {}
    for flag in ("depolarization", "relaxation", "dephasing", "spam"):
        value = noise.get(flag, True)
        if not isinstance(value, bool):
            raise ConfigError(f"{flag} must be true or false")
        flags[flag] = value
    try:
        per_qubit = tuple(
            QubitNoiseParams(
                p1=p1[q], t1=t1[q], t2=t2[q], p_prep=p_prep[q], p_meas=p_meas[q]
            )
            for q in range(n_qubits)
        )
        return NoiseModel(
            per_qubit=per_qubit,
            gate_duration=tg,
            measure_duration=_number(noise.get("measure_duration", 0.0),
                                     "measure_duration"),
            **flags,
        )
    except ValueError as exc:
        raise ConfigError(f"invalid noise parameters: {exc}") from exc


def _parse_topology(section, n_qubits: int) -> ConnectivityGraph:
    if section is None:
        return ConnectivityGraph.all_to_all(n_qubits)
    if not isinstance(section, dict):
        raise ConfigError("'topology' must be an object")
    _reject_unknown(section, ("type", "rows", "cols"), "'topology'")
    kind = _require(section, "type", "'topology'")
    try:
        if kind == ALL_TO_ALL:
            return ConnectivityGraph.all_to_all(n_qubits)
        if kind == LINE:
            return ConnectivityGraph.line(n_qubits)
        if kind == SQUARE:
            rows = int(_require(section, "rows", "'topology'"))
            cols = int(_require(section, "cols", "'topology'"))
            return ConnectivityGraph.square_lattice(rows, cols)
    except ValueError as exc:
        raise ConfigError(f"invalid topology: {exc}") from exc
    raise ConfigError(f"topology type must be one of {ALL_TO_ALL}/{LINE}/{SQUARE}")


_TOP_KEYS = ("code", "topology", "noise", "samples", "max_iterations", "seed",
             "bootstrap")


def parse_config(raw: dict) -> ExperimentConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    _reject_unknown(raw, _TOP_KEYS, "config")
    code_name = _require(raw, "code", "config")
    try:
        code = CodeId(code_name)
    except ValueError:
        valid = ", ".join(c.value for c in CodeId)
        raise ConfigError(f"unknown code {code_name!r}; valid codes: {valid}")
    n_qubits = layout_of(code).n_total
    topology = _parse_topology(raw.get("topology"), n_qubits)
    if topology.n_qubits != n_qubits:
        raise ConfigError(
            f"topology holds {topology.n_qubits} qubits but {code.value} "
            f"needs {n_qubits}"
        )
    noise = _parse_noise(_require(raw, "noise", "config"), n_qubits)
    samples = _require(raw, "samples", "config")
    seed = _require(raw, "seed", "config")
    if not isinstance(samples, int) or isinstance(samples, bool) or samples < 1:
        raise ConfigError("samples must be a positive integer")
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise ConfigError("seed must be a non-negative integer")
    max_iterations = raw.get("max_iterations", DEFAULT_MAX_ITERATIONS)
    if (not isinstance(max_iterations, int) or isinstance(max_iterations, bool)
            or max_iterations < 1):
        raise ConfigError("max_iterations must be a positive integer")
    bootstrap = raw.get("bootstrap", 0)
    if not isinstance(bootstrap, int) or isinstance(bootstrap, bool) or bootstrap < 0:
        raise ConfigError("bootstrap must be a non-negative integer")
    try:
        return ExperimentConfig(
            code=code,
            topology=topology,
            noise=noise,
            n_samples=samples,
            max_iterations=max_iterations,
            master_seed=seed,
            bootstrap_resamples=bootstrap,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"config {path} is not valid JSON (line {exc.lineno}, "
            f"column {exc.colno}): {exc.msg}"
        ) from exc
    return parse_config(raw)


def _maybe_scalar(values):
    return values[0] if len(set(values)) == 1 else list(values)


def emit_config(cfg: ExperimentConfig) -> dict:
    """Config as a plain dict; load_config(emit_config(c)) round-trips."""
    topo: dict = {"type": cfg.topology.topology}
    if cfg.topology.topology == SQUARE:
        topo["rows"] = cfg.topology.rows
        topo["cols"] = cfg.topology.cols
    noise: dict = {"tg": cfg.noise.gate_duration}
    if cfg.noise.measure_duration:
        noise["measure_duration"] = cfg.noise.measure_duration
    per = cfg.noise.per_qubit

    def put(name, values, default):
        value = _maybe_scalar(values)
        if isinstance(value, list):
            noise[f"{name}_per_qubit"] = value
        elif value != default:
            noise[name] = value

    put("p1", [p.p1 for p in per], 0.0)
    put("t1", [p.t1 for p in per], math.inf)
    put("t2", [p.t2 for p in per], math.inf)
    put("p_prep", [p.p_prep for p in per], 0.0)
    put("p_meas", [p.p_meas for p in per], 0.0)
    for flag in ("depolarization", "relaxation", "dephasing", "spam"):
        if not getattr(cfg.noise, flag):
            noise[flag] = False
    return {
        "code": cfg.code.value,
        "topology": topo,
        "noise": noise,
        "samples": cfg.n_samples,
        "max_iterations": cfg.max_iterations,
        "seed": cfg.master_seed,
        "bootstrap": cfg.bootstrap_resamples,
    }
