"""Seeded run-until-failure sampling and logical-T1 estimation.

Each shot encodes logical zero once, then alternates error-correction
cycles with a logical readout probe. The probe samples a measured copy of
the state, so the surviving register continues from its pre-readout state.
A shot ends at the first readout that decodes to 1, or is right-censored
at max_iterations.

Shots are reproducible and order-independent: shot i draws its randomness
from a stream seeded by (master_seed, i), so any worker count and any
execution order produce identical histograms.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .codes import CodeId, code_definition, layout_of
from .connectivity import ConnectivityGraph
from .engine import FactoredState
from .gates import circuit_duration
from .noise import NoiseModel

_T1_FLOOR_LOG = math.log(1e-12)  # caps t1 when every cycle fails


@dataclass(frozen=True)
class ExperimentConfig:
    code: CodeId
    topology: ConnectivityGraph
    noise: NoiseModel
    n_samples: int
    max_iterations: int
    master_seed: int
    bootstrap_resamples: int = 0

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.bootstrap_resamples < 0:
            raise ValueError("bootstrap_resamples must be >= 0")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        self.noise.check_register(layout_of(self.code).n_total)
        if self.topology.n_qubits != layout_of(self.code).n_total:
            raise ValueError(
                f"{self.code.value} needs {layout_of(self.code).n_total} qubits, "
                f"topology has {self.topology.n_qubits}"
            )


@dataclass(frozen=True)
class FailureSample:
    shot_index: int
    iterations_survived: int  # cycles completed when the failing readout hit
    censored: bool


@dataclass
class FailureHistogram:
    counts: dict[int, int] = field(default_factory=dict)  # uncensored only
    n_samples: int = 0
    n_censored: int = 0
    max_iterations: int = 0

    @classmethod
    def from_samples(cls, samples, max_iterations: int) -> "FailureHistogram":
        hist = cls(max_iterations=max_iterations)
        for s in samples:
            hist.add(s)
        return hist

    def add(self, sample: FailureSample) -> None:
        self.n_samples += 1
        if sample.censored:
            self.n_censored += 1
        else:
            self.counts[sample.iterations_survived] = (
                self.counts.get(sample.iterations_survived, 0) + 1
            )

    def merge(self, other: "FailureHistogram") -> None:
        if other.max_iterations != self.max_iterations:
            raise ValueError("histograms have different max_iterations")
        self.n_samples += other.n_samples
        self.n_censored += other.n_censored
        for k, v in other.counts.items():
            self.counts[k] = self.counts.get(k, 0) + v

    @property
    def n_failures(self) -> int:
        return self.n_samples - self.n_censored

    def total_cycles(self) -> int:
        """Cycles run across all shots (failing cycles included)."""
        return (
            sum(k * v for k, v in self.counts.items())
            + self.n_censored * self.max_iterations
        )

    def mean_iterations(self) -> float:
        """Mean recorded iteration count (censored shots at the cap)."""
        return self.total_cycles() / self.n_samples

    def failed_at_first_cycle(self) -> int:
        return self.counts.get(1, 0)


@dataclass
class LogicalT1Estimate:
    t1_logical: float | None
    per_cycle_failure_prob: float | None
    cycle_duration: float
    bootstrap_distribution: list[float] = field(default_factory=list)
    censored_only: bool = False
    n_failures: int = 0
    total_cycles: int = 0


def shot_rng(master_seed: int, shot_index: int) -> np.random.Generator:
    """The shot's private random stream; a pure function of (seed, index)."""
    return np.random.default_rng(np.random.SeedSequence([master_seed, shot_index]))


def run_until_failure(cfg: ExperimentConfig, shot_index: int) -> FailureSample:
    """One seeded shot: encode, then cycle + readout until failure or cap."""
    rng = shot_rng(cfg.master_seed, shot_index)
    defn = code_definition(cfg.code, cfg.topology)
    reg = FactoredState.zeros(defn.layout.n_total, cfg.noise, rng)
    reg.apply_prep_spam()
    defn.encode(reg)
    for iteration in range(1, cfg.max_iterations + 1):
        defn.run_cycle(reg)
        if defn.readout(reg) != 0:
            return FailureSample(shot_index, iteration, censored=False)
    return FailureSample(shot_index, cfg.max_iterations, censored=True)


def _run_shot_range(cfg: ExperimentConfig, start: int, stop: int):
    return [
        (s.iterations_survived, s.censored)
        for s in (run_until_failure(cfg, i) for i in range(start, stop))
    ]


def default_worker_count() -> int:
    env = os.environ.get("QECBENCH_THREADS", "")
    if env.strip():
        count = int(env)
        if count < 1:
            raise ValueError("QECBENCH_THREADS must be >= 1")
        return count
    return os.cpu_count() or 1


def sample_failure_distribution(
    cfg: ExperimentConfig, n_workers: int | None = None
) -> FailureHistogram:
    """Run all shots (possibly across processes) and histogram the results."""
    if n_workers is None:
        n_workers = default_worker_count()
    hist = FailureHistogram(max_iterations=cfg.max_iterations)
    if n_workers <= 1 or cfg.n_samples < 4:
        for rec in _run_shot_range(cfg, 0, cfg.n_samples):
            hist.add(FailureSample(0, rec[0], rec[1]))
        return hist
    chunk = max(1, -(-cfg.n_samples // (n_workers * 4)))
    ranges = [
        (start, min(start + chunk, cfg.n_samples))
        for start in range(0, cfg.n_samples, chunk)
    ]
    with ProcessPoolExecutor(max_workers=n_workers) as pool:
        futures = [pool.submit(_run_shot_range, cfg, a, b) for a, b in ranges]
        for fut in futures:
            for rec in fut.result():
                hist.add(FailureSample(0, rec[0], rec[1]))
    return hist


def estimate_logical_t1(
    hist: FailureHistogram,
    cycle_duration: float,
    bootstrap_resamples: int = 0,
    bootstrap_seed: int | None = None,
) -> LogicalT1Estimate:
    """Censored-geometric fit of the per-cycle failure probability.

    The maximum-likelihood estimate is p = failures / total cycles, where a
    censored shot contributes its full max_iterations cycles and no failure.
    t1 follows as -cycle_duration / ln(1 - p). With zero failures the rate
    is unbounded; the estimate is returned as censored-only with no t1.
    """
    if hist.n_samples < 1:
        raise ValueError("empty histogram")
    if hist.n_failures == 0:
        return LogicalT1Estimate(
            t1_logical=None,
            per_cycle_failure_prob=None,
            cycle_duration=cycle_duration,
            censored_only=True,
            total_cycles=hist.total_cycles(),
        )
    p_hat = hist.n_failures / hist.total_cycles()
    est = LogicalT1Estimate(
        t1_logical=_t1_from_p(p_hat, cycle_duration),
        per_cycle_failure_prob=p_hat,
        cycle_duration=cycle_duration,
        n_failures=hist.n_failures,
        total_cycles=hist.total_cycles(),
    )
    if bootstrap_resamples > 0:
        est.bootstrap_distribution = _bootstrap_t1(
            hist, cycle_duration, bootstrap_resamples, bootstrap_seed
        )
    return est


def _t1_from_p(p_hat: float, cycle_duration: float) -> float:
    log_survive = math.log1p(-p_hat) if p_hat < 1.0 else _T1_FLOOR_LOG
    if log_survive < _T1_FLOOR_LOG:
        log_survive = _T1_FLOOR_LOG
    return -cycle_duration / log_survive


def _bootstrap_t1(hist, cycle_duration, resamples, seed):
    rng = np.random.default_rng(np.random.SeedSequence([seed or 0, 0xB007]))
    outcomes = [(k, k, 1) for k in sorted(hist.counts)]  # (cycles, key, failed)
    outcomes.append((hist.max_iterations, -1, 0))
    weights = np.array(
        [hist.counts[k] for k in sorted(hist.counts)] + [hist.n_censored], float
    )
    probs = weights / weights.sum()
    cycles = np.array([o[0] for o in outcomes], float)
    failed = np.array([o[2] for o in outcomes], float)
    out = []
    for _ in range(resamples):
        draw = rng.multinomial(hist.n_samples, probs)
        total = float(draw @ cycles)
        fails = float(draw @ failed)
        if fails == 0:
            out.append(math.inf)
        else:
            out.append(_t1_from_p(fails / total, cycle_duration))
    return out


def cycle_duration_of(
    code: CodeId, graph: ConnectivityGraph, noise: NoiseModel
) -> float:
    """Wall time of one syndrome-extraction cycle; the t1 time base.

    Counts the unconditional extraction circuit (encoding excluded, data-
    dependent corrections excluded), with MEASURE/RESET at the configured
    measurement duration.
    """
    circuit = code_definition(code, graph).syndrome_circuit(noise.gate_duration)
    return circuit_duration(circuit, noise.measure_duration)


def run_experiment(
    cfg: ExperimentConfig, n_workers: int | None = None
) -> tuple[FailureHistogram, LogicalT1Estimate]:
    hist = sample_failure_distribution(cfg, n_workers=n_workers)
    duration = cycle_duration_of(cfg.code, cfg.topology, cfg.noise)
    est = estimate_logical_t1(
        hist,
        duration,
        bootstrap_resamples=cfg.bootstrap_resamples,
        bootstrap_seed=cfg.master_seed,
    )
    return hist, est
