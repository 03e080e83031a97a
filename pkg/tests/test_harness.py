import math

import numpy as np
import pytest

from conftest import three_qubit_first_cycle_failure
from qecbench.codes import CodeId
from qecbench.connectivity import ConnectivityGraph
from qecbench.harness import (
    ExperimentConfig,
    FailureHistogram,
    FailureSample,
    cycle_duration_of,
    estimate_logical_t1,
    run_until_failure,
    sample_failure_distribution,
    shot_rng,
)
from qecbench.noise import NoiseModel

G5 = ConnectivityGraph.all_to_all(5)


def _config(noise, samples=50, max_iterations=50, seed=7, **kw):
    return ExperimentConfig(
        code=CodeId.THREE_QUBIT,
        topology=G5,
        noise=noise,
        n_samples=samples,
        max_iterations=max_iterations,
        master_seed=seed,
        **kw,
    )


def test_noiseless_run_censors_every_shot():
    cfg = _config(NoiseModel.disabled(5), samples=20, max_iterations=10)
    hist = sample_failure_distribution(cfg, n_workers=1)
    assert hist.n_censored == 20
    assert hist.counts == {}
    assert hist.n_failures == 0


def test_certain_measurement_error_fails_first_cycle():
    """p_meas = 1 flips every readout bit, so the majority decodes to 1."""
    noise = NoiseModel.uniform(5, p_meas=1.0)
    cfg = _config(noise, samples=10, max_iterations=9)
    hist = sample_failure_distribution(cfg, n_workers=1)
    assert hist.counts == {1: 10}
    assert hist.n_censored == 0


def test_shot_determinism():
    noise = NoiseModel.uniform(5, p1=0.05, p_meas=0.02)
    cfg = _config(noise, samples=5, max_iterations=30)
    a = [run_until_failure(cfg, i) for i in range(5)]
    b = [run_until_failure(cfg, i) for i in range(5)]
    assert a == b
    other = _config(noise, samples=5, max_iterations=30, seed=8)
    c = [run_until_failure(other, i) for i in range(5)]
    assert a != c


def test_histograms_identical_across_worker_counts():
    noise = NoiseModel.uniform(5, p1=0.08, p_meas=0.01)
    cfg = _config(noise, samples=40, max_iterations=25, seed=3)
    h1 = sample_failure_distribution(cfg, n_workers=1)
    h2 = sample_failure_distribution(cfg, n_workers=2)
    assert h1.counts == h2.counts
    assert h1.n_censored == h2.n_censored


def test_censoring_bookkeeping():
    noise = NoiseModel.uniform(5, p1=0.02)
    cfg = _config(noise, samples=60, max_iterations=8, seed=5)
    hist = sample_failure_distribution(cfg, n_workers=1)
    assert hist.n_samples == 60
    assert sum(hist.counts.values()) + hist.n_censored == 60
    assert all(1 <= k <= 8 for k in hist.counts)


def test_shot_rng_streams_are_independent():
    a = shot_rng(42, 0).random(4)
    b = shot_rng(42, 1).random(4)
    c = shot_rng(42, 0).random(4)
    assert np.array_equal(a, c)
    assert not np.array_equal(a, b)


# -- estimator ---------------------------------------------------------------


def test_t1_estimate_synthetic_geometric():
    """10^5 geometric draws at p = 0.1 recover t1 = -1us/ln(0.9) within 2%."""
    rng = np.random.default_rng(1234)
    p = 0.1
    draws = rng.geometric(p, size=100_000)
    hist = FailureHistogram(max_iterations=10 ** 9)
    for k in draws:
        hist.add(FailureSample(0, int(k), censored=False))
    est = estimate_logical_t1(hist, cycle_duration=1e-6)
    expected = -1e-6 / math.log(0.9)
    assert expected == pytest.approx(9.49122158e-6, rel=1e-8)
    assert est.t1_logical == pytest.approx(expected, rel=0.02)


def test_t1_geometric_goodness_of_fit():
    from scipy import stats

    rng = np.random.default_rng(99)
    p = 0.1
    draws = rng.geometric(p, size=10_000)
    hist = FailureHistogram(max_iterations=10 ** 9)
    for k in draws:
        hist.add(FailureSample(0, int(k), censored=False))
    p_hat = hist.n_failures / hist.total_cycles()
    kmax = 40
    observed = np.array(
        [hist.counts.get(k, 0) for k in range(1, kmax)]
        + [sum(v for k, v in hist.counts.items() if k >= kmax)],
        dtype=float,
    )
    expected = np.array(
        [p_hat * (1 - p_hat) ** (k - 1) for k in range(1, kmax)]
        + [(1 - p_hat) ** (kmax - 1)]
    ) * hist.n_samples
    keep = expected >= 5
    chi2 = stats.chisquare(observed[keep], expected[keep] * observed[keep].sum()
                           / expected[keep].sum(), ddof=1)
    assert chi2.pvalue > 0.01


def test_t1_scales_linearly_with_cycle_duration():
    hist = FailureHistogram(max_iterations=100)
    for k, n in [(1, 5), (3, 7), (9, 2)]:
        for _ in range(n):
            hist.add(FailureSample(0, k, censored=False))
    est1 = estimate_logical_t1(hist, cycle_duration=1e-6)
    est2 = estimate_logical_t1(hist, cycle_duration=2e-6)
    assert est2.t1_logical == pytest.approx(2 * est1.t1_logical)
    assert est2.per_cycle_failure_prob == est1.per_cycle_failure_prob


def test_t1_all_fail_first_cycle_edge():
    hist = FailureHistogram(max_iterations=100)
    for _ in range(10):
        hist.add(FailureSample(0, 1, censored=False))
    est = estimate_logical_t1(hist, cycle_duration=1e-6)
    assert est.per_cycle_failure_prob == 1.0
    assert est.t1_logical > 0  # clamped to the cycle-scale guard
    assert est.t1_logical < 1e-6


def test_t1_censored_only_marker():
    hist = FailureHistogram(max_iterations=50)
    for _ in range(5):
        hist.add(FailureSample(0, 50, censored=True))
    est = estimate_logical_t1(hist, cycle_duration=1e-6)
    assert est.censored_only
    assert est.t1_logical is None
    assert est.per_cycle_failure_prob is None


def test_censored_shots_enter_the_denominator():
    hist = FailureHistogram(max_iterations=10)
    hist.add(FailureSample(0, 2, censored=False))
    hist.add(FailureSample(1, 10, censored=True))
    est = estimate_logical_t1(hist, cycle_duration=1.0)
    assert est.per_cycle_failure_prob == pytest.approx(1 / 12)


def test_bootstrap_distribution_reproducible():
    rng = np.random.default_rng(5)
    hist = FailureHistogram(max_iterations=100)
    for k in rng.geometric(0.2, size=500):
        hist.add(FailureSample(0, int(k), censored=False))
    a = estimate_logical_t1(hist, 1e-6, bootstrap_resamples=50, bootstrap_seed=9)
    b = estimate_logical_t1(hist, 1e-6, bootstrap_resamples=50, bootstrap_seed=9)
    assert a.bootstrap_distribution == b.bootstrap_distribution
    assert len(a.bootstrap_distribution) == 50
    spread = np.std(a.bootstrap_distribution)
    assert 0 < spread < a.t1_logical  # sane dispersion


def test_cycle_duration_of_three_qubit():
    noise = NoiseModel.uniform(5, gate_duration=100e-9)
    assert cycle_duration_of(CodeId.THREE_QUBIT, G5, noise) == pytest.approx(400e-9)
    line = ConnectivityGraph.line(5)
    assert cycle_duration_of(CodeId.THREE_QUBIT, line, noise) > 400e-9
    zero = NoiseModel.uniform(5, gate_duration=0.0)
    assert cycle_duration_of(CodeId.THREE_QUBIT, G5, zero) == 0.0


def test_config_validation():
    noise = NoiseModel.disabled(5)
    with pytest.raises(ValueError):
        _config(noise, samples=0)
    with pytest.raises(ValueError):
        _config(noise, max_iterations=0)
    with pytest.raises(ValueError):
        ExperimentConfig(
            code=CodeId.STEANE,
            topology=G5,
            noise=noise,
            n_samples=1,
            max_iterations=1,
            master_seed=0,
        )


def test_empirical_first_cycle_failure_matches_branch_oracle():
    """Sampling vs exact enumeration, small-scale version of the criterion."""
    noise = NoiseModel.uniform(
        5, p1=0.1, depolarization=True, relaxation=False, dephasing=False, spam=False
    )
    exact = three_qubit_first_cycle_failure(noise)
    cfg = _config(noise, samples=2000, max_iterations=1, seed=21)
    hist = sample_failure_distribution(cfg, n_workers=1)
    empirical = hist.n_failures / hist.n_samples
    sigma = math.sqrt(exact * (1 - exact) / cfg.n_samples)
    assert abs(empirical - exact) <= 3 * sigma, (empirical, exact, sigma)


def test_mean_survival_decreases_with_depolarization():
    """Mean iterations-to-failure is non-increasing in p1, with the extremes
    separated by at least three standard errors."""
    stats = []
    for p1 in (0.001, 0.01, 0.05, 0.1):
        noise = NoiseModel.uniform(
            5, p1=p1, relaxation=False, dephasing=False, spam=False
        )
        cfg = _config(noise, samples=1000, max_iterations=150, seed=13)
        hist = sample_failure_distribution(cfg, n_workers=2)
        values = [k for k, v in hist.counts.items() for _ in range(v)]
        values += [cfg.max_iterations] * hist.n_censored
        values = np.asarray(values, dtype=float)
        stats.append((values.mean(), values.std() / math.sqrt(len(values))))
    means = [m for m, _ in stats]
    assert all(a >= b for a, b in zip(means, means[1:])), means
    gap_sigma = math.hypot(stats[0][1], stats[-1][1])
    assert means[0] - means[-1] > 3 * gap_sigma


def test_worker_count_env_override(monkeypatch):
    from qecbench.harness import default_worker_count

    monkeypatch.setenv("QECBENCH_THREADS", "3")
    assert default_worker_count() == 3
    monkeypatch.setenv("QECBENCH_THREADS", "0")
    with pytest.raises(ValueError):
        default_worker_count()
    monkeypatch.delenv("QECBENCH_THREADS")
    assert default_worker_count() >= 1
