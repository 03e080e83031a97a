import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import partial_trace
from qecbench.gates import Gate, UNITARIES
from qecbench.noise import (
    NoiseModel,
    QubitNoiseParams,
    apply_post_gate_noise,
    apply_spam,
    dephasing_channel,
    depolarizing_channel,
    relaxation_channel,
    spam_channel,
)
from qecbench.states import DensityMatrix, random_density_matrix


def kraus_completeness_defect(channel) -> float:
    dim = channel.operators[0].shape[0]
    total = sum(k.conj().T @ k for k in channel.operators)
    return float(np.abs(total - np.eye(dim)).max())


@pytest.mark.parametrize("p1", [0.0, 1e-4, 0.3, 0.75, 1.0])
def test_depolarizing_completeness_exact(p1):
    assert kraus_completeness_defect(depolarizing_channel(p1)) <= 1e-15


def test_depolarizing_examples():
    rho = DensityMatrix.basis_state(1, "0")
    rho.apply_channel(depolarizing_channel(0.0), [0])
    np.testing.assert_allclose(rho.data, np.diag([1.0, 0.0]), atol=1e-15)

    rho = DensityMatrix.basis_state(1, "0")
    rho.apply_channel(depolarizing_channel(0.3), [0])
    np.testing.assert_allclose(rho.data, np.diag([0.8, 0.2]), atol=1e-14)

    # at p1 = 3/4 the channel is fully depolarizing
    rng = np.random.default_rng(5)
    rho = random_density_matrix(1, rng)
    rho.apply_channel(depolarizing_channel(0.75), [0])
    np.testing.assert_allclose(rho.data, np.eye(2) / 2, atol=1e-12)


def test_depolarizing_rejects_bad_probability():
    with pytest.raises(ValueError):
        depolarizing_channel(-0.1)
    with pytest.raises(ValueError):
        depolarizing_channel(1.1)


def test_relaxation_examples():
    ch = relaxation_channel(0.0, 100e-6)
    rho = DensityMatrix.basis_state(1, "1")
    rho.apply_channel(ch, [0])
    np.testing.assert_allclose(rho.data, np.diag([0.0, 1.0]), atol=1e-15)

    # T_g / T1 = 0.1: reset weight 1 - exp(-0.1)
    p_reset = 1.0 - math.exp(-0.1)
    assert p_reset == pytest.approx(0.09516258196404048)
    rho = DensityMatrix.basis_state(1, "1")
    rho.apply_channel(relaxation_channel(10e-9, 100e-9), [0])
    np.testing.assert_allclose(rho.data, np.diag([p_reset, 1 - p_reset]), atol=1e-14)

    # very long gates decay everything to the ground state
    rng = np.random.default_rng(6)
    rho = random_density_matrix(1, rng)
    rho.apply_channel(relaxation_channel(1.0, 1e-9), [0])
    np.testing.assert_allclose(rho.data, np.diag([1.0, 0.0]), atol=1e-12)

    with pytest.raises(ValueError):
        relaxation_channel(1e-7, 0.0)
    assert kraus_completeness_defect(relaxation_channel(1e-7, 1e-4)) <= 1e-15


def test_dephasing_examples():
    ch = dephasing_channel(0.0, 100e-6)
    plus = DensityMatrix.from_pure(1, [1, 1])
    rho = plus.copy()
    rho.apply_channel(ch, [0])
    np.testing.assert_allclose(rho.data, plus.data, atol=1e-15)

    p = 1.0 - math.exp(-0.25)
    rho = plus.copy()
    rho.apply_channel(dephasing_channel(25e-9, 100e-9), [0])
    expected = np.array([[0.5, 0.5 * (1 - p)], [0.5 * (1 - p), 0.5]])
    np.testing.assert_allclose(rho.data, expected, atol=1e-14)

    # any diagonal state is untouched
    rho = DensityMatrix(1, np.diag([0.3, 0.7]))
    rho.apply_channel(dephasing_channel(1e-7, 5e-8), [0])
    np.testing.assert_allclose(rho.data, np.diag([0.3, 0.7]), atol=1e-14)

    assert kraus_completeness_defect(dephasing_channel(1e-7, 1e-4)) <= 1e-15


def test_spam_examples():
    rho = DensityMatrix.basis_state(1, "0")
    rho.apply_channel(spam_channel(0.0), [0])
    np.testing.assert_allclose(rho.data, np.diag([1.0, 0.0]), atol=1e-15)

    rho = DensityMatrix.basis_state(1, "0")
    rho.apply_channel(spam_channel(0.02), [0])
    np.testing.assert_allclose(rho.data, np.diag([0.98, 0.02]), atol=1e-14)

    rho = DensityMatrix.basis_state(1, "0")
    rho.apply_channel(spam_channel(1.0), [0])
    np.testing.assert_allclose(rho.data, np.diag([0.0, 1.0]), atol=1e-15)


@settings(max_examples=40, deadline=None)
@given(
    tg=st.floats(0.0, 1e-5),
    t=st.floats(1e-9, 1e-3),
    p=st.floats(0.0, 1.0),
)
def test_all_channels_complete(tg, t, p):
    for ch in (
        depolarizing_channel(p),
        relaxation_channel(tg, t),
        dephasing_channel(tg, t),
        spam_channel(p),
    ):
        assert kraus_completeness_defect(ch) <= 1e-12


def test_noise_params_validation():
    with pytest.raises(ValueError):
        QubitNoiseParams(p1=1.5)
    with pytest.raises(ValueError):
        QubitNoiseParams(t1=-1.0)
    with pytest.warns(UserWarning, match="exceeds the physical bound"):
        QubitNoiseParams(t1=1e-6, t2=3e-6)
    # the boundary itself is fine
    QubitNoiseParams(t1=1e-6, t2=2e-6)


def test_post_gate_noise_disabled_is_identity(rng):
    model = NoiseModel.disabled(2)
    rho = random_density_matrix(2, rng)
    before = rho.data.copy()
    apply_post_gate_noise(rho, Gate("CNOT", (0, 1)), model)
    np.testing.assert_allclose(rho.data, before, atol=1e-15)


def test_post_gate_noise_single_qubit_example():
    # X then depolarization (T_g = 0 disables decay): diag(2p/3, 1-2p/3)
    model = NoiseModel.uniform(1, p1=0.3, gate_duration=0.0)
    rho = DensityMatrix.basis_state(1, "0")
    gate = Gate("X", (0,))
    rho.apply_local(UNITARIES["X"], gate.targets)
    apply_post_gate_noise(rho, gate, model)
    np.testing.assert_allclose(rho.data, np.diag([0.2, 0.8]), atol=1e-14)


def test_cnot_control_receives_no_depolarization():
    model = NoiseModel.uniform(2, p1=0.4, gate_duration=0.0)
    rho = DensityMatrix.basis_state(2, "00")
    gate = Gate("CNOT", (0, 1))
    rho.apply_local(UNITARIES["CNOT"], gate.targets)
    apply_post_gate_noise(rho, gate, model)
    control = partial_trace(rho.data, [0], 2)
    target = partial_trace(rho.data, [1], 2)
    np.testing.assert_allclose(control, np.diag([1.0, 0.0]), atol=1e-14)
    np.testing.assert_allclose(target, np.diag([1 - 0.8 * 0.4 / 1.2, 0.8 * 0.4 / 1.2]),
                               atol=1e-12)


def test_relaxation_and_dephasing_hit_every_qubit():
    model = NoiseModel.uniform(3, t1=1e-6, t2=1e-6, gate_duration=1e-7,
                               depolarization=False)
    rho = DensityMatrix.basis_state(3, "111")
    apply_post_gate_noise(rho, Gate("X", (0,)), model)
    g = 1.0 - math.exp(-0.1)
    for q in range(3):
        marginal = partial_trace(rho.data, [q], 3)
        np.testing.assert_allclose(marginal, np.diag([g, 1 - g]), atol=1e-12)


def test_fixed_channel_order_regression():
    """Depolarize -> relax -> dephase, frozen one-gate evolution."""
    model = NoiseModel.uniform(1, p1=0.2, t1=1e-6, t2=2e-6, gate_duration=3e-7)
    rho = DensityMatrix.from_pure(1, [1, 1j])
    apply_post_gate_noise(rho, Gate("X", (0,)), model)
    g = 1.0 - math.exp(-0.3)
    s = math.exp(-0.15)
    # X|psi> has off-diagonal -0.5j; depolarization scales it by 1 - 4p/3,
    # relaxation by sqrt(1-g), dephasing by 1 - p_dephase = e^(-Tg/T2)
    off = -0.5j * (1 - 0.8 / 3) * math.sqrt(1 - g) * s
    top = (0.5 + 0.2 / 3 * 0.0) * 1.0  # populations are even before decay
    expected = np.array(
        [[0.5 + 0.5 * g, off], [np.conj(off), (1 - g) * 0.5]], dtype=complex
    )
    assert top == 0.5
    np.testing.assert_allclose(rho.data, expected, atol=1e-12)


def test_apply_spam_prep_statistics():
    model = NoiseModel.uniform(3, p_prep=0.01)
    rho = DensityMatrix.basis_state(3, "000")
    apply_spam(rho, "prep", range(3), model)
    assert rho.data[0, 0].real == pytest.approx(0.99 ** 3)


def test_apply_spam_only_touches_listed_qubits():
    model = NoiseModel.uniform(2, p_meas=0.25)
    rho = DensityMatrix.basis_state(2, "00")
    apply_spam(rho, "meas", [1], model)
    np.testing.assert_allclose(partial_trace(rho.data, [0], 2),
                               np.diag([1.0, 0.0]), atol=1e-14)
    np.testing.assert_allclose(partial_trace(rho.data, [1], 2),
                               np.diag([0.75, 0.25]), atol=1e-14)
    with pytest.raises(ValueError):
        apply_spam(rho, "other", [0], model)


@settings(max_examples=25, deadline=None)
@given(p=st.floats(0.0, 1.0), seed=st.integers(0, 2 ** 31))
def test_purity_never_increases_under_unital_channels(p, seed):
    gen = np.random.default_rng(seed)
    for ch in (depolarizing_channel(p), dephasing_channel(p * 1e-7 + 1e-12, 1e-7)):
        rho = random_density_matrix(2, gen)
        before = rho.purity()
        rho.apply_channel(ch, [int(gen.integers(2))])
        assert rho.purity() <= before + 1e-12


def test_relaxation_fixed_point_is_ground_state():
    ch = relaxation_channel(1e-7, 1e-7)
    rho = DensityMatrix.basis_state(1, "0")
    rho.apply_channel(ch, [0])
    np.testing.assert_allclose(rho.data, np.diag([1.0, 0.0]), atol=1e-15)
    mixed = DensityMatrix(1, np.eye(2) / 2)
    mixed.apply_channel(ch, [0])
    assert mixed.data[0, 0].real > 0.5  # not unital


def test_uniform_model_defaults_are_noiseless():
    model = NoiseModel.uniform(4)
    rho = DensityMatrix.basis_state(4, "0101")
    before = rho.data.copy()
    apply_post_gate_noise(rho, Gate("H", (2,)), model)
    apply_spam(rho, "prep", range(4), model)
    np.testing.assert_allclose(rho.data, before, atol=1e-15)
