"""Transmon-style error channels and the schedule that applies them.

Four channels are modeled per qubit, each parameterized by physical
quantities: depolarization (probability p1 per gate), relaxation (T1),
dephasing (T2), and bit-flip state-preparation/measurement errors.

Schedule: after every unitary gate, depolarization hits the manipulated
qubit (for CNOT/CZ only the target; the control is not driven), then
relaxation followed by dephasing hit every qubit in the register, using
the gate time T_g. Preparation errors fire once after the initial state
is set; measurement errors fire on each qubit right before it is read.

Relaxation and dephasing are composed sequentially as two CPTP channels;
their five operators do not form a single trace-preserving set, so a
combined one-shot map is not used. Dephasing takes T2 as given, which
slightly double-counts the decoherence already implied by T1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .gates import Gate
from .states import DensityMatrix, KrausChannel, PAULI_X, PAULI_Y, PAULI_Z


def _check_prob(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {value}")


@dataclass(frozen=True)
class QubitNoiseParams:
    """Physical noise parameters of one qubit.

    Times are in seconds; infinite T1/T2 disable the corresponding decay.
    T2 > 2*T1 is unphysical for a Markovian qubit and triggers a warning
    but is not rejected.
    """

    p1: float = 0.0
    t1: float = math.inf
    t2: float = math.inf
    p_prep: float = 0.0
    p_meas: float = 0.0

    def __post_init__(self):
        _check_prob("p1", self.p1)
        _check_prob("p_prep", self.p_prep)
        _check_prob("p_meas", self.p_meas)
        if self.t1 <= 0 or self.t2 <= 0:
            raise ValueError("T1 and T2 must be positive")
        if self.t2 > 2 * self.t1:
            warnings.warn(
                f"T2 = {self.t2:g} s exceeds the physical bound 2*T1 = "
                f"{2 * self.t1:g} s",
                stacklevel=2,
            )


@dataclass(frozen=True)
class NoiseModel:
    """Per-qubit noise parameters plus channel enable flags and timing."""

    per_qubit: tuple[QubitNoiseParams, ...]
    gate_duration: float = 1e-7
    depolarization: bool = True
    relaxation: bool = True
    dephasing: bool = True
    spam: bool = True
    measure_duration: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "per_qubit", tuple(self.per_qubit))
        if self.gate_duration < 0 or self.measure_duration < 0:
            raise ValueError("durations must be non-negative")

    @property
    def n_qubits(self) -> int:
        return len(self.per_qubit)

    @classmethod
    def uniform(
        cls,
        n_qubits: int,
        p1: float = 0.0,
        t1: float = math.inf,
        t2: float = math.inf,
        gate_duration: float = 1e-7,
        p_prep: float = 0.0,
        p_meas: float = 0.0,
        **flags,
    ) -> "NoiseModel":
        """Identical parameters on every qubit (the common starting point)."""
        params = QubitNoiseParams(p1=p1, t1=t1, t2=t2, p_prep=p_prep, p_meas=p_meas)
        return cls(per_qubit=(params,) * n_qubits, gate_duration=gate_duration, **flags)

    @classmethod
    def disabled(cls, n_qubits: int, gate_duration: float = 1e-7) -> "NoiseModel":
        return cls.uniform(
            n_qubits,
            gate_duration=gate_duration,
            depolarization=False,
            relaxation=False,
            dephasing=False,
            spam=False,
        )

    def check_register(self, n_qubits: int) -> None:
        if self.n_qubits != n_qubits:
            raise ValueError(
                f"noise model covers {self.n_qubits} qubits, register has {n_qubits}"
            )


# -- channel constructors --------------------------------------------------


def depolarizing_channel(p1: float) -> KrausChannel:
    """Random X/Y/Z kicks with total probability p1 (p1/3 each)."""
    _check_prob("p1", p1)
    return KrausChannel(
        [
            math.sqrt(1.0 - p1) * np.eye(2),
            math.sqrt(p1 / 3.0) * PAULI_X,
            math.sqrt(p1 / 3.0) * PAULI_Z,
            math.sqrt(p1 / 3.0) * PAULI_Y,
        ]
    )


def reset_probability(gate_duration: float, t1: float) -> float:
    """p_reset = 1 - exp(-T_g / T1), the per-step decay to |0>."""
    if gate_duration < 0:
        raise ValueError("gate duration must be non-negative")
    if t1 <= 0:
        raise ValueError("T1 must be positive")
    return 1.0 - math.exp(-gate_duration / t1)


def dephase_probability(gate_duration: float, t2: float) -> float:
    """p_dephase = 1 - exp(-T_g / T2), the per-step phase-flip weight."""
    if gate_duration < 0:
        raise ValueError("gate duration must be non-negative")
    if t2 <= 0:
        raise ValueError("T2 must be positive")
    return 1.0 - math.exp(-gate_duration / t2)


def relaxation_channel(gate_duration: float, t1: float) -> KrausChannel:
    """Amplitude damping toward |0> over one gate time."""
    p = reset_probability(gate_duration, t1)
    k0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - p)]], dtype=complex)
    k1 = np.array([[0.0, math.sqrt(p)], [0.0, 0.0]], dtype=complex)
    return KrausChannel([k0, k1])


def dephasing_channel(gate_duration: float, t2: float) -> KrausChannel:
    """Phase damping: diagonal is untouched, coherences shrink by 1 - p_dephase."""
    p = dephase_probability(gate_duration, t2)
    k2 = math.sqrt(1.0 - p) * np.eye(2, dtype=complex)
    k3 = math.sqrt(p) * np.diag([1.0, 0.0]).astype(complex)
    k4 = math.sqrt(p) * np.diag([0.0, 1.0]).astype(complex)
    return KrausChannel([k2, k3, k4])


def spam_channel(p2: float) -> KrausChannel:
    """Bit-flip channel modeling preparation or readout error."""
    _check_prob("p2", p2)
    return KrausChannel(
        [math.sqrt(1.0 - p2) * np.eye(2), math.sqrt(p2) * PAULI_X]
    )


# -- schedule ---------------------------------------------------------------


def depolarization_targets(gate: Gate) -> tuple[int, ...]:
    """Qubits that receive depolarization after a gate: the single target
    for 1-qubit gates, only the (second-listed) target for CNOT/CZ."""
    if not gate.is_unitary:
        return ()
    if len(gate.targets) == 1:
        return gate.targets
    return (gate.targets[1],)


def apply_post_gate_noise(rho: DensityMatrix, gate: Gate, model: NoiseModel) -> None:
    """One scheduled error step after a unitary gate (reference path).

    Order is fixed: depolarization on the manipulated qubit(s), then
    relaxation and dephasing on every register qubit.
    """
    if not gate.is_unitary:
        raise ValueError("post-gate noise applies to unitary gates only")
    model.check_register(rho.n_qubits)
    if model.depolarization:
        for q in depolarization_targets(gate):
            p1 = model.per_qubit[q].p1
            if p1 > 0.0:
                rho.apply_channel(depolarizing_channel(p1), [q])
    apply_idle_noise(rho, model, model.gate_duration)


def apply_idle_noise(rho: DensityMatrix, model: NoiseModel, duration: float) -> None:
    """Relaxation then dephasing on every qubit for a given elapsed time."""
    if duration <= 0.0:
        return
    model.check_register(rho.n_qubits)
    if model.relaxation:
        for q in range(rho.n_qubits):
            if math.isfinite(model.per_qubit[q].t1):
                rho.apply_channel(relaxation_channel(duration, model.per_qubit[q].t1), [q])
    if model.dephasing:
        for q in range(rho.n_qubits):
            if math.isfinite(model.per_qubit[q].t2):
                rho.apply_channel(dephasing_channel(duration, model.per_qubit[q].t2), [q])


def apply_spam(rho: DensityMatrix, which: str, qubits, model: NoiseModel) -> None:
    """Bit-flip SPAM on the listed qubits ('prep' or 'meas' probabilities)."""
    if which not in ("prep", "meas"):
        raise ValueError(f"which must be 'prep' or 'meas', got {which!r}")
    model.check_register(rho.n_qubits)
    if not model.spam:
        return
    for q in qubits:
        params = model.per_qubit[q]
        p = params.p_prep if which == "prep" else params.p_meas
        if p > 0.0:
            rho.apply_channel(spam_channel(p), [q])
