"""Gate set, circuits, and full-matrix helpers used by the routing oracle."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .states import PAULI_X, PAULI_Y, PAULI_Z

SINGLE_QUBIT_KINDS = ("X", "Y", "Z", "H")
TWO_QUBIT_KINDS = ("CNOT", "CZ")
NON_UNITARY_KINDS = ("MEASURE", "RESET")
GATE_KINDS = SINGLE_QUBIT_KINDS + TWO_QUBIT_KINDS + NON_UNITARY_KINDS

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
CNOT_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
CZ_MATRIX = np.diag([1, 1, 1, -1]).astype(complex)

UNITARIES = {
    "X": PAULI_X,
    "Y": PAULI_Y,
    "Z": PAULI_Z,
    "H": HADAMARD,
    "CNOT": CNOT_MATRIX,
    "CZ": CZ_MATRIX,
}


@dataclass(frozen=True)
class Gate:
    """One circuit operation; for CNOT/CZ the control is listed first."""

    kind: str
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind in TWO_QUBIT_KINDS else 1
        if len(self.targets) != arity:
            raise ValueError(f"{self.kind} takes {arity} target(s), got {self.targets}")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"duplicate targets in {self}")

    @property
    def is_unitary(self) -> bool:
        return self.kind not in NON_UNITARY_KINDS


@dataclass
class Circuit:
    """An ordered gate list over a fixed register, with a uniform gate time."""

    n_qubits: int
    ops: list[Gate] = field(default_factory=list)
    gate_duration: float = 1e-7  # seconds per unitary gate, uniform across kinds

    def __post_init__(self):
        for g in self.ops:
            if any(t >= self.n_qubits or t < 0 for t in g.targets):
                raise ValueError(f"gate {g} outside {self.n_qubits}-qubit register")

    def append(self, gate: Gate) -> None:
        if any(t >= self.n_qubits or t < 0 for t in gate.targets):
            raise ValueError(f"gate {gate} outside {self.n_qubits}-qubit register")
        self.ops.append(gate)

    def extend(self, gates) -> None:
        for g in gates:
            self.append(g)

    def unitary_gate_count(self) -> int:
        return sum(1 for g in self.ops if g.is_unitary)


def circuit_duration(circuit: Circuit, measure_duration: float = 0.0) -> float:
    """Wall time of a circuit: unitary gates take gate_duration each,
    MEASURE/RESET take measure_duration (default 0)."""
    n_unitary = circuit.unitary_gate_count()
    n_other = len(circuit.ops) - n_unitary
    return n_unitary * circuit.gate_duration + n_other * measure_duration


def embed_operator(op: np.ndarray, targets, n_qubits: int) -> np.ndarray:
    """Expand a local operator to the full 2^n x 2^n matrix by explicit
    index bookkeeping (identity on non-targets).

    Deliberately independent of the tensor-contraction path so it can serve
    as its correctness oracle. Intended for small n only.
    """
    op = np.asarray(op, dtype=complex)
    targets = list(targets)
    k = len(targets)
    dim = 2 ** n_qubits
    shifts = [n_qubits - 1 - t for t in targets]
    full = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        sub_col = 0
        for s in shifts:
            sub_col = (sub_col << 1) | ((col >> s) & 1)
        rest = col
        for s in shifts:
            rest &= ~(1 << s)
        for sub_row in range(2 ** k):
            row = rest
            for pos, s in enumerate(shifts):
                if (sub_row >> (k - 1 - pos)) & 1:
                    row |= 1 << s
            full[row, col] += op[sub_row, sub_col]
    return full


def composite_unitary(circuit: Circuit) -> np.ndarray:
    """Full unitary of a measurement-free circuit (oracle helper, small n)."""
    dim = 2 ** circuit.n_qubits
    total = np.eye(dim, dtype=complex)
    for g in circuit.ops:
        if not g.is_unitary:
            raise ValueError("circuit contains non-unitary ops")
        total = embed_operator(UNITARIES[g.kind], g.targets, circuit.n_qubits) @ total
    return total


def gates_unitary(gates, n_qubits: int) -> np.ndarray:
    """Full unitary of a plain gate list."""
    return composite_unitary(Circuit(n_qubits, list(gates)))
