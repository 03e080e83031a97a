"""Dense density-matrix states with local-operator application.

The register convention used throughout the package: qubit 0 is the most
significant bit of the computational-basis index, so for a two-qubit
register the state |10> (qubit 0 in |1>, qubit 1 in |0>) sits at index 2.
States are stored as full 2^n x 2^n complex128 matrices; operators are
applied by contracting only the axes of the qubits they act on, so a
full-register gate matrix is never materialized.
"""

from __future__ import annotations

import numpy as np

MAX_QUBITS = 12

_I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"I": _I2, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}


class KrausChannel:
    """A CPTP map given by a finite set of same-arity Kraus operators.

    Completeness (sum_i K_i^dag K_i = I) is enforced at construction; a
    channel that fails it by more than `atol` raises ValueError.
    """

    __slots__ = ("operators", "arity")

    def __init__(self, operators, atol: float = 1e-10):
        ops = [np.asarray(k, dtype=complex) for k in operators]
        if not ops:
            raise ValueError("channel needs at least one Kraus operator")
        dim = ops[0].shape[0]
        if dim not in (2, 4):
            raise ValueError(f"Kraus operators must be 2x2 or 4x4, got {ops[0].shape}")
        for k in ops:
            if k.shape != (dim, dim):
                raise ValueError("all Kraus operators must share one shape")
            if not np.all(np.isfinite(k)):
                raise ValueError("Kraus operator has non-finite entries")
        total = sum(k.conj().T @ k for k in ops)
        defect = np.abs(total - np.eye(dim)).max()
        if defect > atol:
            raise ValueError(f"channel is not trace preserving: |sum K^dag K - I| = {defect:.3e}")
        self.operators = ops
        self.arity = 1 if dim == 2 else 2

    def __len__(self):
        return len(self.operators)

    def __iter__(self):
        return iter(self.operators)


def basis_index(bitstring: str) -> int:
    """Computational-basis index of a bitstring under the qubit-0-MSB convention."""
    return int(bitstring, 2)


def pure_state_vector(bitstring: str) -> np.ndarray:
    vec = np.zeros(2 ** len(bitstring), dtype=complex)
    vec[basis_index(bitstring)] = 1.0
    return vec


class DensityMatrix:
    """A 2^n x 2^n Hermitian unit-trace operator over n qubits (n <= 12)."""

    __slots__ = ("n_qubits", "data")

    def __init__(self, n_qubits: int, data: np.ndarray):
        if not 1 <= n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in 1..{MAX_QUBITS}, got {n_qubits}")
        dim = 2 ** n_qubits
        data = np.asarray(data, dtype=complex)
        if data.shape != (dim, dim):
            raise ValueError(f"expected shape {(dim, dim)}, got {data.shape}")
        self.n_qubits = n_qubits
        self.data = np.ascontiguousarray(data)

    @classmethod
    def basis_state(cls, n_qubits: int, bitstring: str) -> "DensityMatrix":
        """The pure state |b><b| for a computational-basis label b."""
        if len(bitstring) != n_qubits or set(bitstring) - {"0", "1"}:
            raise ValueError(f"bitstring {bitstring!r} is not a {n_qubits}-bit label")
        dim = 2 ** n_qubits
        rho = np.zeros((dim, dim), dtype=complex)
        idx = basis_index(bitstring)
        rho[idx, idx] = 1.0
        return cls(n_qubits, rho)

    @classmethod
    def from_pure(cls, n_qubits: int, amplitudes) -> "DensityMatrix":
        psi = np.asarray(amplitudes, dtype=complex)
        if psi.shape != (2 ** n_qubits,):
            raise ValueError("amplitude vector has wrong length")
        psi = psi / np.linalg.norm(psi)
        return cls(n_qubits, np.outer(psi, psi.conj()))

    def copy(self) -> "DensityMatrix":
        return DensityMatrix(self.n_qubits, self.data.copy())

    # -- metrics ---------------------------------------------------------

    def trace(self) -> float:
        return float(np.trace(self.data).real)

    def purity(self) -> float:
        return float(np.einsum("ij,ji->", self.data, self.data).real)

    def hermiticity_defect(self) -> float:
        return float(np.abs(self.data - self.data.conj().T).max())

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue; an eigendecomposition, so test/debug use only."""
        return float(np.linalg.eigvalsh(self.data)[0])

    def fidelity_with_pure(self, psi) -> float:
        """<psi|rho|psi> for a normalized pure-state amplitude vector."""
        psi = np.asarray(psi, dtype=complex)
        if psi.shape != (2 ** self.n_qubits,):
            raise ValueError("state-vector dimension mismatch")
        val = np.vdot(psi, self.data @ psi)
        return float(min(max(val.real, 0.0), 1.0))

    def expectation_pauli(self, label: str) -> float:
        """<P> = Tr(P rho) for a Pauli string like "IXZY" (qubit 0 first)."""
        n = self.n_qubits
        if len(label) != n:
            raise ValueError("Pauli string length must match qubit count")
        dim = 2 ** n
        idx = np.arange(dim)
        flip = 0
        phase = np.ones(dim, dtype=complex)
        for q, p in enumerate(label):
            bit = (idx >> (n - 1 - q)) & 1
            if p == "I":
                continue
            elif p == "X":
                flip |= 1 << (n - 1 - q)
            elif p == "Y":
                flip |= 1 << (n - 1 - q)
                phase = phase * np.where(bit == 0, -1j, 1j)
            elif p == "Z":
                phase = phase * np.where(bit == 0, 1.0, -1.0)
            else:
                raise ValueError(f"bad Pauli letter {p!r}")
        # Tr(P rho) = sum_i <i|P|pi(i)> rho[pi(i), i]
        return float(np.sum(phase * self.data[idx ^ flip, idx]).real)

    # -- evolution -------------------------------------------------------

    def apply_local(self, op, targets) -> None:
        """rho <- U rho U^dag for a 1- or 2-qubit operator on the given targets.

        Contracts only the target axes (O(4^n) per application). Trace is
        preserved iff `op` is unitary; sub-unitary Kraus operators are fine.
        """
        op = np.asarray(op, dtype=complex)
        targets = list(targets)
        k = len(targets)
        if op.shape != (2 ** k, 2 ** k) or k not in (1, 2):
            raise ValueError(f"operator shape {op.shape} does not match {k} target(s)")
        if len(set(targets)) != k:
            raise ValueError(f"duplicate targets {targets}")
        n = self.n_qubits
        if any(not 0 <= t < n for t in targets):
            raise ValueError(f"target out of range for {n} qubits: {targets}")
        u = op.reshape((2,) * (2 * k))
        rt = self.data.reshape((2,) * (2 * n))
        # ket side: contract the column axes of u with the targets' ket axes
        rt = np.tensordot(u, rt, axes=(list(range(k, 2 * k)), targets))
        rt = np.moveaxis(rt, list(range(k)), targets)
        # bra side: contract conj(u) with the targets' bra axes
        bra = [n + t for t in targets]
        rt = np.tensordot(rt, u.conj(), axes=(bra, list(range(k, 2 * k))))
        rt = np.moveaxis(rt, list(range(2 * n - k, 2 * n)), bra)
        dim = 2 ** n
        self.data = np.ascontiguousarray(rt.reshape(dim, dim))

    def apply_channel(self, channel: KrausChannel, targets) -> None:
        """rho <- sum_i K_i rho K_i^dag."""
        targets = list(targets)
        if channel.arity != len(targets):
            raise ValueError(
                f"channel arity {channel.arity} does not match targets {targets}"
            )
        acc = np.zeros_like(self.data)
        original = self.data
        for kraus in channel.operators:
            self.data = original
            self.apply_local(kraus, targets)
            acc += self.data
        self.data = acc

    def measure_qubit(self, q: int, rng: np.random.Generator) -> int:
        """Projective Z measurement of one qubit; collapses and renormalizes.

        Returns the sampled outcome bit. Raises if both outcome probabilities
        are numerically <= 0, which signals a corrupted state.
        """
        n = self.n_qubits
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} out of range")
        dim = 2 ** n
        diag = np.einsum("ii->i", self.data).real
        bit = (np.arange(dim) >> (n - 1 - q)) & 1
        p1 = float(diag[bit == 1].sum())
        p0 = float(diag[bit == 0].sum())
        if p0 <= 0.0 and p1 <= 0.0:
            raise ArithmeticError("both measurement branches have zero probability")
        p0, p1 = max(p0, 0.0), max(p1, 0.0)
        outcome = 0 if rng.random() < p0 / (p0 + p1) else 1
        keep = bit == outcome
        self.data[~keep, :] = 0.0
        self.data[:, ~keep] = 0.0
        self.data /= p0 if outcome == 0 else p1
        return outcome

    def reset_qubit(self, q: int) -> None:
        """Trace out qubit q and reinitialize it to |0>, keeping the rest intact."""
        n = self.n_qubits
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} out of range")
        idx = np.arange(2 ** n)
        lo = idx[((idx >> (n - 1 - q)) & 1) == 0]
        hi = lo | (1 << (n - 1 - q))
        self.data[np.ix_(lo, lo)] += self.data[np.ix_(hi, hi)]
        self.data[np.ix_(hi, hi)] = 0.0
        self.data[np.ix_(lo, hi)] = 0.0
        self.data[np.ix_(hi, lo)] = 0.0


def random_density_matrix(
    n_qubits: int, rng: np.random.Generator, n_terms: int = 3
) -> DensityMatrix:
    """Random mixed state built as a convex mix of Haar-ish random pure states."""
    dim = 2 ** n_qubits
    rho = np.zeros((dim, dim), dtype=complex)
    weights = rng.random(n_terms)
    weights /= weights.sum()
    for w in weights:
        psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        psi /= np.linalg.norm(psi)
        rho += w * np.outer(psi, psi.conj())
    return DensityMatrix(n_qubits, rho)
