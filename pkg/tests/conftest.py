"""Shared fixtures and independent oracle helpers.

The helpers here deliberately avoid the package's optimized code paths:
partial traces are computed by explicit axis sums, operator embeddings by
index bookkeeping, and reference evolutions by the plain density-matrix
schedule. Tests compare the production paths against these.
"""

import numpy as np
import pytest

from qecbench.gates import UNITARIES, Gate
from qecbench.noise import apply_post_gate_noise, apply_spam
from qecbench.states import DensityMatrix


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def partial_trace(data: np.ndarray, keep, n_qubits: int) -> np.ndarray:
    """Reduced density matrix over `keep` (independent of package code)."""
    keep = list(keep)
    traced = [q for q in range(n_qubits) if q not in keep]
    rt = data.reshape((2,) * (2 * n_qubits))
    for q in sorted(traced, reverse=True):
        n_axes = rt.ndim // 2
        rt = np.trace(rt, axis1=q, axis2=n_axes + q)
    dim = 2 ** len(keep)
    return rt.reshape(dim, dim)


def reference_shot_step(rho: DensityMatrix, ops, noise) -> None:
    """Apply gates with the immediate (non-deferred) noise schedule."""
    for op in ops:
        rho.apply_local(UNITARIES[op.kind], op.targets)
        if noise is not None:
            apply_post_gate_noise(rho, op, noise)


def project_qubits(rho: DensityMatrix, assignments: dict) -> float:
    """Project onto given qubit values; returns the branch probability and
    leaves rho normalized to the branch (zeroed if impossible)."""
    n = rho.n_qubits
    dim = 2 ** n
    idx = np.arange(dim)
    keep = np.ones(dim, dtype=bool)
    for q, val in assignments.items():
        keep &= ((idx >> (n - 1 - q)) & 1) == val
    prob = float(np.einsum("ii->i", rho.data).real[keep].sum())
    rho.data[~keep, :] = 0.0
    rho.data[:, ~keep] = 0.0
    if prob > 0:
        rho.data /= prob
    return prob


def three_qubit_first_cycle_failure(noise) -> float:
    """Branch-enumeration oracle: exact probability that the first cycle of
    the 3-qubit code ends with a logical-1 readout.

    Hard-codes the code's circuits (2 encoding CNOTs; parity checks
    ancilla1 = q0^q1, ancilla2 = q0^q2; X correction per lookup) and sums
    over the four syndrome branches instead of sampling.
    """
    from qecbench.codes import _THREE_QUBIT_TABLE

    encode = [Gate("CNOT", (0, 1)), Gate("CNOT", (0, 2))]
    couple = [
        Gate("CNOT", (0, 3)),
        Gate("CNOT", (1, 3)),
        Gate("CNOT", (0, 4)),
        Gate("CNOT", (2, 4)),
    ]
    base = DensityMatrix.basis_state(5, "00000")
    if noise is not None:
        apply_spam(base, "prep", range(5), noise)
    reference_shot_step(base, encode, noise)
    reference_shot_step(base, couple, noise)
    p_fail = 0.0
    for m1 in (0, 1):
        for m2 in (0, 1):
            branch = base.copy()
            if noise is not None and noise.spam:
                apply_spam(branch, "meas", [3, 4], noise)
            p_branch = project_qubits(branch, {3: m1, 4: m2})
            if p_branch <= 0.0:
                continue
            target = _THREE_QUBIT_TABLE[(m1, m2)]
            if target is not None:
                reference_shot_step(branch, [Gate("X", (target,))], noise)
            branch.reset_qubit(3)
            branch.reset_qubit(4)
            if noise is not None and noise.spam:
                apply_spam(branch, "meas", [0, 1, 2], noise)
            data = partial_trace(branch.data, [0, 1, 2], 5)
            diag = np.real(np.diag(data))
            fail = sum(
                w for bits, w in enumerate(diag) if bin(bits).count("1") >= 2
            )
            p_fail += p_branch * fail
    return p_fail
