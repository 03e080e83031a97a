"""Execution engine: factored register with deferred idle noise.

Two optimizations make repeated noisy cycles cheap while staying exactly
equivalent to the straightforward gate-by-gate schedule:

* The register is held as a product of independent density-matrix factors.
  A two-qubit gate merges factors; measurement and reset split a qubit
  back out as a pure single-qubit factor. Ancilla blocks therefore only
  inflate the data factor while they are actually entangled with it.

* Relaxation and dephasing nominally hit every qubit after every gate.
  Those channels commute across qubits and compose in closed form on one
  qubit (damping exponents and coherence factors pool over elapsed time),
  so the engine keeps a per-qubit pending-time counter and materializes
  the accumulated channel only when the qubit is next touched by a gate,
  measurement, or readout. Pending noise on a qubit about to be reset is
  dropped: a trace-preserving channel on a traced-out qubit is invisible.

Depolarization and SPAM kicks are instantaneous; the gate kernels fuse the
target flush, the gate, and the depolarizing kick into one pass, keeping
the depolarize -> relax -> dephase order per gate step. Equivalence with
the reference schedule is pinned by tests.

Factor buffers are recycled through a small per-register arena: page
faults on fresh multi-megabyte allocations would otherwise dominate the
large-register cycle time.
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels
from .gates import Gate, UNITARIES
from .noise import NoiseModel
from .states import DensityMatrix

_ZERO = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
_ONE = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)

_ARENA_MIN_DIM = 16

# single-qubit unitaries as plain scalars, to keep the hot loop free of
# numpy element extraction
_U1_SCALARS = {
    kind: tuple(complex(x) for x in UNITARIES[kind].flat)
    for kind in ("X", "Y", "Z", "H")
}


class _Factor:
    __slots__ = ("qubits", "rho")

    def __init__(self, qubits: list[int], rho: np.ndarray):
        self.qubits = qubits
        self.rho = rho

    def mask(self, q: int) -> int:
        k = len(self.qubits)
        return 1 << (k - 1 - self.qubits.index(q))


class FactoredState:
    """Mutable register state owned by a single shot."""

    def __init__(self, n_qubits: int, noise: NoiseModel | None, rng):
        self.n_qubits = n_qubits
        self.rng = rng
        self.clock = 0.0
        self.last_touch = [0.0] * n_qubits
        self._arena: dict[int, list[np.ndarray]] = {}
        self._configure_noise(noise)
        self.factors: list[_Factor] = []
        self.owner: dict[int, _Factor] = {}
        for q in range(n_qubits):
            f = _Factor([q], _ZERO.copy())
            self.factors.append(f)
            self.owner[q] = f

    def _configure_noise(self, noise: NoiseModel | None) -> None:
        self.noise = noise
        n = self.n_qubits
        if noise is None:
            self.inv_t1 = np.zeros(n)
            self.inv_t2 = np.zeros(n)
            self.p1 = np.zeros(n)
            self.p_prep = np.zeros(n)
            self.p_meas = np.zeros(n)
            self.gate_duration = 0.0
            self.measure_duration = 0.0
            self.any_idle = False
            return
        noise.check_register(n)
        self.inv_t1 = np.array(
            [1.0 / p.t1 if noise.relaxation and math.isfinite(p.t1) else 0.0
             for p in noise.per_qubit]
        )
        self.inv_t2 = np.array(
            [1.0 / p.t2 if noise.dephasing and math.isfinite(p.t2) else 0.0
             for p in noise.per_qubit]
        )
        p1 = [p.p1 if noise.depolarization else 0.0 for p in noise.per_qubit]
        self.p1 = np.array(p1)
        self.p_prep = np.array(
            [p.p_prep if noise.spam else 0.0 for p in noise.per_qubit]
        )
        self.p_meas = np.array(
            [p.p_meas if noise.spam else 0.0 for p in noise.per_qubit]
        )
        self.gate_duration = noise.gate_duration
        self.measure_duration = noise.measure_duration
        self.any_idle = bool(np.any(self.inv_t1) or np.any(self.inv_t2))

    @classmethod
    def zeros(cls, n_qubits, noise, rng) -> "FactoredState":
        return cls(n_qubits, noise, rng)

    @classmethod
    def from_density_matrix(cls, dm: DensityMatrix, noise, rng) -> "FactoredState":
        reg = cls(dm.n_qubits, noise, rng)
        f = _Factor(list(range(dm.n_qubits)), dm.data.copy())
        reg.factors = [f]
        reg.owner = {q: f for q in range(dm.n_qubits)}
        return reg

    def copy(self) -> "FactoredState":
        """Deep copy of the state; the rng object is shared with the parent."""
        new = object.__new__(FactoredState)
        new.n_qubits = self.n_qubits
        new.rng = self.rng
        new.clock = self.clock
        new.last_touch = list(self.last_touch)
        new._arena = {}
        new.noise = self.noise
        new.inv_t1 = self.inv_t1
        new.inv_t2 = self.inv_t2
        new.p1 = self.p1
        new.p_prep = self.p_prep
        new.p_meas = self.p_meas
        new.gate_duration = self.gate_duration
        new.measure_duration = self.measure_duration
        new.any_idle = self.any_idle
        new.factors = []
        new.owner = {}
        for f in self.factors:
            nf = _Factor(list(f.qubits), f.rho.copy())
            new.factors.append(nf)
            for q in nf.qubits:
                new.owner[q] = nf
        return new

    # -- buffer arena ------------------------------------------------------

    def _alloc(self, dim: int) -> np.ndarray:
        pool = self._arena.get(dim)
        if pool:
            return pool.pop()
        return np.empty((dim, dim), dtype=np.complex128)

    def _release(self, arr: np.ndarray) -> None:
        dim = arr.shape[0]
        if dim >= _ARENA_MIN_DIM:
            self._arena.setdefault(dim, []).append(arr)

    # -- noise bookkeeping ----------------------------------------------

    def _idle_params(self, q: int) -> tuple[float, float]:
        """(damping probability, coherence factor) for q's pending idle time."""
        if not self.any_idle:
            return 0.0, 1.0
        t = self.clock - self.last_touch[q]
        if t <= 0.0:
            return 0.0, 1.0
        g = -math.expm1(-t * self.inv_t1[q])
        s = math.exp(-t * self.inv_t2[q])
        return g, s

    def _flush(self, q: int) -> None:
        g, s = self._idle_params(q)
        self.last_touch[q] = self.clock
        if g != 0.0 or s != 1.0:
            f = self.owner[q]
            kernels.apply_damping(f.rho, f.mask(q), g, s)

    def _advance(self, duration: float) -> None:
        self.clock += duration

    def apply_prep_spam(self) -> None:
        """State-preparation bit flips on every qubit; call right after init."""
        for q in range(self.n_qubits):
            p = self.p_prep[q]
            if p > 0.0:
                f = self.owner[q]
                kernels.apply_bitflip(f.rho, f.mask(q), p)

    # -- gates ------------------------------------------------------------

    def _merge(self, fa: _Factor, fb: _Factor) -> _Factor:
        out = self._alloc(fa.rho.shape[0] * fb.rho.shape[0])
        kernels.kron_join(fa.rho, fb.rho, out)
        joined = _Factor(fa.qubits + fb.qubits, out)
        self._release(fa.rho)
        self._release(fb.rho)
        self.factors.remove(fa)
        self.factors.remove(fb)
        self.factors.append(joined)
        for q in joined.qubits:
            self.owner[q] = joined
        return joined

    def apply_gate(self, gate: Gate) -> None:
        """A unitary gate with the scheduled noise fused around it."""
        if not gate.is_unitary:
            raise ValueError("use measure()/reset() for non-unitary ops")
        tgts = gate.targets
        f = self.owner[tgts[0]]
        if len(tgts) == 2 and self.owner[tgts[1]] is not f:
            f = self._merge(f, self.owner[tgts[1]])
        if len(tgts) == 1:
            q = tgts[0]
            g, s = self._idle_params(q)
            self.last_touch[q] = self.clock
            u00, u01, u10, u11 = _U1_SCALARS[gate.kind]
            kernels.apply_u1(
                f.rho, f.mask(q), g, s, self.p1[q], u00, u01, u10, u11
            )
        else:
            c, t = tgts
            gc, sc = self._idle_params(c)
            gt, st = self._idle_params(t)
            self.last_touch[c] = self.clock
            self.last_touch[t] = self.clock
            if gate.kind == "CNOT":
                kernels.apply_cnot(
                    f.rho, f.mask(c), f.mask(t), gc, sc, gt, st, self.p1[t]
                )
            elif gate.kind == "CZ":
                kernels.apply_cz(
                    f.rho, f.mask(c), f.mask(t), gc, sc, gt, st, self.p1[t]
                )
            else:
                raise ValueError(f"unsupported two-qubit gate {gate.kind}")
        self._advance(self.gate_duration)

    def apply_gates(self, gates) -> None:
        for g in gates:
            self.apply_gate(g)

    def apply_pauli_raw(self, pauli: str, q: int) -> None:
        """Noise-free, time-free Pauli injection (error-model test hook)."""
        u00, u01, u10, u11 = _U1_SCALARS[pauli]
        f = self.owner[q]
        kernels.apply_u1(f.rho, f.mask(q), 0.0, 1.0, 0.0, u00, u01, u10, u11)

    # -- measurement and reset ---------------------------------------------

    def _split_out(self, f: _Factor, q: int, rest: np.ndarray, qubit_state) -> None:
        self._release(f.rho)
        f.qubits.remove(q)
        f.rho = rest
        solo = _Factor([q], qubit_state.copy())
        self.factors.append(solo)
        self.owner[q] = solo

    def measure(self, q: int) -> int:
        """SPAM, then projective Z measurement; collapses and factors q out."""
        self._flush(q)
        f = self.owner[q]
        m = f.mask(q)
        p = self.p_meas[q]
        if p > 0.0:
            kernels.apply_bitflip(f.rho, m, p)
        p0, p1 = kernels.diag_probs(f.rho, m)
        if p0 <= 0.0 and p1 <= 0.0:
            raise ArithmeticError("both measurement branches have zero probability")
        p0, p1 = max(p0, 0.0), max(p1, 0.0)
        outcome = 0 if self.rng.random() < p0 / (p0 + p1) else 1
        prob = p0 if outcome == 0 else p1
        if len(f.qubits) == 1:
            f.rho = _ZERO.copy() if outcome == 0 else _ONE.copy()
        else:
            rest = self._alloc(f.rho.shape[0] // 2)
            kernels.extract_block(f.rho, m, outcome, 1.0 / prob, rest)
            self._split_out(f, q, rest, _ZERO if outcome == 0 else _ONE)
        self._advance(self.measure_duration)
        return outcome

    def reset(self, q: int) -> None:
        """Trace out q and return it to |0>; pending noise on q is dropped."""
        self.last_touch[q] = self.clock
        f = self.owner[q]
        if len(f.qubits) == 1:
            f.rho = _ZERO.copy()
        else:
            rest = self._alloc(f.rho.shape[0] // 2)
            kernels.ptrace_qubit(f.rho, f.mask(q), rest)
            self._split_out(f, q, rest, _ZERO)
        self._advance(self.measure_duration)

    def sample_bits(self, qubits) -> tuple[int, ...]:
        """Readout sample of the listed qubits (SPAM included, no collapse).

        Mutates the state through SPAM and flushes, so call it on a copy
        when the register must keep running.
        """
        qubits = list(qubits)
        wanted_set = set(qubits)
        for q in sorted(qubits):
            self._flush(q)
            p = self.p_meas[q]
            if p > 0.0:
                f = self.owner[q]
                kernels.apply_bitflip(f.rho, f.mask(q), p)
        values: dict[int, int] = {}
        for f in sorted(self.factors, key=lambda fc: min(fc.qubits)):
            wanted = [q for q in f.qubits if q in wanted_set]
            if not wanted:
                continue
            probs = kernels.diag_real(f.rho)
            total = probs.sum()
            r = self.rng.random() * total
            idx = int(np.searchsorted(np.cumsum(probs), r, side="right"))
            idx = min(idx, len(probs) - 1)
            k = len(f.qubits)
            for q in wanted:
                values[q] = (idx >> (k - 1 - f.qubits.index(q))) & 1
        return tuple(values[q] for q in qubits)

    def probe_bits(self, qubits) -> tuple[int, ...]:
        """Readout sample of the listed qubits without touching the register.

        Pending idle noise, measurement SPAM, and basis sampling all act on
        the density-matrix diagonal alone, so the probe distribution can be
        computed classically from a copy of each factor's diagonal. Draw
        for draw this matches copying the register and calling
        sample_bits(); the register itself is left byte-identical.
        """
        wanted_set = set(qubits)
        values: dict[int, int] = {}
        for f in sorted(self.factors, key=lambda fc: min(fc.qubits)):
            probed = [q for q in f.qubits if q in wanted_set]
            if not probed:
                continue
            probed.sort()
            k = len(f.qubits)
            masks = np.array([f.mask(q) for q in probed], dtype=np.int64)
            gs = np.array([self._idle_params(q)[0] for q in probed])
            ps = np.array([self.p_meas[q] for q in probed])
            idx = kernels.probe_sample(f.rho, masks, gs, ps, self.rng.random())
            for q in probed:
                values[q] = (idx >> (k - 1 - f.qubits.index(q))) & 1
        return tuple(values[q] for q in qubits)

    # -- export -----------------------------------------------------------

    def to_density_matrix(self) -> DensityMatrix:
        """Full register state with all pending noise materialized.

        Operates on a copy; the running register is left untouched.
        """
        work = self.copy()
        for q in range(work.n_qubits):
            work._flush(q)
        factors = sorted(work.factors, key=lambda f: min(f.qubits))
        qubits: list[int] = []
        rho = None
        for f in factors:
            qubits.extend(f.qubits)
            if rho is None:
                rho = f.rho
            else:
                out = np.empty(
                    (rho.shape[0] * f.rho.shape[0],) * 2, dtype=np.complex128
                )
                rho = kernels.kron_join(rho, f.rho, out)
        n = work.n_qubits
        order = np.argsort(qubits)
        rt = rho.reshape((2,) * (2 * n))
        rt = np.transpose(rt, tuple(order) + tuple(order + n))
        data = np.ascontiguousarray(rt.reshape(2 ** n, 2 ** n))
        return DensityMatrix(n, data)

    def trace(self) -> float:
        t = 1.0
        for f in self.factors:
            t *= float(np.trace(f.rho).real)
        return t
