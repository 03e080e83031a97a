"""The four error-correcting codes: encoding, syndrome extraction, decoding,
correction, and logical readout.

Register layout for every code: data qubits first (0 .. n_data-1), ancillas
after. Two-qubit gates are routed through the connectivity graph, so circuit
cost grows on line and lattice topologies exactly as the noise model then
penalizes.

Syndrome-conditioned corrections are classical feedback and therefore live
in the procedural cycle runners, not in the static circuits; the circuit
builders return the unconditional gate sequences (used for gate counts and
cycle timing). Decode tables are derived from stabilizer anticommutation and
cross-checked by exhaustive single-error simulation in the test suite.

Ancilla resets are emitted as soon as an ancilla has seen its last gate of
the round. Idle noise on a qubit that is about to be traced out and
re-prepared has no observable effect, so this is equivalent to resetting at
the end of the round, and it keeps entangled subsystems small.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .connectivity import ConnectivityGraph, route_two_qubit
from .engine import FactoredState
from .gates import Circuit, Gate
from .noise import NoiseModel
from .states import DensityMatrix


class CodeId(enum.Enum):
    THREE_QUBIT = "three_qubit"
    STEANE = "steane"
    FT_STEANE = "ft_steane"
    SHOR_NINE = "shor_nine"


@dataclass(frozen=True)
class CodeLayout:
    n_data: int
    n_ancilla: int
    nkd: tuple[int, int, int] | None = None

    @property
    def n_total(self) -> int:
        return self.n_data + self.n_ancilla


LAYOUTS = {
    CodeId.THREE_QUBIT: CodeLayout(3, 2, None),
    CodeId.STEANE: CodeLayout(7, 3, (7, 1, 3)),
    CodeId.FT_STEANE: CodeLayout(7, 4, (7, 1, 3)),
    CodeId.SHOR_NINE: CodeLayout(9, 2, (9, 1, 3)),
}


@dataclass(frozen=True)
class Syndrome:
    """Ancilla measurement bits plus which extraction round produced them."""

    bits: tuple[int, ...]
    context: str  # "bit" | "x" | "z" | "phase" | "bit_block0".."bit_block2"


@dataclass(frozen=True)
class CorrectionOp:
    pauli: str  # "I", "X", "Y", "Z"
    target: int | None

    @property
    def is_identity(self) -> bool:
        return self.pauli == "I"


@dataclass(frozen=True)
class PauliErrorSpec:
    """A deliberate single-qubit error for correction tests (injected
    noiselessly between encoding and syndrome extraction)."""

    pauli: str
    qubit: int
    location: str = "post_encoding"


def inject_pauli(reg: FactoredState, spec: PauliErrorSpec) -> None:
    reg.apply_pauli_raw(spec.pauli, spec.qubit)


# -- stabilizers and decode tables ------------------------------------------

STEANE_X_CHECKS = ("IIIXXXX", "XIXIXIX", "IXXIIXX")
STEANE_Z_CHECKS = ("IIIZZZZ", "ZIZIZIZ", "IZZIIZZ")

STEANE_LOGICAL_ZERO_WORDS = (
    "0000000", "1010101", "0110011", "1100110",
    "0001111", "1011010", "0111100", "1101001",
)


def _support(pauli_string: str) -> tuple[int, ...]:
    return tuple(i for i, ch in enumerate(pauli_string) if ch != "I")


def _check_table(check_strings) -> dict[tuple[int, ...], int]:
    """syndrome bits -> faulty qubit, from the checks' support columns."""
    table = {}
    n = len(check_strings[0])
    for j in range(n):
        synd = tuple(1 if j in _support(c) else 0 for c in check_strings)
        table[synd] = j
    return table


_STEANE_X_TABLE = _check_table(STEANE_X_CHECKS)  # detects Z errors
_STEANE_Z_TABLE = _check_table(STEANE_Z_CHECKS)  # detects X errors

# ancilla 1 reads q0 xor q1, ancilla 2 reads q0 xor q2
_THREE_QUBIT_TABLE = {(0, 0): None, (1, 1): 0, (1, 0): 1, (0, 1): 2}

# phase comparisons: ancilla 1 compares blocks 0/1, ancilla 2 blocks 1/2
_SHOR_PHASE_TABLE = {(0, 0): None, (1, 0): 0, (1, 1): 1, (0, 1): 2}


def stabilizer_operators(code: CodeId) -> list[str]:
    """Generating Pauli strings over the data qubits, in measurement order."""
    if code in (CodeId.STEANE, CodeId.FT_STEANE):
        return list(STEANE_X_CHECKS + STEANE_Z_CHECKS)
    if code == CodeId.THREE_QUBIT:
        return ["ZZI", "ZIZ"]
    # bit-flip parities per block, then the two block-phase comparisons
    out = []
    for b in range(3):
        for pair in ((0, 1), (0, 2)):
            s = ["I"] * 9
            s[3 * b + pair[0]] = "Z"
            s[3 * b + pair[1]] = "Z"
            out.append("".join(s))
    out.append("XXXXXXIII")
    out.append("IIIXXXXXX")
    return out


def decode_syndrome(code: CodeId, syndrome: Syndrome) -> CorrectionOp:
    """Map ancilla readouts to the corrective Pauli for one extraction round."""
    bits = tuple(syndrome.bits)
    ctx = syndrome.context
    if code == CodeId.THREE_QUBIT:
        if ctx != "bit" or len(bits) != 2:
            raise ValueError(f"bad syndrome {syndrome} for {code}")
        q = _THREE_QUBIT_TABLE[bits]
        return CorrectionOp("I", None) if q is None else CorrectionOp("X", q)
    if code in (CodeId.STEANE, CodeId.FT_STEANE):
        if ctx not in ("x", "z") or len(bits) != 3:
            raise ValueError(f"bad syndrome {syndrome} for {code}")
        if not any(bits):
            return CorrectionOp("I", None)
        if ctx == "x":  # X-stabilizer round flags Z errors
            return CorrectionOp("Z", _STEANE_X_TABLE[bits])
        return CorrectionOp("X", _STEANE_Z_TABLE[bits])
    if code == CodeId.SHOR_NINE:
        if ctx == "phase":
            if len(bits) != 2:
                raise ValueError(f"bad syndrome {syndrome} for {code}")
            blk = _SHOR_PHASE_TABLE[bits]
            return CorrectionOp("I", None) if blk is None else CorrectionOp("Z", 3 * blk)
        if ctx.startswith("bit_block"):
            b = int(ctx[-1])
            q = _THREE_QUBIT_TABLE[bits]
            return CorrectionOp("I", None) if q is None else CorrectionOp("X", 3 * b + q)
    raise ValueError(f"bad syndrome context {ctx!r} for {code}")


# -- classical readout decoding ----------------------------------------------


def decode_readout(code: CodeId, bits) -> int:
    """Classical decode of a data-qubit readout string to the logical bit.

    For the repetition-style codes the string may carry one correctable
    error; the Steane string gets a classical Hamming correction first. The
    nine-qubit readout is taken in the X basis (the runner applies the basis
    change), so each block contributes its parity and the blocks vote.
    """
    bits = tuple(int(b) for b in bits)
    if code == CodeId.THREE_QUBIT:
        if len(bits) != 3:
            raise ValueError("expected 3 data bits")
        return 1 if sum(bits) >= 2 else 0
    if code in (CodeId.STEANE, CodeId.FT_STEANE):
        if len(bits) != 7:
            raise ValueError("expected 7 data bits")
        synd = tuple(
            int(sum(bits[q] for q in _support(c)) % 2) for c in STEANE_Z_CHECKS
        )
        word = list(bits)
        if any(synd):
            word[_STEANE_Z_TABLE[synd]] ^= 1
        return sum(word) % 2
    if code == CodeId.SHOR_NINE:
        if len(bits) != 9:
            raise ValueError("expected 9 data bits")
        parities = [bits[3 * b] ^ bits[3 * b + 1] ^ bits[3 * b + 2] for b in range(3)]
        return 1 if sum(parities) >= 2 else 0
    raise ValueError(f"unknown code {code}")


# -- code definitions ---------------------------------------------------------


class _CodeDefinition:
    code: CodeId

    def __init__(self, graph: ConnectivityGraph):
        self.layout = LAYOUTS[self.code]
        if graph.n_qubits != self.layout.n_total:
            raise ValueError(
                f"{self.code.value} needs {self.layout.n_total} qubits, "
                f"graph has {graph.n_qubits}"
            )
        self.graph = graph

    def _cnot(self, control: int, target: int) -> list[Gate]:
        return route_two_qubit(self.graph, "CNOT", control, target)

    def _cz(self, control: int, target: int) -> list[Gate]:
        return route_two_qubit(self.graph, "CZ", control, target)

    def _apply_correction(self, reg: FactoredState, corr: CorrectionOp) -> None:
        if not corr.is_identity:
            reg.apply_gate(Gate(corr.pauli, (corr.target,)))

    @property
    def data_qubits(self) -> list[int]:
        return list(range(self.layout.n_data))

    # overridden per code
    def encode(self, reg: FactoredState) -> None:
        raise NotImplementedError

    def run_cycle(self, reg: FactoredState, trace: dict | None = None) -> None:
        raise NotImplementedError

    def readout_pre_gates(self) -> list[Gate]:
        return []

    def readout(self, reg: FactoredState) -> int:
        """Logical readout probe; the running register is not disturbed."""
        pre = self.readout_pre_gates()
        if pre:
            probe = reg.copy()
            probe.apply_gates(pre)
            bits = probe.sample_bits(self.data_qubits)
        else:
            bits = reg.probe_bits(self.data_qubits)
        return decode_readout(self.code, bits)

    def encoding_circuit(self, gate_duration: float) -> Circuit:
        raise NotImplementedError

    def syndrome_circuit(self, gate_duration: float) -> Circuit:
        raise NotImplementedError


class ThreeQubitCode(_CodeDefinition):
    code = CodeId.THREE_QUBIT

    def __init__(self, graph):
        super().__init__(graph)
        self._encode_ops = self._cnot(0, 1) + self._cnot(0, 2)
        self._coupling = (
            self._cnot(0, 3) + self._cnot(1, 3) + self._cnot(0, 4) + self._cnot(2, 4)
        )

    def encode(self, reg):
        reg.apply_gates(self._encode_ops)

    def run_cycle(self, reg, trace=None):
        reg.apply_gates(self._coupling)
        bits = (reg.measure(3), reg.measure(4))
        corr = decode_syndrome(self.code, Syndrome(bits, "bit"))
        self._apply_correction(reg, corr)
        reg.reset(3)
        reg.reset(4)
        if trace is not None:
            trace["ancilla_rounds"] = trace.get("ancilla_rounds", 0) + 1

    def encoding_circuit(self, gate_duration):
        return Circuit(5, list(self._encode_ops), gate_duration)

    def syndrome_circuit(self, gate_duration):
        ops = list(self._coupling)
        ops += [Gate("MEASURE", (3,)), Gate("MEASURE", (4,))]
        ops += [Gate("RESET", (3,)), Gate("RESET", (4,))]
        return Circuit(5, ops, gate_duration)


class SteaneCode(_CodeDefinition):
    """Steane code with one bare ancilla per stabilizer, measured one
    stabilizer at a time. Initialization is projective: measure the X
    stabilizers and fix signs with Z corrections, then the Z stabilizers
    with X corrections; error-correction cycles repeat the same procedure.
    """

    code = CodeId.STEANE

    def __init__(self, graph):
        super().__init__(graph)
        self._x_rounds = [
            self._stab_ops(7 + i, check, "x") for i, check in enumerate(STEANE_X_CHECKS)
        ]
        self._z_rounds = [
            self._stab_ops(7 + i, check, "z") for i, check in enumerate(STEANE_Z_CHECKS)
        ]

    def _stab_ops(self, anc: int, check: str, kind: str) -> list[Gate]:
        ops = [Gate("H", (anc,))]
        for q in _support(check):
            ops += self._cnot(anc, q) if kind == "x" else self._cz(anc, q)
        ops.append(Gate("H", (anc,)))
        return ops

    def _measure_group(self, reg, rounds, trace) -> tuple[int, ...]:
        bits = []
        for i, ops in enumerate(rounds):
            anc = 7 + i
            reg.apply_gates(ops)
            bits.append(reg.measure(anc))
            reg.reset(anc)
            if trace is not None:
                trace["ancilla_rounds"] = trace.get("ancilla_rounds", 0) + 1
        return tuple(bits)

    def run_cycle(self, reg, trace=None):
        bits = self._measure_group(reg, self._x_rounds, trace)
        self._apply_correction(reg, decode_syndrome(self.code, Syndrome(bits, "x")))
        bits = self._measure_group(reg, self._z_rounds, trace)
        self._apply_correction(reg, decode_syndrome(self.code, Syndrome(bits, "z")))

    def encode(self, reg):
        # projecting |0000000> onto the +1 eigenspace of the X stabilizers
        # lands exactly on the logical zero codeword
        self.run_cycle(reg)

    def encoding_circuit(self, gate_duration):
        return self.syndrome_circuit(gate_duration)

    def syndrome_circuit(self, gate_duration):
        ops: list[Gate] = []
        for i, round_ops in enumerate(self._x_rounds + self._z_rounds):
            anc = 7 + (i % 3)
            ops += round_ops
            ops += [Gate("MEASURE", (anc,)), Gate("RESET", (anc,))]
        return Circuit(10, ops, gate_duration)


class FTSteaneCode(_CodeDefinition):
    """Steane code with Shor-style fault-tolerant extraction: a verified
    four-qubit cat block couples transversally to each stabilizer's support,
    one ancilla per data qubit, and every stabilizer is measured three times
    with a majority vote.
    """

    code = CodeId.FT_STEANE
    repetitions = 3
    default_max_retries = 100

    def __init__(self, graph):
        super().__init__(graph)
        a = self.ancillas = [7, 8, 9, 10]
        self._cat_prep = (
            [Gate("H", (a[0],))]
            + self._cnot(a[0], a[1])
            + self._cnot(a[0], a[2])
            + self._cnot(a[0], a[3])
        )
        # block-parity verification: fold every ancilla's bit into the last
        # cat qubit, measure it, and re-extend the cat after a clean check
        self._verify = (
            self._cnot(a[0], a[3]) + self._cnot(a[1], a[3]) + self._cnot(a[2], a[3])
        )
        self._reextend = self._cnot(a[0], a[3])
        self._couplings = []
        for check in STEANE_X_CHECKS:
            ops = []
            for k, q in enumerate(_support(check)):
                ops.append(self._cnot(a[k], q))
            self._couplings.append(ops)
        for check in STEANE_Z_CHECKS:
            ops = []
            for k, q in enumerate(_support(check)):
                ops.append(self._cz(a[k], q))
            self._couplings.append(ops)
        self._decode_steps = [
            self._cnot(a[0], a[1]),
            self._cnot(a[0], a[2]),
            self._cnot(a[0], a[3]),
        ]

    def prepare_cat(
        self, reg: FactoredState, max_retries: int | None = None, inject=None
    ) -> int:
        """Build and verify the cat block; returns the number of attempts.

        `inject`, if given, is called as inject(attempt, reg) right after
        preparation so tests can plant errors the verification must catch.
        """
        if max_retries is None:
            max_retries = self.default_max_retries
        attempts = max_retries + 1
        for attempt in range(attempts):
            reg.apply_gates(self._cat_prep)
            if inject is not None:
                inject(attempt, reg)
            reg.apply_gates(self._verify)
            if reg.measure(self.ancillas[3]) == 0:
                reg.apply_gates(self._reextend)
                return attempt + 1
            for q in self.ancillas:
                reg.reset(q)
        raise RuntimeError(
            f"cat-state verification failed {attempts} times; "
            "noise parameters are pathologically large"
        )

    def syndrome_bit(
        self,
        reg: FactoredState,
        stab_index: int,
        trace: dict | None = None,
        max_retries: int | None = None,
        inject=None,
    ) -> int:
        """Majority-voted syndrome bit of one stabilizer (index 0..5)."""
        if not 0 <= stab_index < 6:
            raise ValueError("stabilizer index must be in 0..5")
        a = self.ancillas
        votes = 0
        for rep in range(self.repetitions):
            attempts = self.prepare_cat(reg, max_retries=max_retries)
            if inject is not None:
                inject(rep, reg)
            for ops in self._couplings[stab_index]:
                reg.apply_gates(ops)
            # decode the cat block, retiring each ancilla after its last gate
            reg.apply_gates(self._decode_steps[0])
            reg.reset(a[1])
            reg.apply_gates(self._decode_steps[1])
            reg.reset(a[2])
            reg.apply_gates(self._decode_steps[2])
            reg.reset(a[3])
            reg.apply_gate(Gate("H", (a[0],)))
            votes += reg.measure(a[0])
            reg.reset(a[0])
            if trace is not None:
                trace["ancilla_rounds"] = trace.get("ancilla_rounds", 0) + 1
                trace["cat_attempts"] = trace.get("cat_attempts", 0) + attempts
        return 1 if votes >= 2 else 0

    def run_cycle(self, reg, trace=None):
        bits = tuple(self.syndrome_bit(reg, i, trace) for i in range(3))
        self._apply_correction(reg, decode_syndrome(self.code, Syndrome(bits, "x")))
        bits = tuple(self.syndrome_bit(reg, i, trace) for i in range(3, 6))
        self._apply_correction(reg, decode_syndrome(self.code, Syndrome(bits, "z")))

    def encode(self, reg):
        self.run_cycle(reg)

    def encoding_circuit(self, gate_duration):
        return self.syndrome_circuit(gate_duration)

    def syndrome_circuit(self, gate_duration):
        a = self.ancillas
        ops: list[Gate] = []
        for stab in range(6):
            for _rep in range(self.repetitions):
                ops += self._cat_prep
                ops += self._verify
                ops.append(Gate("MEASURE", (a[3],)))
                ops += self._reextend
                for coupling in self._couplings[stab]:
                    ops += coupling
                for step, anc in zip(self._decode_steps, a[1:]):
                    ops += step
                    ops.append(Gate("RESET", (anc,)))
                ops.append(Gate("H", (a[0],)))
                ops.append(Gate("MEASURE", (a[0],)))
                ops.append(Gate("RESET", (a[0],)))
        return Circuit(11, ops, gate_duration)


class ShorNineCode(_CodeDefinition):
    """Nine-qubit code: three blocks of three, phase comparison between
    neighbouring blocks, then a bit-flip round per block."""

    code = CodeId.SHOR_NINE

    def __init__(self, graph):
        super().__init__(graph)
        self._encode_ops = self._cnot(0, 3) + self._cnot(0, 6)
        self._encode_ops += [Gate("H", (q,)) for q in (0, 3, 6)]
        for base in (0, 3, 6):
            self._encode_ops += self._cnot(base, base + 1)
            self._encode_ops += self._cnot(base, base + 2)
        self._h_layer = [Gate("H", (q,)) for q in range(9)]
        self._phase_first = []
        for q in range(6):
            self._phase_first += self._cnot(q, 9)
        self._phase_second = []
        for q in range(3, 9):
            self._phase_second += self._cnot(q, 10)
        self._bit_first = []
        self._bit_second = []
        for b in range(3):
            self._bit_first.append(self._cnot(3 * b, 9) + self._cnot(3 * b + 1, 9))
            self._bit_second.append(self._cnot(3 * b, 10) + self._cnot(3 * b + 2, 10))

    def encode(self, reg):
        reg.apply_gates(self._encode_ops)

    def run_cycle(self, reg, trace=None):
        # Each ancilla is measured and reset right after its last coupling;
        # nothing later touches it, so this matches measuring both at the
        # end of the round, draw for draw, while keeping factors small.
        reg.apply_gates(self._h_layer)
        reg.apply_gates(self._phase_first)
        a1 = reg.measure(9)
        reg.reset(9)
        reg.apply_gates(self._phase_second)
        a2 = reg.measure(10)
        reg.reset(10)
        reg.apply_gates(self._h_layer)
        corr = decode_syndrome(self.code, Syndrome((a1, a2), "phase"))
        self._apply_correction(reg, corr)
        if trace is not None:
            trace["ancilla_rounds"] = trace.get("ancilla_rounds", 0) + 1
        for b in range(3):
            reg.apply_gates(self._bit_first[b])
            a1 = reg.measure(9)
            reg.reset(9)
            reg.apply_gates(self._bit_second[b])
            a2 = reg.measure(10)
            reg.reset(10)
            corr = decode_syndrome(self.code, Syndrome((a1, a2), f"bit_block{b}"))
            self._apply_correction(reg, corr)
            if trace is not None:
                trace["ancilla_rounds"] = trace.get("ancilla_rounds", 0) + 1

    def readout_pre_gates(self):
        # the logical bit lives in the block phases, so read in the X basis
        return [Gate("H", (q,)) for q in range(9)]

    def encoding_circuit(self, gate_duration):
        return Circuit(11, list(self._encode_ops), gate_duration)

    def syndrome_circuit(self, gate_duration):
        pair = [Gate("MEASURE", (9,)), Gate("MEASURE", (10,)),
                Gate("RESET", (9,)), Gate("RESET", (10,))]
        ops = list(self._h_layer) + list(self._phase_first)
        ops += self._phase_second + list(self._h_layer) + pair
        for b in range(3):
            ops += self._bit_first[b] + self._bit_second[b] + pair
        return Circuit(11, ops, gate_duration)


_DEFINITIONS = {
    CodeId.THREE_QUBIT: ThreeQubitCode,
    CodeId.STEANE: SteaneCode,
    CodeId.FT_STEANE: FTSteaneCode,
    CodeId.SHOR_NINE: ShorNineCode,
}


@lru_cache(maxsize=64)
def code_definition(code: CodeId, graph: ConnectivityGraph) -> _CodeDefinition:
    return _DEFINITIONS[code](graph)


def layout_of(code: CodeId) -> CodeLayout:
    return LAYOUTS[code]


# -- public single-shot operations -------------------------------------------


def build_encoding(
    code: CodeId, graph: ConnectivityGraph, gate_duration: float = 1e-7
) -> Circuit:
    """Unconditional gate sequence of the encoder (projective codes also
    measure; their outcome-dependent sign fixes happen at runtime)."""
    return code_definition(code, graph).encoding_circuit(gate_duration)


def build_syndrome_extraction(
    code: CodeId, graph: ConnectivityGraph, gate_duration: float = 1e-7
) -> Circuit:
    """Unconditional gate sequence of one full detection cycle."""
    return code_definition(code, graph).syndrome_circuit(gate_duration)


def encode_logical_zero(
    code: CodeId, graph: ConnectivityGraph, noise: NoiseModel | None, rng
) -> FactoredState:
    """Fresh register carrying the code's logical |0>, with preparation
    SPAM and gate noise if a model is given."""
    defn = code_definition(code, graph)
    reg = FactoredState.zeros(defn.layout.n_total, noise, rng)
    reg.apply_prep_spam()
    defn.encode(reg)
    return reg


def qec_cycle(
    code: CodeId,
    rho: DensityMatrix,
    graph: ConnectivityGraph,
    noise: NoiseModel | None,
    rng,
    trace: dict | None = None,
) -> DensityMatrix:
    """One full round of syndrome extraction, decoding, correction, and
    ancilla reset on a register-sized density matrix."""
    defn = code_definition(code, graph)
    reg = FactoredState.from_density_matrix(rho, noise, rng)
    defn.run_cycle(reg, trace)
    return reg.to_density_matrix()


def ft_prepare_cat_ancilla(
    reg: FactoredState,
    graph: ConnectivityGraph,
    max_retries: int = 100,
    inject=None,
) -> int:
    """Verified cat-state preparation on the fault-tolerant Steane ancillas;
    returns the attempt count, raises RuntimeError when retries run out."""
    defn = code_definition(CodeId.FT_STEANE, graph)
    return defn.prepare_cat(reg, max_retries=max_retries, inject=inject)


def ft_syndrome_bit(
    reg: FactoredState,
    stab_index: int,
    graph: ConnectivityGraph,
    trace: dict | None = None,
    inject=None,
) -> int:
    defn = code_definition(CodeId.FT_STEANE, graph)
    return defn.syndrome_bit(reg, stab_index, trace=trace, inject=inject)


def logical_readout(
    code: CodeId,
    state: DensityMatrix | FactoredState,
    graph: ConnectivityGraph,
    noise: NoiseModel | None,
    rng,
) -> int:
    """Sampled logical value of the data block (measurement SPAM included).

    The readout runs on an internal copy; the passed state is not collapsed.
    """
    defn = code_definition(code, graph)
    if isinstance(state, DensityMatrix):
        reg = FactoredState.from_density_matrix(state, noise, rng)
    else:
        reg = state
    return defn.readout(reg)


def steane_logical_zero_vector() -> np.ndarray:
    """Amplitude vector of the Steane logical zero on seven qubits."""
    vec = np.zeros(2 ** 7, dtype=complex)
    for word in STEANE_LOGICAL_ZERO_WORDS:
        vec[int(word, 2)] = 1.0
    return vec / np.sqrt(8.0)


def shor_logical_vector(sign: int) -> np.ndarray:
    """(|000> +- |111>)^(x3) / sqrt(8): logical zero for +, one for -."""
    block = np.zeros(8, dtype=complex)
    block[0] = 1.0
    block[7] = 1.0 if sign >= 0 else -1.0
    vec = np.kron(np.kron(block, block), block)
    return vec / np.sqrt(8.0)


def ghz_vector(n: int) -> np.ndarray:
    vec = np.zeros(2 ** n, dtype=complex)
    vec[0] = 1.0 / np.sqrt(2.0)
    vec[-1] = 1.0 / np.sqrt(2.0)
    return vec
