"""qecbench: benchmark small QEC codes against a transmon-style noise model."""

__version__ = "0.1.0"

from .codes import (
    CodeId,
    CodeLayout,
    CorrectionOp,
    PauliErrorSpec,
    Syndrome,
    build_encoding,
    build_syndrome_extraction,
    decode_readout,
    decode_syndrome,
    encode_logical_zero,
    ft_prepare_cat_ancilla,
    ft_syndrome_bit,
    inject_pauli,
    layout_of,
    logical_readout,
    qec_cycle,
    stabilizer_operators,
)
from .config import ConfigError, emit_config, load_config, parse_config
from .connectivity import ConnectivityGraph, is_adjacent, route_two_qubit, shortest_path
from .engine import FactoredState
from .gates import Circuit, Gate, circuit_duration
from .harness import (
    ExperimentConfig,
    FailureHistogram,
    FailureSample,
    LogicalT1Estimate,
    cycle_duration_of,
    estimate_logical_t1,
    run_experiment,
    run_until_failure,
    sample_failure_distribution,
)
from .noise import (
    NoiseModel,
    QubitNoiseParams,
    apply_post_gate_noise,
    apply_spam,
    dephasing_channel,
    depolarizing_channel,
    relaxation_channel,
    spam_channel,
)
from .states import DensityMatrix, KrausChannel, random_density_matrix

__all__ = [
    "CodeId",
    "CodeLayout",
    "Circuit",
    "ConfigError",
    "ConnectivityGraph",
    "CorrectionOp",
    "DensityMatrix",
    "ExperimentConfig",
    "FactoredState",
    "FailureHistogram",
    "FailureSample",
    "Gate",
    "KrausChannel",
    "LogicalT1Estimate",
    "NoiseModel",
    "PauliErrorSpec",
    "QubitNoiseParams",
    "Syndrome",
    "apply_post_gate_noise",
    "apply_spam",
    "build_encoding",
    "build_syndrome_extraction",
    "circuit_duration",
    "cycle_duration_of",
    "decode_readout",
    "decode_syndrome",
    "dephasing_channel",
    "depolarizing_channel",
    "emit_config",
    "encode_logical_zero",
    "estimate_logical_t1",
    "ft_prepare_cat_ancilla",
    "ft_syndrome_bit",
    "inject_pauli",
    "is_adjacent",
    "layout_of",
    "load_config",
    "logical_readout",
    "parse_config",
    "qec_cycle",
    "random_density_matrix",
    "relaxation_channel",
    "route_two_qubit",
    "run_experiment",
    "run_until_failure",
    "sample_failure_distribution",
    "shortest_path",
    "spam_channel",
    "stabilizer_operators",
]
