"""Post-selected two-photon linear-optics gate synthesis."""

from ._psgate import (
    CanonicalTriple,
    CanonicalWeights,
    CartanDecomposition,
    Error,
    canonical_matrix,
    check_gate,
    check_triple,
    check_weights,
    dilate,
    f_map,
    gate_names,
    kak_decompose,
    named_gate,
    network_to_unitary,
    optimize_gate,
    probability_of_network,
    reck_decompose,
    solve_gate,
    success_probability,
    transfer_matrix,
    weights_from_triple,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalTriple",
    "CanonicalWeights",
    "CartanDecomposition",
    "Error",
    "canonical_matrix",
    "check_gate",
    "check_triple",
    "check_weights",
    "dilate",
    "f_map",
    "gate_names",
    "kak_decompose",
    "named_gate",
    "network_to_unitary",
    "optimize_gate",
    "probability_of_network",
    "reck_decompose",
    "solve_gate",
    "success_probability",
    "transfer_matrix",
    "weights_from_triple",
]
