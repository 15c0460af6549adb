"""Density-matrix simulator for quantum-witness experiments."""

from ._core import (
    Circuit,
    DensityMatrix,
    DisconnectivityReport,
    Distribution,
    GateDurations,
    InvasivenessRecord,
    NoiseParams,
    PartitionStrategy,
    SampleResult,
    Scenario,
    WitnessResult,
    analytic_cat_witness,
    cat_preparation_circuit,
    derive_seed,
    dimension_estimate,
    disconnectivity,
    invasiveness_test,
    inverse_circuit,
    product_preparation_circuit,
    run_witness,
    sample_counts,
    simulate_circuit,
    to_qasm,
    von_neumann_entropy,
    w_max,
)

__all__ = [
    "Circuit",
    "DensityMatrix",
    "DisconnectivityReport",
    "Distribution",
    "GateDurations",
    "InvasivenessRecord",
    "NoiseParams",
    "PartitionStrategy",
    "SampleResult",
    "Scenario",
    "WitnessResult",
    "analytic_cat_witness",
    "cat_preparation_circuit",
    "derive_seed",
    "dimension_estimate",
    "disconnectivity",
    "invasiveness_test",
    "inverse_circuit",
    "product_preparation_circuit",
    "run_witness",
    "sample_counts",
    "simulate_circuit",
    "to_qasm",
    "von_neumann_entropy",
    "w_max",
]

__version__ = "0.1.0"
