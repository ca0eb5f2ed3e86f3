"""Exact dynamics, oracles and sweep tooling for waveguide-mediated
two-qubit state transfer."""

from .analytic import (
    EnvelopeCoefficients,
    OccupationTriple,
    TimeSeries,
    envelope_coefficients,
    lossless_occupations,
    lossy_occupations,
    occupations_series,
    time_grid,
)
from .metrics import (
    NClass,
    TransferMetrics,
    classify_n,
    lossless_peak_bound,
    predict_latency,
    transfer_metrics,
)
from .oracle import (
    BiorthogonalEigensystem,
    biorthogonal_eigensystem,
    block_hamiltonian,
    effective_propagate,
    jump_probability,
    lindblad_evolve,
)
from .params import DerivedParams, SystemParams, derive, parse_rate
from .sweep import BenchReport, ComparisonStats, HeatmapGrid, SweepSpec, benchmark, compare_methods, run_sweep

__all__ = [
    "BenchReport",
    "BiorthogonalEigensystem",
    "ComparisonStats",
    "DerivedParams",
    "EnvelopeCoefficients",
    "HeatmapGrid",
    "NClass",
    "OccupationTriple",
    "SweepSpec",
    "SystemParams",
    "TimeSeries",
    "TransferMetrics",
    "benchmark",
    "biorthogonal_eigensystem",
    "block_hamiltonian",
    "classify_n",
    "compare_methods",
    "derive",
    "effective_propagate",
    "envelope_coefficients",
    "jump_probability",
    "lindblad_evolve",
    "lossless_occupations",
    "lossless_peak_bound",
    "lossy_occupations",
    "occupations_series",
    "parse_rate",
    "predict_latency",
    "run_sweep",
    "time_grid",
    "transfer_metrics",
]
