"""Spectral measures of Wigner matrices: semicircle potentials, measure
distances, exact combinatorial oracles and reproducible Monte Carlo
experiments. The heavy lifting lives in the C++ extension module."""

from ._core import (
    AtomicMeasure,
    HermitianMatrix,
    QuadratureAccuracyError,
    IterationLimitError,
    ConfigError,
    sc_density,
    sc_cdf,
    sc_quantile,
    sc_quantile_atoms,
    fs_density,
    inverse_joukowski,
    sc_potential,
    log_potential,
    dist_potential,
    w1_distance,
    interval_discrepancy,
    potential_gap,
    chebyshev_grid,
    mass_outside,
    eigenvalues,
    tridiagonalize,
    esd,
    log_abs_charpoly,
    charpoly_coeffs_small,
    sample_wigner,
    scale_to_w,
    sample_er_adjacency,
    er_normalize,
    er_center,
    moments_of,
    enumerate_symmetric_rademacher,
    hermite,
    hermite_log_abs,
    hermite_bound_ratio,
    expected_charpoly_zero_diag,
    stirling_cycle_count,
    cycle_bound_check,
    partial_sum_R,
    r0_inclusion_exclusion,
    exhaustive_expected_charpoly,
    markov_ratio,
    net_sup_ratio,
    run_oracle_suite,
    run_wigner_experiment,
)

__all__ = [
    "AtomicMeasure",
    "HermitianMatrix",
    "QuadratureAccuracyError",
    "IterationLimitError",
    "ConfigError",
    "sc_density",
    "sc_cdf",
    "sc_quantile",
    "sc_quantile_atoms",
    "fs_density",
    "inverse_joukowski",
    "sc_potential",
    "log_potential",
    "dist_potential",
    "w1_distance",
    "interval_discrepancy",
    "potential_gap",
    "chebyshev_grid",
    "mass_outside",
    "eigenvalues",
    "tridiagonalize",
    "esd",
    "log_abs_charpoly",
    "charpoly_coeffs_small",
    "sample_wigner",
    "scale_to_w",
    "sample_er_adjacency",
    "er_normalize",
    "er_center",
    "moments_of",
    "enumerate_symmetric_rademacher",
    "hermite",
    "hermite_log_abs",
    "hermite_bound_ratio",
    "expected_charpoly_zero_diag",
    "stirling_cycle_count",
    "cycle_bound_check",
    "partial_sum_R",
    "r0_inclusion_exclusion",
    "exhaustive_expected_charpoly",
    "markov_ratio",
    "net_sup_ratio",
    "run_oracle_suite",
    "run_wigner_experiment",
]

__version__ = "0.1.0"
