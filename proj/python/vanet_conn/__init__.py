"""Connectivity probability of one-dimensional highway VANETs.

Thin Python front end over the C++ core. Matrices are lists of lists,
policies and run configurations are dicts following the JSON config schema.
"""

from ._core import (
    ConfigError,
    analytic_pc,
    analytic_pc_chain_mixed,
    assign_ranges,
    bool_power_reach,
    build_adjacency,
    compare_methods,
    component_count,
    consecutive_chain,
    eigenvalues,
    is_connected_exponent,
    is_connected_laplacian,
    laplacian,
    min_range_for_target,
    oracle_components,
    oracle_reachable,
    power_proxy,
    project,
    run_figure_preset,
    run_trial,
    sample_headways,
    selftest,
    spacing_matrix,
    sweep,
    symmetrize,
    vehicle_count,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
