"""Gibbs random graphs on finite point sets.

Thin python layer over the C++ core: point-process sampling, the graph
Hamiltonian, exact and MCMC sampling, ground states, stochastic-domination
and branching/percolation diagnostics.
"""

from ._gibbsgraph import (  # noqa: F401
    BoxRegion,
    BranchingTrace,
    ClusterStats,
    Configuration,
    CriticalBetaOptions,
    EdgeId,
    ExactDistribution,
    ExploreCaps,
    ExploredEdge,
    ExtinctionOptions,
    ExtinctionResult,
    ExtinctionRun,
    GroundStateResult,
    HeatBathChain,
    MarginalEstimate,
    ModelParams,
    PercolationOptions,
    PercolationRow,
    PointSet,
    Star,
    Uniqueness,
    __version__,
    cluster_decompose_2h0,
    cluster_stats,
    conditional_open_probability,
    connected_components,
    connection_g,
    critical_beta_estimate,
    crossing_indicator,
    default_cutoff,
    degree_bound,
    energy,
    energy_delta,
    estimate_edge_marginals,
    exact_distribution,
    expected_cluster_size_bound,
    expected_offspring_bound,
    explore_cluster,
    extinction_experiment,
    ground_state_bruteforce,
    ground_state_matching,
    in_region_f,
    is_unique_ground_state,
    j_tail_integral,
    mcmc_run,
    nu_open_probability,
    offspring_probability_bound,
    penalty,
    percolation_experiment,
    sample_hardcore,
    sample_nu,
    sample_poisson,
    star_probability_bound,
    subcritical_rcm,
    t_gamma,
    t_sup,
    total_g_integral,
    verify_ground_state_properties,
)
