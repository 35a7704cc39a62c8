#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gibbsgraph/geometry.hpp"
#include "gibbsgraph/model.hpp"

namespace gibbsgraph {

struct ExploreCaps {
    long max_generations = 10000;
    long max_edges = 1000000;
};

/// One explored edge: `edge` was discovered as offspring of the open edge
/// whose newly-reached endpoint is `parent_vertex`, in stage `generation`.
struct ExploredEdge {
    int generation;
    int parent_vertex;
    EdgeId edge;
};

struct BranchingTrace {
    int start_vertex = 0;
    /// All explored open edges, in discovery order (stage by stage).
    std::vector<ExploredEdge> edges;
    /// Vertices first reached per stage; stage 0 is {start_vertex}.
    std::vector<std::vector<int>> generations;
    /// True iff a cap was hit before the frontier died out.
    bool survived = false;

    std::size_t edge_total() const { return edges.size(); }
    long generation_count() const { return static_cast<long>(generations.size()) - 1; }
};

/// Stage-wise exploration of the open cluster of `start` in `config`:
/// stage n+1 scans every vertex first reached in stage n and collects its
/// open edges to vertices not scanned yet (within a stage, scan order breaks
/// the tie).  Each edge of the cluster - tree or cycle - is emitted by
/// whichever endpoint is scanned first and skipped by the other, hence
/// discovered exactly once, so the union of all stages is exactly the edge
/// set of the component of `start` (this coupling with the
/// connected-component structure is what makes the extinction bound below a
/// percolation statement, and tests assert the set equality).  Stops early
/// (survived = true) when a cap is hit.
BranchingTrace explore_cluster(const Configuration& config, int start, const ExploreCaps& caps = {});

/// Upper bound on the probability that one branching step at a vertex with
/// local exponential mass t produces exactly m offspring edges:
///   exp(beta * (-h1*C(m+1,2) + h0*m)) * t^m / m!    (m >= 1).
double offspring_probability_bound(int m, double t, const ModelParams& params);

/// Series bound on the expected offspring count of one step:
///   sum_{m>=1} m * exp(beta*(-h1*C(m+1,2) + h0*m)) * t^m / m!.
/// Truncated at m_max; throws std::invalid_argument if the first omitted
/// term is not < 1e-12.
double expected_offspring_bound(double t, const ModelParams& params, int m_max = 64);

/// Subcritical branching gives a finite cluster; when the expected offspring
/// bound is b <= 1 - eps, the expected total progeny (= explored edges) is
/// at most (first stage mean) / eps.  first_stage_mean is an upper bound on
/// E|stage 1| - expected_offspring_bound at the start vertex serves.
double expected_cluster_size_bound(double first_stage_mean, double eps);

/// Smallest beta on the geometric grid {beta_min * factor^k} for which
/// expected_offspring_bound(t_sup(beta), beta) < 1 - eps.  The bound is
/// monotone decreasing in beta when t_sup is (each series term is: the
/// exponent -h1*C(m+1,2) + h0*m is < 0 for all m >= 1 because h0 < h1), so
/// the first grid hit brackets the true threshold from above within one
/// factor.  Returns nullopt if no grid point works.
struct CriticalBetaOptions {
    double beta_min = 1e-3;
    double beta_max = 1e4;
    double factor = 1.05;
    double eps = 0.05;
};

std::optional<double> critical_beta_estimate(const std::function<double(double)>& t_sup_of_beta,
                                             double h0, double h1,
                                             const CriticalBetaOptions& options = {});

struct ExtinctionRun {
    std::uint64_t seed = 0;
    int start_vertex = 0;
    long explored_edges = 0;
    long generations = 0;
    bool survived = false;
    /// Size (in edges) of the start vertex's component, for the coupling
    /// cross-check; equals explored_edges whenever no cap was hit.
    long component_edges = 0;
};

struct ExtinctionOptions {
    int start_vertex = 0;
    int burnin = 1000;
    ExploreCaps caps;
    bool use_default_cutoff = true;
    std::optional<double> cutoff;
};

struct ExtinctionResult {
    std::vector<ExtinctionRun> runs;
    double finite_fraction = 0.0;
    double survival_fraction = 0.0; // = 1 - finite_fraction by construction
};

/// Draws `n_runs` equilibrium configurations (exact inverse-CDF sampling
/// when C(n,2) <= 22, heat-bath MCMC otherwise), explores the cluster of
/// the start vertex in each, and tabulates extinction frequency.
ExtinctionResult extinction_experiment(const PointSet& points, const ModelParams& params,
                                       int n_runs, std::uint64_t seed,
                                       const ExtinctionOptions& options = {});

} // namespace gibbsgraph
