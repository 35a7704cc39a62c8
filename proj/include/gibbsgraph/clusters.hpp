#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gibbsgraph/geometry.hpp"
#include "gibbsgraph/model.hpp"

namespace gibbsgraph {

/// Connected components of the open-edge graph.  Components are sorted
/// internally and ordered by smallest member.  Isolated vertices appear as
/// singleton components, so the result is a partition of all vertices.
std::vector<std::vector<int>> connected_components(const Configuration& config);

struct ClusterStats {
    int n_points = 0;
    int n_components = 0;
    int largest = 0;
    /// largest / n_points; 0 on an empty point set.
    double largest_fraction = 0.0;
    /// 2 * open_count / n_points; 0 on an empty point set.
    double mean_degree = 0.0;
};

ClusterStats cluster_stats(const Configuration& config);

/// Left-right crossing proxy along axis 0: some component has a vertex with
/// x0 <= low0 + margin and a vertex with x0 >= high0 - margin.  The margin
/// absorbs the fact that a continuum sample a.s. never touches the boundary.
bool crossing_indicator(const PointSet& points, const Configuration& config, const BoxRegion& box,
                        double margin);

struct PercolationOptions {
    /// "poisson" or "hardcore".
    bool hardcore = false;
    double eps0 = 0.0;
    double intensity = 1.0;
    int burnin = 1000;
    /// Extra sweeps after burn-in before the measurement (measurement uses
    /// the final configuration).
    int sweeps = 0;
    /// Crossing margin as a fraction of the box side.
    double margin_factor = 0.05;
    /// std::nullopt = per-instance default_cutoff policy.
    std::optional<double> cutoff;
    bool use_default_cutoff = true;
};

struct PercolationRow {
    double side = 0.0;
    int replica = 0;
    /// Per-replica master seed (reported); point_seed/chain_seed derive from it.
    std::uint64_t seed = 0;
    std::uint64_t point_seed = 0;
    std::uint64_t chain_seed = 0;
    int n_points = 0;
    bool crossing = false;
    double largest_fraction = 0.0;
    double mean_degree = 0.0;
    double energy = 0.0;
};

/// Finite-size crossing experiment: for each box side and replica, sample a
/// point set, equilibrate a chain, and record crossing/cluster observables.
/// Rows come out ordered (side index, then replica); all randomness is
/// derived from `seed` via per-(side, replica) substreams, so the result is
/// a pure function of the arguments.
std::vector<PercolationRow> percolation_experiment(const std::vector<double>& sides, int replicas,
                                                   const ModelParams& params,
                                                   const PercolationOptions& options,
                                                   std::uint64_t seed);

} // namespace gibbsgraph
