#include "gibbsgraph/clusters.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "gibbsgraph/point_process.hpp"
#include "gibbsgraph/rng.hpp"
#include "gibbsgraph/sampler.hpp"

namespace gibbsgraph {

std::vector<std::vector<int>> connected_components(const Configuration& config) {
    const int n = config.n_vertices();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const EdgeId& e : config.open_edges()) parent[find(e.i)] = find(e.j);
    std::vector<std::vector<int>> by_root(n);
    for (int v = 0; v < n; ++v) by_root[find(v)].push_back(v);
    std::vector<std::vector<int>> components;
    for (auto& c : by_root)
        if (!c.empty()) components.push_back(std::move(c));
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

ClusterStats cluster_stats(const Configuration& config) {
    ClusterStats stats;
    stats.n_points = config.n_vertices();
    if (stats.n_points == 0) return stats;
    const auto components = connected_components(config);
    stats.n_components = static_cast<int>(components.size());
    for (const auto& c : components) stats.largest = std::max(stats.largest, (int)c.size());
    stats.largest_fraction = static_cast<double>(stats.largest) / stats.n_points;
    stats.mean_degree = 2.0 * config.open_count() / stats.n_points;
    return stats;
}

bool crossing_indicator(const PointSet& points, const Configuration& config, const BoxRegion& box,
                        double margin) {
    if (points.size() != config.n_vertices())
        throw std::invalid_argument("crossing_indicator: point set and configuration sizes differ");
    if (!(margin >= 0.0)) throw std::invalid_argument("crossing_indicator: margin must be >= 0");
    const double left = box.low[0] + margin;
    const double right = box.high[0] - margin;
    for (const auto& component : connected_components(config)) {
        double lo = points.point(component.front())[0];
        double hi = lo;
        for (int v : component) {
            lo = std::min(lo, points.point(v)[0]);
            hi = std::max(hi, points.point(v)[0]);
        }
        if (lo <= left && hi >= right) return true;
    }
    return false;
}

std::vector<PercolationRow> percolation_experiment(const std::vector<double>& sides, int replicas,
                                                   const ModelParams& params,
                                                   const PercolationOptions& options,
                                                   std::uint64_t seed) {
    if (replicas < 1) throw std::invalid_argument("percolation_experiment: replicas must be >= 1");
    if (options.hardcore && !(options.eps0 > 0.0))
        throw std::invalid_argument("percolation_experiment: hardcore sampling needs eps0 > 0");
    std::vector<PercolationRow> rows;
    rows.reserve(sides.size() * replicas);
    for (std::size_t si = 0; si < sides.size(); ++si) {
        const double side = sides[si];
        const BoxRegion box = BoxRegion::cube(params.dim, side);
        for (int r = 0; r < replicas; ++r) {
            PercolationRow row;
            row.side = side;
            row.replica = r;
            // independent substreams per (side, replica): points and chain
            row.seed = mix_seed(seed, si, static_cast<std::uint64_t>(r));
            row.point_seed = mix_seed(row.seed, 0);
            row.chain_seed = mix_seed(row.seed, 1);
            const PointSet points =
                options.hardcore
                    ? sample_hardcore(box, options.intensity, options.eps0, row.point_seed)
                    : sample_poisson(box, options.intensity, row.point_seed);
            row.n_points = points.size();
            if (points.size() == 0) {
                rows.push_back(row);
                continue;
            }
            std::optional<double> cutoff = options.cutoff;
            if (!cutoff && options.use_default_cutoff) cutoff = default_cutoff(points, params);
            HeatBathChain chain(points, params, row.chain_seed, cutoff);
            chain.run(options.burnin + options.sweeps);
            const Configuration& config = chain.config();
            const ClusterStats stats = cluster_stats(config);
            row.crossing =
                crossing_indicator(points, config, box, options.margin_factor * side);
            row.largest_fraction = stats.largest_fraction;
            row.mean_degree = stats.mean_degree;
            row.energy = energy(points, config, params);
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace gibbsgraph
