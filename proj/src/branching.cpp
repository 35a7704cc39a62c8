#include "gibbsgraph/branching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gibbsgraph/clusters.hpp"
#include "gibbsgraph/rng.hpp"
#include "gibbsgraph/sampler.hpp"

namespace gibbsgraph {

BranchingTrace explore_cluster(const Configuration& config, int start, const ExploreCaps& caps) {
    const int n = config.n_vertices();
    if (start < 0 || start >= n) throw std::invalid_argument("explore_cluster: start out of range");
    if (caps.max_generations < 1 || caps.max_edges < 1)
        throw std::invalid_argument("explore_cluster: caps must be >= 1");

    // adjacency of the open graph, needed once up front
    std::vector<std::vector<int>> adj(n);
    for (const EdgeId& e : config.open_edges()) {
        adj[e.i].push_back(e.j);
        adj[e.j].push_back(e.i);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());

    BranchingTrace trace;
    trace.start_vertex = start;
    std::vector<bool> reached(n, false); // member of some generation
    std::vector<bool> scanned(n, false); // its incident edges have been emitted
    reached[start] = true;
    trace.generations.push_back({start});

    // Stage n+1 scans every vertex first reached in stage n.  An edge is
    // emitted by whichever endpoint is scanned first and skipped by the
    // other (within a stage, scan order breaks the tie), so each component
    // edge - tree or cycle - is discovered exactly once.  `reached` only
    // gates generation membership.
    std::vector<int> frontier{start};
    long generation = 0;
    while (!frontier.empty()) {
        if (generation >= caps.max_generations) {
            trace.survived = true;
            return trace;
        }
        ++generation;
        std::vector<int> next;
        for (int v : frontier) {
            scanned[v] = true;
            for (int w : adj[v]) {
                if (scanned[w]) continue; // edge already emitted from w
                if (static_cast<long>(trace.edges.size()) >= caps.max_edges) {
                    trace.survived = true;
                    if (!next.empty()) trace.generations.push_back(next);
                    return trace;
                }
                trace.edges.push_back({static_cast<int>(generation), v, EdgeId(v, w)});
                if (!reached[w]) {
                    reached[w] = true;
                    next.push_back(w);
                }
            }
        }
        if (!next.empty()) trace.generations.push_back(next);
        frontier = std::move(next);
    }
    return trace;
}

namespace {

/// t^m / m! * exp(beta*(-h1*C(m+1,2) + h0*m)), shared by the bound family.
double offspring_term(int m, double t, const ModelParams& params) {
    double poisson = 1.0;
    for (int i = 1; i <= m; ++i) poisson *= t / i;
    const double crowd = static_cast<double>(m + 1) * m / 2.0;
    return poisson * std::exp(params.beta * (-params.h1 * crowd + params.h0 * m));
}

} // namespace

double offspring_probability_bound(int m, double t, const ModelParams& params) {
    if (m < 0) throw std::invalid_argument("offspring_probability_bound: m must be >= 0");
    if (!(t >= 0.0)) throw std::invalid_argument("offspring_probability_bound: t must be >= 0");
    return offspring_term(m, t, params);
}

double expected_offspring_bound(double t, const ModelParams& params, int m_max) {
    if (!(t >= 0.0)) throw std::invalid_argument("expected_offspring_bound: t must be >= 0");
    if (m_max < 1) throw std::invalid_argument("expected_offspring_bound: m_max must be >= 1");
    // term_m = m * offspring_term(m); ratio m -> m+1 is
    // exp(beta*(h0 - h1*(m+1))) * t / m, eventually tiny since h0 < h1
    double term = t * std::exp(params.beta * (params.h0 - params.h1));
    double sum = 0.0;
    for (int m = 1; m <= m_max; ++m) {
        sum += term;
        const double ratio = std::exp(params.beta * (params.h0 - params.h1 * (m + 1))) * t / m;
        term *= ratio;
        if (term < 1e-300 && ratio < 1.0) return sum;
    }
    if (!(term < 1e-12))
        throw std::invalid_argument("expected_offspring_bound: m_max too small, truncated term is " +
                                    std::to_string(term));
    return sum;
}

double expected_cluster_size_bound(double first_stage_mean, double eps) {
    if (!(first_stage_mean >= 0.0))
        throw std::invalid_argument("expected_cluster_size_bound: mean must be >= 0");
    if (!(eps > 0.0) || !(eps <= 1.0))
        throw std::invalid_argument("expected_cluster_size_bound: eps must be in (0, 1]");
    return first_stage_mean / eps;
}

std::optional<double> critical_beta_estimate(const std::function<double(double)>& t_sup_of_beta,
                                             double h0, double h1,
                                             const CriticalBetaOptions& options) {
    if (!(options.beta_min > 0.0) || !(options.beta_max >= options.beta_min))
        throw std::invalid_argument("critical_beta_estimate: bad beta range");
    if (!(options.factor > 1.0))
        throw std::invalid_argument("critical_beta_estimate: factor must be > 1");
    if (!(options.eps > 0.0) || !(options.eps < 1.0))
        throw std::invalid_argument("critical_beta_estimate: eps must be in (0, 1)");
    for (double beta = options.beta_min; beta <= options.beta_max; beta *= options.factor) {
        const ModelParams params(beta, h0, h1, 1); // dim is irrelevant to the bound
        const double t = t_sup_of_beta(beta);
        // at small beta the Poisson-like terms only die past m ~ t, so size
        // the truncation with t instead of relying on the default
        const int m_max = 64 + static_cast<int>(std::ceil(4.0 * t));
        const double bound = expected_offspring_bound(t, params, m_max);
        if (bound < 1.0 - options.eps) return beta;
    }
    return std::nullopt;
}

ExtinctionResult extinction_experiment(const PointSet& points, const ModelParams& params,
                                       int n_runs, std::uint64_t seed,
                                       const ExtinctionOptions& options) {
    if (n_runs < 1) throw std::invalid_argument("extinction_experiment: n_runs must be >= 1");
    if (points.size() == 0)
        throw std::invalid_argument("extinction_experiment: empty point set");
    if (options.start_vertex < 0 || options.start_vertex >= points.size())
        throw std::invalid_argument("extinction_experiment: start vertex out of range");

    ExtinctionResult result;
    result.runs.reserve(n_runs);

    const bool exact = edge_count(points.size()) <= ExactDistribution::kMaxEdges;
    std::optional<ExactDistribution> dist;
    std::vector<double> cumulative;
    if (exact) {
        dist = exact_distribution(points, params);
        cumulative = dist->cumulative();
    }
    std::optional<double> cutoff = options.cutoff;
    if (!cutoff && options.use_default_cutoff) cutoff = default_cutoff(points, params);

    for (int r = 0; r < n_runs; ++r) {
        const std::uint64_t run_seed = mix_seed(seed, static_cast<std::uint64_t>(r));
        Configuration config(points.size());
        if (exact) {
            SplitMix64 rng(run_seed);
            config = dist->to_configuration(sample_mask(cumulative, rng.uniform()));
        } else {
            HeatBathChain chain(points, params, run_seed, cutoff);
            chain.run(options.burnin);
            config = chain.config();
        }
        const BranchingTrace trace = explore_cluster(config, options.start_vertex, options.caps);

        ExtinctionRun run;
        run.seed = run_seed;
        run.start_vertex = options.start_vertex;
        run.explored_edges = static_cast<long>(trace.edge_total());
        run.generations = trace.generation_count();
        run.survived = trace.survived;
        // component edge count of the start vertex, for the coupling check
        for (const auto& component : connected_components(config)) {
            if (std::find(component.begin(), component.end(), options.start_vertex) ==
                component.end())
                continue;
            long edges_in_component = 0;
            for (const EdgeId& e : config.open_edges())
                if (std::find(component.begin(), component.end(), e.i) != component.end())
                    ++edges_in_component;
            run.component_edges = edges_in_component;
            break;
        }
        result.runs.push_back(run);
    }
    long finite = 0;
    for (const auto& run : result.runs)
        if (!run.survived) ++finite;
    result.finite_fraction = static_cast<double>(finite) / n_runs;
    result.survival_fraction = 1.0 - result.finite_fraction;
    return result;
}

} // namespace gibbsgraph
