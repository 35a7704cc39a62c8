#include "gibbsgraph/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gibbsgraph {

ExactDistribution exact_distribution(const PointSet& points, const ModelParams& params) {
    const int n = points.size();
    const std::size_t m = edge_count(n);
    if (m > ExactDistribution::kMaxEdges)
        throw std::invalid_argument("exact_distribution: C(n,2) = " + std::to_string(m) +
                                    " exceeds the enumeration cap of " +
                                    std::to_string(ExactDistribution::kMaxEdges));

    ExactDistribution dist;
    dist.n = n;
    dist.edges.reserve(m);
    for (std::size_t k = 0; k < m; ++k) dist.edges.push_back(index_to_edge(n, k));
    std::vector<double> lengths(m);
    for (std::size_t k = 0; k < m; ++k) lengths[k] = points.edge_length(dist.edges[k]);

    // Gray-code walk: consecutive masks differ in one edge, so each energy is
    // an O(1) update of the previous one.  probabilities[] holds raw energies
    // until the final normalization pass.
    const std::size_t total = std::size_t(1) << m;
    dist.probabilities.assign(total, 0.0);
    std::vector<int> deg(n, 0);
    std::vector<bool> open(m, false);
    double e = n * params.h0; // empty graph: every vertex is an isolated monomer
    dist.probabilities[0] = e;
    for (std::size_t i = 1; i < total; ++i) {
        const int b = std::countr_zero(i);
        const EdgeId& edge = dist.edges[b];
        const bool was_open = open[b];
        const int d1 = deg[edge.i] - (was_open ? 1 : 0);
        const int d2 = deg[edge.j] - (was_open ? 1 : 0);
        const double open_cost = lengths[b] + params.h1 * (d1 + d2) -
                                 params.h0 * (d1 == 0 ? 1.0 : 0.0) -
                                 params.h0 * (d2 == 0 ? 1.0 : 0.0);
        if (was_open) {
            e -= open_cost;
            --deg[edge.i];
            --deg[edge.j];
        } else {
            e += open_cost;
            ++deg[edge.i];
            ++deg[edge.j];
        }
        open[b] = !was_open;
        dist.probabilities[i ^ (i >> 1)] = e;
    }

    dist.min_energy = *std::min_element(dist.probabilities.begin(), dist.probabilities.end());
    // shift by the minimum before exponentiating so the weights stay in range
    // at large beta
    double s = 0.0;
    for (double& p : dist.probabilities) {
        p = std::exp(-params.beta * (p - dist.min_energy));
        s += p;
    }
    for (double& p : dist.probabilities) p /= s;
    dist.z = s * std::exp(-params.beta * dist.min_energy);
    dist.log_z = std::log(s) - params.beta * dist.min_energy;
    return dist;
}

double ExactDistribution::edge_marginal(std::size_t k) const {
    if (k >= edges.size()) throw std::invalid_argument("edge_marginal: edge index out of range");
    const std::size_t bit = std::size_t(1) << k;
    double s = 0.0;
    for (std::size_t mask = 0; mask < probabilities.size(); ++mask)
        if (mask & bit) s += probabilities[mask];
    return s;
}

double ExactDistribution::conditional_open(std::size_t k, std::uint32_t mask) const {
    if (k >= edges.size())
        throw std::invalid_argument("conditional_open: edge index out of range");
    const std::uint32_t bit = std::uint32_t(1) << k;
    const double p1 = probabilities[mask | bit];
    const double p0 = probabilities[mask & ~bit];
    return p1 / (p1 + p0);
}

std::vector<double> ExactDistribution::cumulative() const {
    std::vector<double> cum(probabilities.size());
    std::partial_sum(probabilities.begin(), probabilities.end(), cum.begin());
    cum.back() = std::max(cum.back(), 1.0); // guard the u ~ 1 edge against rounding
    return cum;
}

Configuration ExactDistribution::to_configuration(std::uint32_t mask) const {
    Configuration config(n);
    for (std::size_t k = 0; k < edges.size(); ++k)
        if (mask & (std::uint32_t(1) << k)) config.set_open(edges[k], true);
    return config;
}

std::uint32_t sample_mask(const std::vector<double>& cumulative, double u) {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t idx =
        it == cumulative.end() ? cumulative.size() - 1 : std::size_t(it - cumulative.begin());
    return static_cast<std::uint32_t>(idx);
}

double conditional_open_probability(const PointSet& points, const Configuration& rest,
                                    const EdgeId& e, const ModelParams& params) {
    if (rest.is_open(e))
        throw std::invalid_argument(
            "conditional_open_probability: e must be unassigned (closed) in the rest");
    const double de = energy_delta(points, rest, e, params);
    // heat-bath acceptance; exp may overflow to inf, which correctly gives 0
    return 1.0 / (1.0 + std::exp(params.beta * de));
}

std::optional<double> default_cutoff(const PointSet& points, const ModelParams& params) {
    if (points.size() <= 40) return std::nullopt;
    return 2.0 * params.h0 + 10.0 / params.beta;
}

HeatBathChain::HeatBathChain(PointSet points, const ModelParams& params, std::uint64_t seed,
                             std::optional<double> cutoff)
    : points_(std::move(points)), params_(params), cutoff_(cutoff),
      config_(points_.size()), rng_(seed) {
    const int n = points_.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double len = points_.distance(i, j);
            if (cutoff_ && len > *cutoff_) continue;
            active_.emplace_back(i, j);
            active_length_.push_back(len);
        }
    }
    order_.resize(active_.size());
}

void HeatBathChain::sweep() {
    const std::size_t a = active_.size();
    std::iota(order_.begin(), order_.end(), std::uint32_t{0});
    shuffle(order_, rng_);
    for (std::size_t t = 0; t < a; ++t) {
        const std::uint32_t idx = order_[t];
        const EdgeId& e = active_[idx];
        const bool open = config_.is_open(e);
        const int d1 = config_.degree(e.i) - (open ? 1 : 0);
        const int d2 = config_.degree(e.j) - (open ? 1 : 0);
        const double de = active_length_[idx] + params_.h1 * (d1 + d2) -
                          params_.h0 * (d1 == 0 ? 1.0 : 0.0) -
                          params_.h0 * (d2 == 0 ? 1.0 : 0.0);
        const double p_open = 1.0 / (1.0 + std::exp(params_.beta * de));
        config_.set_open(e, rng_.uniform() < p_open);
    }
    ++sweeps_done_;
}

void HeatBathChain::run(int sweeps) {
    for (int s = 0; s < sweeps; ++s) sweep();
}

std::vector<Configuration> mcmc_run(const PointSet& points, const ModelParams& params,
                                    std::uint64_t seed, int burnin, int sweeps,
                                    std::optional<double> cutoff) {
    if (burnin < 0 || sweeps < 0)
        throw std::invalid_argument("mcmc_run: burnin and sweeps must be >= 0");
    HeatBathChain chain(points, params, seed, cutoff);
    chain.run(burnin);
    std::vector<Configuration> stream;
    stream.reserve(sweeps);
    for (int s = 0; s < sweeps; ++s) {
        chain.sweep();
        stream.push_back(chain.config());
    }
    return stream;
}

std::vector<MarginalEstimate> estimate_edge_marginals(const std::vector<Configuration>& stream,
                                                      int thin) {
    if (thin < 1) throw std::invalid_argument("estimate_edge_marginals: thin must be >= 1");
    std::vector<const Configuration*> kept;
    for (std::size_t t = 0; t < stream.size(); t += thin) kept.push_back(&stream[t]);
    if (kept.empty())
        throw std::invalid_argument("estimate_edge_marginals: empty configuration stream");

    const int n = kept.front()->n_vertices();
    const std::size_t m = edge_count(n);
    const std::size_t total = kept.size();
    // sqrt(N) batches of equal size; the tail that does not fill a batch is
    // dropped so means and errors use the same entries
    const std::size_t batches = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(total)))));
    const std::size_t batch_len = total / batches;
    const std::size_t used = batches * batch_len;

    std::vector<double> batch_sum(batches * m, 0.0);
    for (std::size_t t = 0; t < used; ++t) {
        if (kept[t]->n_vertices() != n)
            throw std::invalid_argument("estimate_edge_marginals: mixed vertex counts in stream");
        const std::size_t b = t / batch_len;
        for (const EdgeId& e : kept[t]->open_edges())
            batch_sum[b * m + edge_to_index(n, e)] += 1.0;
    }

    std::vector<MarginalEstimate> out;
    out.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        double mean = 0.0;
        for (std::size_t b = 0; b < batches; ++b) mean += batch_sum[b * m + k];
        mean /= static_cast<double>(used);
        double se = 0.0;
        if (batches >= 2) {
            double var = 0.0;
            for (std::size_t b = 0; b < batches; ++b) {
                const double bm = batch_sum[b * m + k] / static_cast<double>(batch_len);
                var += (bm - mean) * (bm - mean);
            }
            se = std::sqrt(var / (static_cast<double>(batches) * (batches - 1)));
        }
        out.push_back({index_to_edge(n, k), mean, se});
    }
    return out;
}

double star_probability_bound(const PointSet& points, const Star& star, const ModelParams& params,
                              int environment_open_count) {
    if (star.center < 0 || star.center >= points.size())
        throw std::invalid_argument("star_probability_bound: center out of range");
    if (environment_open_count < 0)
        throw std::invalid_argument("star_probability_bound: negative environment count");
    std::set<std::pair<int, int>> seen;
    double length_sum = 0.0;
    for (const EdgeId& e : star.open) {
        if (e.i != star.center && e.j != star.center)
            throw std::invalid_argument("star_probability_bound: edge not incident to center");
        if (!seen.insert({e.i, e.j}).second)
            throw std::invalid_argument("star_probability_bound: duplicate edge in star");
        length_sum += points.edge_length(e);
    }
    for (const EdgeId& e : star.closed) {
        if (e.i != star.center && e.j != star.center)
            throw std::invalid_argument("star_probability_bound: edge not incident to center");
        if (!seen.insert({e.i, e.j}).second)
            throw std::invalid_argument("star_probability_bound: duplicate edge in star");
    }
    const int d = static_cast<int>(star.open.size());
    if (environment_open_count == 0 && d < 2)
        throw std::invalid_argument(
            "star_probability_bound: the isolated-star bound needs open-degree >= 2");
    // closed requirements only shrink the event; they do not enter the bound
    double crowd, iso;
    if (environment_open_count == 0) {
        crowd = static_cast<double>(d) * (d - 1) / 2.0;
        iso = d + 1.0;
    } else {
        crowd = static_cast<double>(d + 1) * d / 2.0;
        iso = d;
    }
    return std::exp(params.beta * (-length_sum - params.h1 * crowd + params.h0 * iso));
}

double degree_bound(double t, const ModelParams& params, int k_max) {
    if (!(t >= 0.0)) throw std::invalid_argument("degree_bound: t must be >= 0");
    if (k_max < 1) throw std::invalid_argument("degree_bound: k_max must be >= 1");
    // term_k = k * exp(beta*(-h1*C(k,2) + h0*(k+1))) * t^k / k!
    double term = t * std::exp(2.0 * params.beta * params.h0); // k = 1
    double sum = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        sum += term;
        const double ratio = std::exp(params.beta * (params.h0 - params.h1 * k)) * t / k;
        term *= ratio;
        if (term < 1e-300 && ratio < 1.0) return sum; // tail is dead to double precision
    }
    if (!(term < 1e-12))
        throw std::invalid_argument("degree_bound: k_max too small, truncated term is " +
                                    std::to_string(term));
    return sum;
}

} // namespace gibbsgraph
