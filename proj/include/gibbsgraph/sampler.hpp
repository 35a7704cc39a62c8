#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gibbsgraph/geometry.hpp"
#include "gibbsgraph/model.hpp"
#include "gibbsgraph/rng.hpp"

namespace gibbsgraph {

/// The full finite-volume Gibbs distribution on all 2^C(n,2) graphs, built by
/// exhaustive enumeration (free boundary: no edges to the outside).  Only
/// feasible for C(n,2) <= kMaxEdges; the constructor-function throws
/// std::invalid_argument beyond that.
struct ExactDistribution {
    static constexpr int kMaxEdges = 22;

    int n = 0;
    /// Canonical edge order; bit k of a mask corresponds to edges[k].
    std::vector<EdgeId> edges;
    /// probabilities[mask] = Gibbs weight / Z; sums to 1.
    std::vector<double> probabilities;
    /// Partition sum Z (> 0) and its log, kept separately because Z itself
    /// can underflow at large beta.
    double z = 0.0;
    double log_z = 0.0;
    double min_energy = 0.0;

    double probability(std::uint32_t mask) const { return probabilities[mask]; }

    /// P(edge k open) by direct summation.
    double edge_marginal(std::size_t k) const;

    /// Exact conditional P(edge k open | all other edges as in mask).
    double conditional_open(std::size_t k, std::uint32_t mask) const;

    /// Cumulative probability table for inverse-CDF sampling.
    std::vector<double> cumulative() const;

    Configuration to_configuration(std::uint32_t mask) const;
};

/// Inverse-CDF draw: the first mask whose cumulative probability exceeds u.
std::uint32_t sample_mask(const std::vector<double>& cumulative, double u);

ExactDistribution exact_distribution(const PointSet& points, const ModelParams& params);

/// Single-edge heat-bath conditional: the probability that e is open given
/// the rest of the configuration,
///   p = 1 / (1 + exp(beta * dE))      with dE = energy_delta for opening e.
/// Precondition: e is closed in `rest` (the conditional is a function of the
/// others only); throws std::invalid_argument otherwise.
double conditional_open_probability(const PointSet& points, const Configuration& rest,
                                    const EdgeId& e, const ModelParams& params);

/// Cutoff policy for which pairs the chain updates: pairs longer than the
/// cutoff stay closed.  Small systems (n <= 40) get no cutoff; larger ones
/// get 2*h0 + 10/beta, where the single-edge acceptance is below ~5e-5 even
/// ignoring the crowding penalty, so the truncation bias is far below the
/// statistical resolution of any experiment this library runs.
std::optional<double> default_cutoff(const PointSet& points, const ModelParams& params);

/// Glauber/heat-bath dynamics on the open-edge configuration.  One sweep
/// resamples every active pair once, in a fresh uniformly random order, each
/// from its exact conditional given the rest.  The chain starts from the
/// empty configuration and is deterministic per (points, params, seed,
/// cutoff).
class HeatBathChain {
  public:
    HeatBathChain(PointSet points, const ModelParams& params, std::uint64_t seed,
                  std::optional<double> cutoff = std::nullopt);

    void sweep();
    void run(int sweeps);

    const Configuration& config() const { return config_; }
    const PointSet& points() const { return points_; }
    long sweeps_done() const { return sweeps_done_; }
    const std::vector<EdgeId>& active_edges() const { return active_; }
    std::optional<double> cutoff() const { return cutoff_; }

  private:
    PointSet points_;
    ModelParams params_;
    std::optional<double> cutoff_;
    std::vector<EdgeId> active_;
    std::vector<double> active_length_;
    std::vector<std::uint32_t> order_; // scratch permutation, reused per sweep
    Configuration config_;
    SplitMix64 rng_;
    long sweeps_done_ = 0;
};

/// Runs burnin sweeps, then records the configuration after each of `sweeps`
/// further sweeps.  Returns the recorded stream (size `sweeps`).
std::vector<Configuration> mcmc_run(const PointSet& points, const ModelParams& params,
                                    std::uint64_t seed, int burnin, int sweeps,
                                    std::optional<double> cutoff = std::nullopt);

struct MarginalEstimate {
    EdgeId edge;
    double mean;
    double std_error;
};

/// Per-edge open-probability estimates from a configuration stream, with
/// batch-means standard errors (sqrt(N) batches).  `thin` keeps every
/// thin-th entry.  A constant stream yields SE exactly 0.  Throws
/// std::invalid_argument on an empty (post-thinning) stream or thin < 1.
std::vector<MarginalEstimate> estimate_edge_marginals(const std::vector<Configuration>& stream,
                                                      int thin = 1);

/// A star at a center vertex: a full open/closed assignment of some set of
/// the center's incident pairs.  The bound below is for the event "the graph
/// agrees with this assignment" (everything else unconstrained).
struct Star {
    int center;
    std::vector<EdgeId> open;
    std::vector<EdgeId> closed;
};

/// Upper bound on the probability of a star event, obtained by deleting the
/// star's open edges and bounding the worst-case penalty change.
///
/// environment_open_count = how many further edges at the *center*, outside
/// the star's assignment, are known open in the conditioning environment
/// (the exploration setting: already-discovered edges).  Two regimes:
///   - 0: the star covers all of the center's edges, so deleting it leaves
///     the center isolated; needs open-degree d >= 2:
///       exp(beta * (-sum L - h1*C(d,2) + h0*(d+1)))
///   - >= 1: the center keeps an open edge (degree >= d+1, cannot become
///     isolated), and the bound is on the conditional probability given the
///     environment:
///       exp(beta * (-sum L - h1*C(d+1,2) + h0*d))
/// with d = number of required-open star edges and sum L their total length.
/// Required-closed star edges and closed environment edges shrink the event
/// without entering the bound.  Throws std::invalid_argument if the star is
/// malformed or d < 2 in the isolated regime.
double star_probability_bound(const PointSet& points, const Star& star, const ModelParams& params,
                              int environment_open_count);

/// Series upper bound on the expected open degree of a vertex with local
/// exponential mass t:  sum_{k>=1} k * exp(-beta*h1*C(k,2) + beta*h0*(k+1))
/// * t^k / k!.  The series is truncated at k_max; throws
/// std::invalid_argument if the first omitted term is not < 1e-12 (i.e.
/// k_max was too small for these parameters).
double degree_bound(double t, const ModelParams& params, int k_max = 64);

} // namespace gibbsgraph
