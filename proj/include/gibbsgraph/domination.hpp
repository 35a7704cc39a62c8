#pragma once

#include <cstdint>
#include <optional>

#include "gibbsgraph/geometry.hpp"
#include "gibbsgraph/model.hpp"

namespace gibbsgraph {

/// Connection function of the dominating random-connection model:
///   g(x) = exp(-beta x) / (exp(-beta x) + exp(-2 beta h0))
///        = 1 / (1 + exp(beta (x - 2 h0))),
/// evaluated in the second (overflow-safe) form.  Monotone decreasing in x,
/// g(2 h0) = 1/2.
double connection_g(double length, const ModelParams& params);

/// nu-probability that pair e is open: g(L(e)).  nu makes pairs independent,
/// which is what the single-edge conditional of the graph measure is bounded
/// by (see conditional_open_probability); hence nu stochastically dominates
/// the graph measure edgewise.
double nu_open_probability(const PointSet& points, const EdgeId& e, const ModelParams& params);

/// One independent draw from nu on all pairs (pairs longer than `cutoff`
/// forced closed if a cutoff is given).  Pairs are visited in canonical
/// order, one uniform each, so output is reproducible per seed.
Configuration sample_nu(const PointSet& points, const ModelParams& params, std::uint64_t seed,
                        std::optional<double> cutoff = std::nullopt);

/// Tail integral int_{2 h0}^inf g(x) dx = T * ln 2, independent of h0.
double j_tail_integral(double temperature);

/// Full integral int_0^inf g(x) dx = T * ln(1 + e^{2 h0 / T}), evaluated as
/// 2 h0 + T * log1p(e^{-2 h0 / T}) to avoid overflow at small T.
double total_g_integral(double temperature, double h0);

/// The explicit dilute parameter region: lambda * (2 h0 + J(T)) <= 1 with
/// J(T) = j_tail_integral, i.e. lambda <= 1 / (2 h0 + T ln 2).  Non-strict.
bool in_region_f(double lambda, double temperature, double h0);

/// Subcriticality condition of the dominating random-connection model:
/// lambda * int_0^inf g < 1, strict.
bool subcritical_rcm(double lambda, double temperature, double h0);

} // namespace gibbsgraph
