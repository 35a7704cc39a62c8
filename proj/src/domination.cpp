#include "gibbsgraph/domination.hpp"

#include <cmath>
#include <stdexcept>

#include "gibbsgraph/rng.hpp"

namespace gibbsgraph {

double connection_g(double length, const ModelParams& params) {
    if (!(length >= 0.0)) throw std::invalid_argument("connection_g: length must be >= 0");
    // 1 / (1 + exp(beta (x - 2 h0))): overflow-safe, exp(+inf) -> g = 0
    return 1.0 / (1.0 + std::exp(params.beta * (length - 2.0 * params.h0)));
}

double nu_open_probability(const PointSet& points, const EdgeId& e, const ModelParams& params) {
    return connection_g(points.edge_length(e), params);
}

Configuration sample_nu(const PointSet& points, const ModelParams& params, std::uint64_t seed,
                        std::optional<double> cutoff) {
    SplitMix64 rng(seed);
    const int n = points.size();
    Configuration config(n);
    // canonical pair order with one uniform per considered pair keeps the
    // draw reproducible and independent of the open pattern
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double len = points.distance(i, j);
            if (cutoff && len > *cutoff) continue;
            if (rng.uniform() < connection_g(len, params)) config.set_open(EdgeId(i, j), true);
        }
    }
    return config;
}

double j_tail_integral(double temperature) {
    if (!(temperature > 0.0)) throw std::invalid_argument("j_tail_integral: temperature must be > 0");
    // substituting u = exp(-x/T) turns the tail integral into T * int_0^1 du/(1+u)
    return temperature * std::log(2.0);
}

double total_g_integral(double temperature, double h0) {
    if (!(temperature > 0.0))
        throw std::invalid_argument("total_g_integral: temperature must be > 0");
    if (!(h0 > 0.0)) throw std::invalid_argument("total_g_integral: h0 must be > 0");
    // T * ln(1 + e^{2 h0 / T}), rewritten so the exponent is never positive
    return 2.0 * h0 + temperature * std::log1p(std::exp(-2.0 * h0 / temperature));
}

bool in_region_f(double lambda, double temperature, double h0) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("in_region_f: lambda must be >= 0");
    return lambda * (2.0 * h0 + j_tail_integral(temperature)) <= 1.0;
}

bool subcritical_rcm(double lambda, double temperature, double h0) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("subcritical_rcm: lambda must be >= 0");
    return lambda * total_g_integral(temperature, h0) < 1.0;
}

} // namespace gibbsgraph
