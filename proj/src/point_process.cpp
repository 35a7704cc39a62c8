#include "gibbsgraph/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gibbsgraph/rng.hpp"

namespace gibbsgraph {

PointSet sample_poisson(const BoxRegion& box, double intensity, std::uint64_t seed) {
    if (!(intensity >= 0.0)) throw std::invalid_argument("sample_poisson: intensity must be >= 0");
    SplitMix64 rng(seed);
    const std::uint64_t n = poisson_count(intensity * box.volume(), rng);
    std::vector<double> coords;
    coords.reserve(n * box.dim());
    for (std::uint64_t p = 0; p < n; ++p)
        for (int k = 0; k < box.dim(); ++k) coords.push_back(rng.uniform(box.low[k], box.high[k]));
    return PointSet(box.dim(), std::move(coords));
}

PointSet sample_hardcore(const BoxRegion& box, double intensity, double eps0, std::uint64_t seed) {
    if (!(eps0 > 0.0)) throw std::invalid_argument("sample_hardcore: eps0 must be > 0");
    // Matern type II: parents with i.i.d. marks; a parent survives iff it has
    // the smallest mark within its eps0-ball.  Draw order: all positions,
    // then all marks, so the parent pattern matches sample_poisson's.
    SplitMix64 rng(seed);
    const std::uint64_t n = poisson_count(intensity * box.volume(), rng);
    const int dim = box.dim();
    std::vector<double> parents;
    parents.reserve(n * dim);
    for (std::uint64_t p = 0; p < n; ++p)
        for (int k = 0; k < dim; ++k) parents.push_back(rng.uniform(box.low[k], box.high[k]));
    std::vector<double> marks(n);
    for (auto& m : marks) m = rng.uniform();

    const auto dist2 = [&](std::uint64_t a, std::uint64_t b) {
        double s = 0.0;
        for (int k = 0; k < dim; ++k) {
            const double d = parents[a * dim + k] - parents[b * dim + k];
            s += d * d;
        }
        return s;
    };

    std::vector<double> kept;
    for (std::uint64_t a = 0; a < n; ++a) {
        bool survives = true;
        for (std::uint64_t b = 0; b < n && survives; ++b) {
            if (b == a) continue;
            // strict distance, strict mark: ties in marks have probability 0
            // but are broken by index for determinism
            if (dist2(a, b) < eps0 * eps0 &&
                (marks[b] < marks[a] || (marks[b] == marks[a] && b < a)))
                survives = false;
        }
        if (survives)
            kept.insert(kept.end(), parents.begin() + a * dim, parents.begin() + (a + 1) * dim);
    }
    return PointSet(dim, std::move(kept));
}

double t_gamma(const PointSet& points, int v, const ModelParams& params) {
    if (v < 0 || v >= points.size()) throw std::invalid_argument("t_gamma: vertex out of range");
    double s = 0.0;
    for (int w = 0; w < points.size(); ++w) {
        if (w == v) continue;
        s += std::exp(-params.beta * points.distance(v, w));
    }
    return s;
}

double t_sup(const PointSet& points, const ModelParams& params) {
    double best = 0.0;
    for (int v = 0; v < points.size(); ++v) best = std::max(best, t_gamma(points, v, params));
    return best;
}

} // namespace gibbsgraph
