#include "gibbsgraph/model.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace gibbsgraph {

ModelParams::ModelParams(double beta_, double h0_, double h1_, int dim_)
    : beta(beta_), h0(h0_), h1(h1_), dim(dim_) {
    if (!(beta > 0.0)) throw std::invalid_argument("ModelParams: beta must be > 0");
    if (!(h0 > 0.0)) throw std::invalid_argument("ModelParams: h0 must be > 0");
    if (!(h1 > h0)) throw std::invalid_argument("ModelParams: h1 must be > h0");
    if (dim < 1) throw std::invalid_argument("ModelParams: dim must be >= 1");
}

ModelParams ModelParams::from_temperature(double temperature, double h0, double h1, int dim) {
    if (!(temperature > 0.0))
        throw std::invalid_argument("ModelParams: temperature must be > 0");
    return ModelParams(1.0 / temperature, h0, h1, dim);
}

double penalty(int degree, const ModelParams& params) {
    if (degree < 0) throw std::invalid_argument("penalty: negative degree");
    if (degree == 0) return params.h0;
    // C(1,2) = 0: a single edge frees both endpoints of any penalty
    return params.h1 * (static_cast<double>(degree) * (degree - 1) / 2.0);
}

Configuration::Configuration(int n_vertices) : n_(n_vertices), degrees_(std::max(n_vertices, 0)) {
    if (n_ < 0) throw std::invalid_argument("Configuration: negative vertex count");
}

std::uint64_t Configuration::key(const EdgeId& e) const {
    return (static_cast<std::uint64_t>(e.i) << 32) | static_cast<std::uint32_t>(e.j);
}

void Configuration::check(const EdgeId& e) const {
    if (e.j >= n_) throw std::invalid_argument("Configuration: vertex out of range");
}

bool Configuration::is_open(const EdgeId& e) const {
    check(e);
    return open_.contains(key(e));
}

int Configuration::degree(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("Configuration: vertex out of range");
    return degrees_[v];
}

void Configuration::set_open(const EdgeId& e, bool open) {
    check(e);
    if (open) {
        if (open_.insert(key(e)).second) {
            ++degrees_[e.i];
            ++degrees_[e.j];
        }
    } else {
        if (open_.erase(key(e)) > 0) {
            --degrees_[e.i];
            --degrees_[e.j];
        }
    }
}

std::vector<EdgeId> Configuration::open_edges() const {
    std::vector<EdgeId> edges;
    edges.reserve(open_.size());
    for (std::uint64_t k : open_)
        edges.emplace_back(static_cast<int>(k >> 32), static_cast<int>(k & 0xffffffffu));
    std::sort(edges.begin(), edges.end());
    return edges;
}

bool Configuration::degrees_consistent() const {
    std::vector<int> recomputed(n_, 0);
    for (std::uint64_t k : open_) {
        ++recomputed[static_cast<int>(k >> 32)];
        ++recomputed[static_cast<int>(k & 0xffffffffu)];
    }
    return recomputed == degrees_;
}

bool operator==(const Configuration& a, const Configuration& b) {
    return a.n_ == b.n_ && a.open_ == b.open_;
}

double energy(const PointSet& points, const Configuration& config, const ModelParams& params) {
    if (points.size() != config.n_vertices())
        throw std::invalid_argument("energy: point set and configuration sizes differ");
    double e = 0.0;
    for (const EdgeId& edge : config.open_edges()) e += points.edge_length(edge);
    for (int v = 0; v < config.n_vertices(); ++v) e += penalty(config.degree(v), params);
    return e;
}

double energy_delta(const PointSet& points, const Configuration& config, const EdgeId& e,
                    const ModelParams& params) {
    if (points.size() != config.n_vertices())
        throw std::invalid_argument("energy_delta: point set and configuration sizes differ");
    const bool open = config.is_open(e);
    // endpoint degrees not counting e itself
    const int d1 = config.degree(e.i) - (open ? 1 : 0);
    const int d2 = config.degree(e.j) - (open ? 1 : 0);
    // opening e: pay the length, raise each endpoint's crowding penalty from
    // C(d,2) to C(d+1,2) (difference h1*d), and waive the isolation fee of
    // previously isolated endpoints
    const double open_cost = points.edge_length(e) + params.h1 * (d1 + d2) -
                             params.h0 * (d1 == 0 ? 1.0 : 0.0) -
                             params.h0 * (d2 == 0 ? 1.0 : 0.0);
    return open ? -open_cost : open_cost;
}

} // namespace gibbsgraph
