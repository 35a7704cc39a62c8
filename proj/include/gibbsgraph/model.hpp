#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "gibbsgraph/geometry.hpp"

namespace gibbsgraph {

/// Interaction parameters of the graph Hamiltonian.
///
/// Isolated vertices pay h0, degree-1 vertices pay nothing, and degree-d
/// vertices with d >= 2 pay h1 * C(d,2); each open edge additionally pays its
/// Euclidean length.  beta is the inverse temperature.  The interesting
/// regime (and a validated invariant) is 0 < h0 < h1: isolation is penalized
/// more gently than crowding, which is what makes monomer-dimer ground states
/// and the stochastic edge-length bounds work.
struct ModelParams {
    double beta;
    double h0;
    double h1;
    int dim;

    /// Throws std::invalid_argument unless beta > 0, 0 < h0 < h1, dim >= 1.
    ModelParams(double beta, double h0, double h1, int dim = 2);

    static ModelParams from_temperature(double temperature, double h0, double h1, int dim = 2);

    double temperature() const { return 1.0 / beta; }
};

/// Vertex penalty h0*[d==0] + h1*C(d,2).  d must be >= 0.
double penalty(int degree, const ModelParams& params);

/// A graph on the vertices of a PointSet, stored as the set of open edges
/// plus per-vertex degree bookkeeping.  Only open edges are stored (the full
/// pair set is walked by index arithmetic when needed), so memory scales with
/// the graph, not with C(n,2).
class Configuration {
  public:
    explicit Configuration(int n_vertices);

    int n_vertices() const { return n_; }
    int open_count() const { return static_cast<int>(open_.size()); }

    bool is_open(const EdgeId& e) const;
    int degree(int v) const;

    /// Sets the state of one edge; degrees are maintained incrementally.
    void set_open(const EdgeId& e, bool open);
    void flip(const EdgeId& e) { set_open(e, !is_open(e)); }

    /// Open edges in canonical lexicographic order.
    std::vector<EdgeId> open_edges() const;

    /// Recomputes all degrees from the edge set and compares with the
    /// incremental bookkeeping.  O(n + |open|); meant for tests/debugging.
    bool degrees_consistent() const;

    friend bool operator==(const Configuration& a, const Configuration& b);

  private:
    std::uint64_t key(const EdgeId& e) const;
    void check(const EdgeId& e) const;

    int n_;
    std::unordered_set<std::uint64_t> open_;
    std::vector<int> degrees_;
};

/// Total energy: sum of open edge lengths plus sum of vertex penalties.
/// The empty configuration on n vertices costs n*h0.
double energy(const PointSet& points, const Configuration& config, const ModelParams& params);

/// Energy change caused by flipping edge e in `config`.  Computed locally
/// from the two endpoint degrees, O(1):
///   opening:  +L(e) + h1*(d1+d2) - h0*[d1==0] - h0*[d2==0]
/// with d1, d2 the endpoint degrees not counting e itself; closing is the
/// negation.  Agrees with energy(after) - energy(before) to rounding.
double energy_delta(const PointSet& points, const Configuration& config, const EdgeId& e,
                    const ModelParams& params);

} // namespace gibbsgraph
