#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gibbsgraph {

/// Axis-aligned box [low_k, high_k] per coordinate, used as the sampling
/// window for point processes and experiments.
struct BoxRegion {
    std::vector<double> low;
    std::vector<double> high;

    /// Throws std::invalid_argument unless dimensions match, are >= 1, and
    /// low[k] < high[k] for every axis.
    BoxRegion(std::vector<double> low_corner, std::vector<double> high_corner);

    /// The cube [0, side]^dim.
    static BoxRegion cube(int dim, double side);

    int dim() const { return static_cast<int>(low.size()); }
    double side(int axis) const { return high[axis] - low[axis]; }
    double volume() const;
    bool contains(std::span<const double> x) const;
};

/// Unordered vertex pair in canonical order i < j.
struct EdgeId {
    int i;
    int j;

    /// Normalizes the order; throws std::invalid_argument on a == b or
    /// negative indices (self-loops are not edges of these graphs).
    EdgeId(int a, int b);

    friend bool operator==(const EdgeId&, const EdgeId&) = default;
    friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

/// Number of vertex pairs C(n, 2).
constexpr std::size_t edge_count(int n) {
    return n < 2 ? 0 : static_cast<std::size_t>(n) * (n - 1) / 2;
}

/// Position of e in the lexicographic enumeration (0,1), (0,2), ..., (n-2,n-1).
/// The full pair set is only ever walked by this arithmetic, never stored.
std::size_t edge_to_index(int n, const EdgeId& e);

/// Inverse of edge_to_index.
EdgeId index_to_edge(int n, std::size_t k);

/// A finite labeled vertex set: n points in R^dim with pairwise distinct
/// coordinates (graphs here live on distinct sites; a zero-length edge would
/// make the energy ill-posed).  Coordinates are stored flat, row-major.
class PointSet {
  public:
    /// Throws std::invalid_argument if dim < 1, the coordinate count is not a
    /// multiple of dim, or two points coincide exactly.
    PointSet(int dim, std::vector<double> coords);

    static PointSet from_rows(int dim, const std::vector<std::vector<double>>& rows);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(coords_.size() / dim_); }

    std::span<const double> point(int v) const;

    /// Euclidean distance between two vertices.
    double distance(int a, int b) const;
    double edge_length(const EdgeId& e) const { return distance(e.i, e.j); }

    const std::vector<double>& coords() const { return coords_; }

  private:
    int dim_;
    std::vector<double> coords_;
};

} // namespace gibbsgraph
