#include "gibbsgraph/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gibbsgraph {

BoxRegion::BoxRegion(std::vector<double> low_corner, std::vector<double> high_corner)
    : low(std::move(low_corner)), high(std::move(high_corner)) {
    if (low.empty() || low.size() != high.size())
        throw std::invalid_argument("BoxRegion: corner dimensions must match and be >= 1");
    for (std::size_t k = 0; k < low.size(); ++k) {
        if (!(low[k] < high[k]))
            throw std::invalid_argument("BoxRegion: low[" + std::to_string(k) +
                                        "] must be < high[" + std::to_string(k) + "]");
    }
}

BoxRegion BoxRegion::cube(int dim, double side) {
    if (dim < 1) throw std::invalid_argument("BoxRegion::cube: dim must be >= 1");
    if (!(side > 0.0)) throw std::invalid_argument("BoxRegion::cube: side must be > 0");
    return BoxRegion(std::vector<double>(dim, 0.0), std::vector<double>(dim, side));
}

double BoxRegion::volume() const {
    double v = 1.0;
    for (int k = 0; k < dim(); ++k) v *= side(k);
    return v;
}

bool BoxRegion::contains(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim()) return false;
    for (int k = 0; k < dim(); ++k)
        if (x[k] < low[k] || x[k] > high[k]) return false;
    return true;
}

EdgeId::EdgeId(int a, int b) : i(std::min(a, b)), j(std::max(a, b)) {
    if (a < 0 || b < 0) throw std::invalid_argument("EdgeId: negative vertex index");
    if (a == b) throw std::invalid_argument("EdgeId: self-loop (" + std::to_string(a) + ")");
}

std::size_t edge_to_index(int n, const EdgeId& e) {
    if (e.j >= n) throw std::invalid_argument("edge_to_index: vertex out of range");
    // edges with first vertex < i occupy a prefix of (n-1) + ... + (n-i) slots
    const std::size_t i = e.i, j = e.j, nn = n;
    return i * nn - i * (i + 1) / 2 + (j - i - 1);
}

EdgeId index_to_edge(int n, std::size_t k) {
    if (k >= edge_count(n)) throw std::invalid_argument("index_to_edge: index out of range");
    std::size_t row_start = 0;
    for (int i = 0; i < n - 1; ++i) {
        const std::size_t row_len = static_cast<std::size_t>(n - 1 - i);
        if (k < row_start + row_len) return EdgeId(i, static_cast<int>(i + 1 + (k - row_start)));
        row_start += row_len;
    }
    throw std::logic_error("index_to_edge: unreachable");
}

PointSet::PointSet(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ < 1) throw std::invalid_argument("PointSet: dim must be >= 1");
    if (coords_.size() % dim_ != 0)
        throw std::invalid_argument("PointSet: coordinate count not a multiple of dim");
    // distinctness: sort points lexicographically, equal points end up adjacent
    const int n = size();
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::lexicographical_compare(coords_.begin() + std::size_t(a) * dim_,
                                            coords_.begin() + std::size_t(a + 1) * dim_,
                                            coords_.begin() + std::size_t(b) * dim_,
                                            coords_.begin() + std::size_t(b + 1) * dim_);
    });
    for (int t = 1; t < n; ++t) {
        const int a = idx[t - 1], b = idx[t];
        if (std::equal(coords_.begin() + std::size_t(a) * dim_,
                       coords_.begin() + std::size_t(a + 1) * dim_,
                       coords_.begin() + std::size_t(b) * dim_))
            throw std::invalid_argument("PointSet: points " + std::to_string(a) + " and " +
                                        std::to_string(b) + " coincide");
    }
}

PointSet PointSet::from_rows(int dim, const std::vector<std::vector<double>>& rows) {
    std::vector<double> flat;
    flat.reserve(rows.size() * dim);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(rows[r].size()) != dim)
            throw std::invalid_argument("PointSet::from_rows: row " + std::to_string(r) +
                                        " has wrong dimension");
        flat.insert(flat.end(), rows[r].begin(), rows[r].end());
    }
    return PointSet(dim, std::move(flat));
}

std::span<const double> PointSet::point(int v) const {
    if (v < 0 || v >= size()) throw std::invalid_argument("PointSet::point: index out of range");
    return {coords_.data() + std::size_t(v) * dim_, static_cast<std::size_t>(dim_)};
}

double PointSet::distance(int a, int b) const {
    const auto pa = point(a), pb = point(b);
    double s = 0.0;
    for (int k = 0; k < dim_; ++k) {
        const double d = pa[k] - pb[k];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace gibbsgraph
