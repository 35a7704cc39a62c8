#include "gibbsgraph/ground_state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/maximum_weighted_matching.hpp>

#include "gibbsgraph/io.hpp"

namespace gibbsgraph {

namespace {

constexpr double kTieTolerance = 1e-9;
constexpr std::size_t kEnumerationCap = 22; // max C(n,2) for exhaustive energy walks
constexpr int kDpVertexCap = 22;            // max cluster size for the subset-DP matcher

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<int> mask_bits(std::uint32_t mask) {
    std::vector<int> bits;
    for (int k = 0; mask; ++k, mask >>= 1)
        if (mask & 1u) bits.push_back(k);
    return bits;
}

/// Gray-code walk over all 2^m edge subsets, calling visit(mask, energy).
template <typename Visit>
void walk_energies(const PointSet& points, const ModelParams& params,
                   const std::vector<EdgeId>& edges, Visit&& visit) {
    const std::size_t m = edges.size();
    std::vector<double> lengths(m);
    for (std::size_t k = 0; k < m; ++k) lengths[k] = points.edge_length(edges[k]);
    std::vector<int> deg(points.size(), 0);
    std::vector<bool> open(m, false);
    double e = points.size() * params.h0;
    visit(std::uint32_t{0}, e);
    const std::size_t total = std::size_t(1) << m;
    for (std::size_t i = 1; i < total; ++i) {
        const int b = std::countr_zero(i);
        const EdgeId& edge = edges[b];
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
        visit(static_cast<std::uint32_t>(i ^ (i >> 1)), e);
    }
}

bool mask_has_structure(std::uint32_t mask, const PointSet& points,
                        const std::vector<EdgeId>& edges, double two_h0) {
    std::vector<int> deg(points.size(), 0);
    for (int k : mask_bits(mask)) {
        const EdgeId& e = edges[k];
        if (!(points.edge_length(e) < two_h0)) return false;
        if (++deg[e.i] > 1 || ++deg[e.j] > 1) return false;
    }
    return true;
}

bool detect_boundary_pair(const PointSet& points, double two_h0) {
    // exact equality on purpose: this flags the knife-edge layout where an
    // edge costs exactly the same as two monomers
    for (int i = 0; i < points.size(); ++i)
        for (int j = i + 1; j < points.size(); ++j)
            if (points.distance(i, j) == two_h0) return true;
    return false;
}

long saturating_mul(long a, long b) {
    constexpr long cap = std::numeric_limits<long>::max() / 2;
    if (a > 0 && b > cap / a) return cap;
    return a * b;
}

/// Max-weight matching on an admissible-edge list by subset DP over the
/// cluster's vertices.  Exact for up to kEnumerationCap vertices.
struct DpEdge {
    int a; // local vertex indices
    int b;
    double w;
};

std::vector<int> matching_dp(int k, const std::vector<DpEdge>& edges, double& weight_out) {
    // adjacency with edge ids, local indices 0..k-1
    std::vector<std::vector<std::pair<int, int>>> adj(k); // (other, edge id)
    for (std::size_t id = 0; id < edges.size(); ++id) {
        adj[edges[id].a].emplace_back(edges[id].b, static_cast<int>(id));
        adj[edges[id].b].emplace_back(edges[id].a, static_cast<int>(id));
    }
    const std::size_t total = std::size_t(1) << k;
    std::vector<double> f(total, 0.0);
    std::vector<int> choice(total, -1); // edge id matched at the lowest vertex, -1 = unmatched
    for (std::size_t s = 1; s < total; ++s) {
        const int v = std::countr_zero(s);
        const std::size_t rest = s & (s - 1); // s without its lowest vertex
        double best = f[rest];
        int best_choice = -1;
        for (const auto& [u, id] : adj[v]) {
            if (!(s & (std::size_t(1) << u))) continue;
            const double cand = edges[id].w + f[rest & ~(std::size_t(1) << u)];
            if (cand > best) {
                best = cand;
                best_choice = id;
            }
        }
        f[s] = best;
        choice[s] = best_choice;
    }
    weight_out = f[total - 1];
    std::vector<int> chosen;
    std::size_t s = total - 1;
    while (s) {
        const int v = std::countr_zero(s);
        const int id = choice[s];
        if (id < 0) {
            s &= ~(std::size_t(1) << v);
        } else {
            chosen.push_back(id);
            s &= ~(std::size_t(1) << edges[id].a);
            s &= ~(std::size_t(1) << edges[id].b);
        }
    }
    return chosen;
}

std::vector<int> matching_blossom(int k, const std::vector<DpEdge>& edges) {
    using Graph =
        boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                              boost::property<boost::edge_weight_t, long long>>;
    // scale to integers: blossom dual updates stay exact and the rounding
    // error (< k * 2^-32) is far below the tie tolerance
    Graph g(k);
    for (const DpEdge& e : edges)
        boost::add_edge(e.a, e.b, static_cast<long long>(std::llround(e.w * 4294967296.0)), g);
    std::vector<boost::graph_traits<Graph>::vertex_descriptor> mate(k);
    boost::maximum_weighted_matching(g, &mate[0]);
    std::vector<int> chosen;
    for (std::size_t id = 0; id < edges.size(); ++id)
        if (mate[edges[id].a] == static_cast<std::size_t>(edges[id].b))
            chosen.push_back(static_cast<int>(id));
    return chosen;
}

} // namespace

std::vector<std::vector<int>> cluster_decompose_2h0(const PointSet& points,
                                                    const ModelParams& params) {
    const int n = points.size();
    const double two_h0 = 2.0 * params.h0;
    DisjointSets dsu(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            // <= : exact complement of the admissible-edge relation L < 2h0
            if (points.distance(i, j) <= two_h0) dsu.unite(i, j);
    std::vector<std::vector<int>> by_root(n);
    for (int v = 0; v < n; ++v) by_root[dsu.find(v)].push_back(v);
    std::vector<std::vector<int>> clusters;
    for (auto& c : by_root)
        if (!c.empty()) clusters.push_back(std::move(c)); // members already ascending
    std::sort(clusters.begin(), clusters.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return clusters;
}

GroundStateResult ground_state_bruteforce(const PointSet& points, const ModelParams& params) {
    const int n = points.size();
    const std::size_t m = edge_count(n);
    if (m > kEnumerationCap)
        throw std::invalid_argument("ground_state_bruteforce: C(n,2) = " + std::to_string(m) +
                                    " exceeds the enumeration cap of " +
                                    std::to_string(kEnumerationCap));
    std::vector<EdgeId> edges;
    edges.reserve(m);
    for (std::size_t k = 0; k < m; ++k) edges.push_back(index_to_edge(n, k));

    double min_energy = std::numeric_limits<double>::infinity();
    walk_energies(points, params, edges,
                  [&](std::uint32_t, double e) { min_energy = std::min(min_energy, e); });

    const double two_h0 = 2.0 * params.h0;
    long tie_count = 0;
    std::vector<std::uint32_t> tie_masks;
    std::optional<std::uint32_t> best_structural;
    std::vector<int> best_structural_bits;
    std::uint32_t best_any = 0;
    std::vector<int> best_any_bits;
    bool have_any = false;
    walk_energies(points, params, edges, [&](std::uint32_t mask, double e) {
        if (e > min_energy + kTieTolerance) return;
        ++tie_count;
        if (tie_masks.size() < GroundStateResult::kMaxTiesStored) tie_masks.push_back(mask);
        std::vector<int> bits = mask_bits(mask);
        if (!have_any || std::lexicographical_compare(bits.begin(), bits.end(),
                                                      best_any_bits.begin(), best_any_bits.end())) {
            have_any = true;
            best_any = mask;
            best_any_bits = bits;
        }
        if (mask_has_structure(mask, points, edges, two_h0)) {
            if (!best_structural ||
                std::lexicographical_compare(bits.begin(), bits.end(), best_structural_bits.begin(),
                                             best_structural_bits.end())) {
                best_structural = mask;
                best_structural_bits = std::move(bits);
            }
        }
    });

    // away from the 2h0 knife-edge every minimizer is monomer-dimer, so the
    // structural pick exists; on the knife-edge fall back to the overall
    // lex-smallest tie
    const std::uint32_t pick = best_structural ? *best_structural : best_any;

    GroundStateResult result;
    result.config = Configuration(n);
    result.energy = min_energy;
    for (int k : mask_bits(pick)) result.config.set_open(edges[k], true);
    result.tie_count = tie_count;
    result.uniqueness = tie_count == 1 ? Uniqueness::unique : Uniqueness::tied;
    result.degenerate_boundary = detect_boundary_pair(points, two_h0);
    std::sort(tie_masks.begin(), tie_masks.end(), [&](std::uint32_t a, std::uint32_t b) {
        const auto ba = mask_bits(a), bb = mask_bits(b);
        return std::lexicographical_compare(ba.begin(), ba.end(), bb.begin(), bb.end());
    });
    for (std::uint32_t mask : tie_masks) {
        Configuration c(n);
        for (int k : mask_bits(mask)) c.set_open(edges[k], true);
        result.ties.push_back(std::move(c));
    }
    return result;
}

GroundStateResult ground_state_matching(const PointSet& points, const ModelParams& params,
                                        bool determine_uniqueness) {
    const int n = points.size();
    const double two_h0 = 2.0 * params.h0;
    const auto clusters = cluster_decompose_2h0(points, params);

    GroundStateResult result;
    result.config = Configuration(n);
    for (const auto& cluster : clusters) {
        const int k = static_cast<int>(cluster.size());
        if (k == 1) continue; // monomer
        std::vector<DpEdge> edges;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b) {
                const double len = points.distance(cluster[a], cluster[b]);
                if (len < two_h0) edges.push_back({a, b, two_h0 - len});
            }
        if (edges.empty()) continue;
        std::vector<int> chosen;
        if (k <= kDpVertexCap) {
            double weight = 0.0;
            chosen = matching_dp(k, edges, weight);
        } else {
            chosen = matching_blossom(k, edges);
        }
        for (int id : chosen)
            result.config.set_open(EdgeId(cluster[edges[id].a], cluster[edges[id].b]), true);
    }
    result.energy = energy(points, result.config, params);
    result.degenerate_boundary = detect_boundary_pair(points, two_h0);

    if (determine_uniqueness) {
        result.uniqueness = Uniqueness::unique;
        result.tie_count = 1;
        for (const auto& cluster : clusters) {
            if (edge_count(static_cast<int>(cluster.size())) > kEnumerationCap)
                throw std::invalid_argument(
                    "ground_state_matching: cluster of " + std::to_string(cluster.size()) +
                    " vertices is too large for uniqueness enumeration");
        }
        for (const auto& cluster : clusters) {
            std::vector<double> sub_coords;
            for (int v : cluster) {
                const auto p = points.point(v);
                sub_coords.insert(sub_coords.end(), p.begin(), p.end());
            }
            const PointSet sub(points.dim(), std::move(sub_coords));
            const GroundStateResult sub_result = ground_state_bruteforce(sub, params);
            result.tie_count = saturating_mul(result.tie_count, sub_result.tie_count);
            if (sub_result.tie_count != 1) result.uniqueness = Uniqueness::tied;
        }
    }
    return result;
}

std::vector<std::string> verify_ground_state_properties(const PointSet& points,
                                                        const Configuration& config,
                                                        const ModelParams& params) {
    std::vector<std::string> violations;
    const double two_h0 = 2.0 * params.h0;
    for (int v = 0; v < config.n_vertices(); ++v)
        if (config.degree(v) > 1)
            violations.push_back("vertex " + std::to_string(v) + " has degree " +
                                 std::to_string(config.degree(v)) + " (monomer-dimer needs <= 1)");
    for (const EdgeId& e : config.open_edges()) {
        const double len = points.edge_length(e);
        if (!(len < two_h0))
            violations.push_back("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                 ") has length " + format_double(len) +
                                 " >= 2*h0 = " + format_double(two_h0));
    }
    return violations;
}

Uniqueness is_unique_ground_state(const PointSet& points, const ModelParams& params) {
    const auto clusters = cluster_decompose_2h0(points, params);
    for (const auto& cluster : clusters)
        if (edge_count(static_cast<int>(cluster.size())) > kEnumerationCap)
            throw std::invalid_argument("is_unique_ground_state: cluster of " +
                                        std::to_string(cluster.size()) +
                                        " vertices exceeds the enumeration cap");
    for (const auto& cluster : clusters) {
        if (cluster.size() == 1) continue;
        std::vector<double> sub_coords;
        for (int v : cluster) {
            const auto p = points.point(v);
            sub_coords.insert(sub_coords.end(), p.begin(), p.end());
        }
        const PointSet sub(points.dim(), std::move(sub_coords));
        if (ground_state_bruteforce(sub, params).tie_count != 1) return Uniqueness::tied;
    }
    return Uniqueness::unique;
}

} // namespace gibbsgraph
