#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gibbsgraph/geometry.hpp"
#include "gibbsgraph/model.hpp"

namespace gibbsgraph {

enum class Uniqueness { unique, tied, unknown };

struct GroundStateResult {
    Configuration config{0};
    double energy = 0.0;
    /// unique / tied when enumeration settled it, unknown otherwise.
    Uniqueness uniqueness = Uniqueness::unknown;
    /// Number of global minimizers found by enumeration (0 = not enumerated).
    long tie_count = 0;
    /// At most kMaxTiesStored of the tied minimizers, lexicographically
    /// ordered by open-edge list.
    std::vector<Configuration> ties;
    /// True when some pair sits exactly at distance 2*h0 - the knife-edge
    /// where an edge and two monomers cost the same.
    bool degenerate_boundary = false;

    static constexpr int kMaxTiesStored = 64;
};

/// Exhaustive minimization over all 2^C(n,2) configurations (Gray-code walk,
/// so one edge flip per step).  Requires C(n,2) <= 22; throws
/// std::invalid_argument beyond that.  Ties within 1e-9 of the minimum are
/// collected; the reported config is the lexicographically smallest
/// minimizer that satisfies the monomer-dimer structure (all minimizers do,
/// away from the 2*h0 boundary).
GroundStateResult ground_state_bruteforce(const PointSet& points, const ModelParams& params);

/// Ground state via reduction to maximum-weight matching.
///
/// Minimizers have degree <= 1 with all open edges shorter than 2*h0, so
/// minimizing the energy is the same as picking a matching M among pairs
/// with L < 2*h0 maximizing sum (2*h0 - L(e)): energy = n*h0 - weight(M).
/// The instance splits into independent subproblems along 2h0-clusters.
/// Clusters of <= 22 vertices are solved by an exact bitmask DP; larger ones
/// fall back to a blossom-algorithm library solver.  uniqueness is
/// `unknown` unless determine_uniqueness is set, in which case per-cluster
/// enumeration decides it (throws std::invalid_argument if some cluster has
/// C(k,2) > 22).
GroundStateResult ground_state_matching(const PointSet& points, const ModelParams& params,
                                        bool determine_uniqueness = false);

/// Checks the structure theorem for a claimed minimizer: every vertex has
/// degree <= 1 and every open edge is strictly shorter than 2*h0.  Returns
/// human-readable violation descriptions (empty = all good).
std::vector<std::string> verify_ground_state_properties(const PointSet& points,
                                                        const Configuration& config,
                                                        const ModelParams& params);

/// Partition of all vertices into 2h0-clusters: connected components of the
/// "could interact" relation, distance <= 2*h0 (non-strict - the exact
/// complement of the admissible-edge relation L < 2*h0, so no admissible
/// edge crosses clusters).  Components are sorted internally and ordered by
/// smallest member; singletons included.
std::vector<std::vector<int>> cluster_decompose_2h0(const PointSet& points,
                                                    const ModelParams& params);

/// Tri-state uniqueness via independent per-cluster enumeration.  Throws
/// std::invalid_argument when a cluster exceeds the enumeration cap
/// (C(k,2) > 22) - callers treat that as `unknown`.
Uniqueness is_unique_ground_state(const PointSet& points, const ModelParams& params);

} // namespace gibbsgraph
