#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gibbsgraph/ground_state.hpp"
#include "test_support.hpp"

using namespace gibbsgraph;

namespace {

// Reference minimum over every configuration, straight off the oracle energy.
double reference_minimum(const PointSet& points, const ModelParams& params) {
    const std::size_t m = edge_count(points.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << m); ++mask) {
        const double e = testsupport::oracle_energy(
            points, testsupport::mask_edges(points.size(), mask), params);
        best = std::min(best, e);
    }
    return best;
}

} // namespace

TEST_SUITE_BEGIN("ground_state");

TEST_CASE("a lone pair becomes a dimer iff it is shorter than 2*h0") {
    ModelParams params(1.0, 0.5, 1.0, 1);

    PointSet close(1, {0.0, 0.8}); // L = 0.8 < 1
    GroundStateResult dimer = ground_state_matching(close, params, true);
    CHECK(dimer.energy == doctest::Approx(0.8));
    CHECK(dimer.config.open_count() == 1);
    CHECK(dimer.uniqueness == Uniqueness::unique);
    CHECK(!dimer.degenerate_boundary);

    PointSet far(1, {0.0, 1.3}); // L = 1.3 > 1: two monomers
    GroundStateResult monomers = ground_state_matching(far, params, true);
    CHECK(monomers.energy == doctest::Approx(1.0));
    CHECK(monomers.config.open_count() == 0);
    CHECK(monomers.uniqueness == Uniqueness::unique);

    PointSet edge_case(1, {0.0, 1.0}); // L = 2*h0 exactly
    GroundStateResult knife = ground_state_matching(edge_case, params, true);
    CHECK(knife.energy == doctest::Approx(1.0));
    CHECK(knife.degenerate_boundary);
    CHECK(knife.config.open_count() == 0); // the convention: strict <, so no edge
}

TEST_CASE("brute force and matching agree with the reference minimum") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(5)); // 2..6
        PointSet points = testsupport::random_points(n, 2, 1.6, rng);
        ModelParams params(1.0, 0.3 + rng.uniform(0.0, 0.4), 1.5);

        const double reference = reference_minimum(points, params);
        GroundStateResult brute = ground_state_bruteforce(points, params);
        GroundStateResult matched = ground_state_matching(points, params);

        CHECK(brute.energy == doctest::Approx(reference).epsilon(1e-9));
        CHECK(matched.energy == doctest::Approx(reference).epsilon(1e-9));
        CHECK(energy(points, brute.config, params) == doctest::Approx(brute.energy));
        CHECK(energy(points, matched.config, params) == doctest::Approx(matched.energy));

        CHECK(verify_ground_state_properties(points, brute.config, params).empty());
        CHECK(verify_ground_state_properties(points, matched.config, params).empty());
    }
}

TEST_CASE("minimizers are monomer-dimer configurations with short edges") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        PointSet points = testsupport::random_points(6, 2, 1.2, rng);
        ModelParams params(2.0, 0.45, 1.3);
        GroundStateResult result = ground_state_matching(points, params);
        for (int v = 0; v < points.size(); ++v) CHECK(result.config.degree(v) <= 1);
        for (const EdgeId& e : result.config.open_edges())
            CHECK(points.edge_length(e) < 2.0 * params.h0);
    }
}

TEST_CASE("verify_ground_state_properties reports violations") {
    PointSet points(1, {0.0, 0.3, 0.6, 5.0});
    ModelParams params(1.0, 0.5, 1.0, 1);

    Configuration crowded(4);
    crowded.set_open(EdgeId(0, 1), true);
    crowded.set_open(EdgeId(1, 2), true); // degree 2 at vertex 1
    auto degree_violation = verify_ground_state_properties(points, crowded, params);
    CHECK(!degree_violation.empty());

    Configuration stretched(4);
    stretched.set_open(EdgeId(2, 3), true); // length 4.4 > 2*h0
    auto length_violation = verify_ground_state_properties(points, stretched, params);
    CHECK(!length_violation.empty());

    Configuration fine(4);
    fine.set_open(EdgeId(0, 1), true);
    CHECK(verify_ground_state_properties(points, fine, params).empty());
}

TEST_CASE("three equally spaced points tie and the tie is reported") {
    PointSet points(1, {0.0, 0.4, 0.8});
    ModelParams params(1.0, 0.5, 1.0, 1);

    GroundStateResult brute = ground_state_bruteforce(points, params);
    CHECK(brute.energy == doctest::Approx(0.4 + 0.5)); // one dimer + one monomer
    CHECK(brute.uniqueness == Uniqueness::tied);
    CHECK(brute.tie_count == 2);
    REQUIRE(brute.ties.size() == 2);
    CHECK(!(brute.ties[0] == brute.ties[1]));

    GroundStateResult matched = ground_state_matching(points, params, true);
    CHECK(matched.energy == doctest::Approx(brute.energy));
    CHECK(matched.uniqueness == Uniqueness::tied);

    CHECK(is_unique_ground_state(points, params) == Uniqueness::tied);
}

TEST_CASE("generic instances are unique and flagged as such") {
    SplitMix64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        PointSet points = testsupport::random_points(5, 2, 1.5, rng);
        ModelParams params(1.0, 0.4, 1.2);
        GroundStateResult brute = ground_state_bruteforce(points, params);
        GroundStateResult matched = ground_state_matching(points, params, true);
        CHECK(brute.uniqueness == matched.uniqueness);
        if (matched.uniqueness == Uniqueness::unique) {
            CHECK(matched.config == brute.config);
            CHECK(matched.tie_count == 1);
        }
    }
}

TEST_CASE("2h0-clusters split exactly at the admissibility threshold") {
    // pairs {0,1} and {2,3} linked internally, separated by more than 2*h0
    PointSet points(1, {0.0, 0.5, 3.0, 3.5});
    ModelParams params(1.0, 0.5, 1.0, 1);
    auto clusters = cluster_decompose_2h0(points, params);
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[0] == std::vector<int>{0, 1});
    CHECK(clusters[1] == std::vector<int>{2, 3});

    // the linking relation is non-strict: distance exactly 2*h0 joins
    PointSet boundary(1, {0.0, 1.0, 5.0});
    auto linked = cluster_decompose_2h0(boundary, params);
    REQUIRE(linked.size() == 2);
    CHECK(linked[0] == std::vector<int>{0, 1});
    CHECK(linked[1] == std::vector<int>{2});
}

TEST_CASE("matching solves separated clusters independently") {
    // two far-apart triangles; per-cluster optima must combine additively
    std::vector<double> coords;
    for (double shift : {0.0, 50.0}) {
        coords.insert(coords.end(), {shift + 0.0, 0.0});
        coords.insert(coords.end(), {shift + 0.6, 0.0});
        coords.insert(coords.end(), {shift + 0.3, 0.4});
    }
    PointSet points(2, coords);
    ModelParams params(1.0, 0.5, 1.0);

    GroundStateResult whole = ground_state_matching(points, params);
    PointSet half(2, {0.0, 0.0, 0.6, 0.0, 0.3, 0.4});
    GroundStateResult part = ground_state_matching(half, params);
    CHECK(whole.energy == doctest::Approx(2.0 * part.energy).epsilon(1e-12));
}

TEST_CASE("a long chain exercises the blossom fallback") {
    // 25 collinear points, spacing 0.45: a single 2h0-cluster too large for
    // the bitmask DP, solved by the blossom solver; the interval DP above is
    // the independent oracle for collinear instances
    const int n = 25;
    std::vector<double> coords;
    for (int v = 0; v < n; ++v) coords.push_back(0.45 * v);
    PointSet points(1, coords);
    ModelParams params(1.0, 0.5, 1.0, 1);

    REQUIRE(cluster_decompose_2h0(points, params).size() == 1);

    GroundStateResult result = ground_state_matching(points, params);
    const double weight = testsupport::collinear_matching_value(points, params);
    CHECK(result.energy == doctest::Approx(n * params.h0 - weight).epsilon(1e-9));
    CHECK(verify_ground_state_properties(points, result.config, params).empty());

    // uniqueness determination refuses clusters beyond the enumeration cap
    CHECK_THROWS_AS(ground_state_matching(points, params, true), std::invalid_argument);
}

TEST_CASE("brute force refuses oversized instances") {
    SplitMix64 rng(44);
    PointSet points = testsupport::random_points(8, 2, 2.0, rng); // C(8,2) = 28 > 22
    ModelParams params(1.0, 0.5, 1.0);
    CHECK_THROWS_AS(ground_state_bruteforce(points, params), std::invalid_argument);
}

TEST_SUITE_END();
