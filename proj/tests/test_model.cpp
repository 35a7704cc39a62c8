#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "gibbsgraph/geometry.hpp"
#include "gibbsgraph/model.hpp"
#include "test_support.hpp"

using namespace gibbsgraph;
using testsupport::oracle_energy;

TEST_SUITE_BEGIN("model");

TEST_CASE("EdgeId normalizes order and rejects degenerate pairs") {
    EdgeId e(3, 1);
    CHECK(e.i == 1);
    CHECK(e.j == 3);
    CHECK(EdgeId(1, 3) == e);
    CHECK(EdgeId(0, 1) < EdgeId(0, 2));
    CHECK(EdgeId(0, 2) < EdgeId(1, 2));
    CHECK_THROWS_AS(EdgeId(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(EdgeId(-1, 2), std::invalid_argument);
}

TEST_CASE("edge indexing round-trips the lexicographic enumeration") {
    CHECK(edge_count(0) == 0);
    CHECK(edge_count(1) == 0);
    CHECK(edge_count(2) == 1);
    CHECK(edge_count(5) == 10);
    for (int n = 2; n <= 8; ++n) {
        std::size_t k = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j, ++k) {
                CHECK(edge_to_index(n, EdgeId(i, j)) == k);
                CHECK(index_to_edge(n, k) == EdgeId(i, j));
            }
        }
        CHECK(k == edge_count(n));
    }
}

TEST_CASE("BoxRegion validates corners and measures itself") {
    BoxRegion box({0.0, -1.0}, {2.0, 1.0});
    CHECK(box.dim() == 2);
    CHECK(box.side(0) == 2.0);
    CHECK(box.volume() == doctest::Approx(4.0));
    const double inside[] = {1.0, 0.0};
    const double outside[] = {3.0, 0.0};
    CHECK(box.contains(inside));
    CHECK(!box.contains(outside));

    BoxRegion cube = BoxRegion::cube(3, 2.0);
    CHECK(cube.dim() == 3);
    CHECK(cube.volume() == doctest::Approx(8.0));

    CHECK_THROWS_AS(BoxRegion({0.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(BoxRegion({0.0, 0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(BoxRegion({}, {}), std::invalid_argument);
}

TEST_CASE("PointSet checks shape and distinctness") {
    PointSet points(2, {0.0, 0.0, 1.0, 0.0, 0.0, 1.0});
    CHECK(points.size() == 3);
    CHECK(points.dim() == 2);
    CHECK(points.distance(0, 1) == doctest::Approx(1.0));
    CHECK(points.distance(1, 2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(points.edge_length(EdgeId(0, 2)) == doctest::Approx(1.0));
    CHECK(points.point(1)[0] == 1.0);

    CHECK_THROWS_AS(PointSet(2, {0.0, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PointSet(0, {}), std::invalid_argument);
    // exact duplicate, in any position
    CHECK_THROWS_AS(PointSet(2, {1.0, 2.0, 0.0, 0.0, 1.0, 2.0}), std::invalid_argument);

    PointSet rows = PointSet::from_rows(1, {{0.5}, {1.5}});
    CHECK(rows.size() == 2);
    CHECK(rows.distance(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("ModelParams enforces beta > 0 and 0 < h0 < h1") {
    ModelParams params(2.0, 0.5, 1.0);
    CHECK(params.temperature() == doctest::Approx(0.5));
    CHECK(ModelParams::from_temperature(0.25, 0.5, 1.0).beta == doctest::Approx(4.0));

    CHECK_THROWS_AS(ModelParams(0.0, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(1.0, 1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(1.0, 0.5, 1.0, 0), std::invalid_argument);
}

TEST_CASE("penalty charges isolation once and crowding quadratically") {
    ModelParams params(1.0, 0.5, 2.0);
    CHECK(penalty(0, params) == doctest::Approx(0.5));
    CHECK(penalty(1, params) == 0.0);
    CHECK(penalty(2, params) == doctest::Approx(2.0));
    CHECK(penalty(3, params) == doctest::Approx(6.0));
    CHECK(penalty(5, params) == doctest::Approx(20.0));
}

TEST_CASE("Configuration keeps degrees consistent under flips") {
    Configuration config(4);
    CHECK(config.open_count() == 0);
    CHECK(!config.is_open(EdgeId(0, 1)));

    config.set_open(EdgeId(0, 1), true);
    config.set_open(EdgeId(2, 1), true);
    CHECK(config.open_count() == 2);
    CHECK(config.degree(1) == 2);
    CHECK(config.degree(0) == 1);
    CHECK(config.degree(3) == 0);
    CHECK(config.degrees_consistent());

    // setting an already-open edge open is a no-op
    config.set_open(EdgeId(0, 1), true);
    CHECK(config.open_count() == 2);
    CHECK(config.degree(0) == 1);

    config.flip(EdgeId(0, 1));
    CHECK(!config.is_open(EdgeId(0, 1)));
    CHECK(config.degree(0) == 0);
    CHECK(config.degrees_consistent());

    auto open = config.open_edges();
    REQUIRE(open.size() == 1);
    CHECK(open[0] == EdgeId(1, 2));

    Configuration other(4);
    other.set_open(EdgeId(1, 2), true);
    CHECK(config == other);

    CHECK_THROWS_AS(config.is_open(EdgeId(0, 4)), std::invalid_argument);
    CHECK_THROWS_AS(config.degree(4), std::invalid_argument);
}

TEST_CASE("open_edges comes out in canonical order") {
    Configuration config(5);
    config.set_open(EdgeId(3, 4), true);
    config.set_open(EdgeId(0, 2), true);
    config.set_open(EdgeId(0, 1), true);
    config.set_open(EdgeId(1, 2), true);
    auto open = config.open_edges();
    REQUIRE(open.size() == 4);
    CHECK(std::is_sorted(open.begin(), open.end()));
    CHECK(open.front() == EdgeId(0, 1));
    CHECK(open.back() == EdgeId(3, 4));
}

TEST_CASE("energy matches hand values on tiny instances") {
    ModelParams params(2.0, 0.5, 1.0);

    PointSet pair(1, {0.0, 0.7});
    Configuration closed(2);
    CHECK(energy(pair, closed, params) == doctest::Approx(1.0)); // two monomers
    Configuration dimer(2);
    dimer.set_open(EdgeId(0, 1), true);
    CHECK(energy(pair, dimer, params) == doctest::Approx(0.7)); // one edge, no penalty

    // unit right triangle, all edges open: lengths 1, 1, sqrt(2); each vertex
    // has degree 2, so three collision penalties h1
    PointSet tri(2, {0.0, 0.0, 1.0, 0.0, 0.0, 1.0});
    Configuration full(3);
    full.set_open(EdgeId(0, 1), true);
    full.set_open(EdgeId(0, 2), true);
    full.set_open(EdgeId(1, 2), true);
    CHECK(energy(tri, full, params) == doctest::Approx(2.0 + std::sqrt(2.0) + 3.0));
}

TEST_CASE("energy agrees with the reference recompute on random configurations") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(5));
        PointSet points = testsupport::random_points(n, 2, 1.5, rng);
        ModelParams params(0.5 + rng.uniform(0.0, 3.0), 0.3, 1.2);
        const std::uint32_t mask =
            static_cast<std::uint32_t>(rng.below(std::uint64_t(1) << edge_count(n)));
        Configuration config = testsupport::configuration_from_mask(n, mask);
        const double reference = oracle_energy(points, testsupport::mask_edges(n, mask), params);
        CHECK(energy(points, config, params) == doctest::Approx(reference).epsilon(1e-9));
    }
}

TEST_CASE("energy_delta equals the energy difference of the flip") {
    SplitMix64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(5));
        PointSet points = testsupport::random_points(n, 2, 1.5, rng);
        ModelParams params(1.0 + rng.uniform(0.0, 2.0), 0.4, 1.1);
        const std::uint32_t mask =
            static_cast<std::uint32_t>(rng.below(std::uint64_t(1) << edge_count(n)));
        Configuration config = testsupport::configuration_from_mask(n, mask);
        const std::size_t k = rng.below(edge_count(n));
        const EdgeId e = index_to_edge(n, k);

        const double before = energy(points, config, params);
        const double delta = energy_delta(points, config, e, params);
        config.flip(e);
        const double after = energy(points, config, params);
        CHECK(delta == doctest::Approx(after - before).epsilon(1e-9));

        // and the reverse flip is the exact negation
        CHECK(energy_delta(points, config, e, params) == doctest::Approx(-delta).epsilon(1e-12));
    }
}

TEST_SUITE_END();
