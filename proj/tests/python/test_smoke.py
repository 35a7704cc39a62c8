"""Smoke tests for the python bindings.

Each test touches one surface of the module end to end; the heavy
correctness checks live in the C++ test suites.
"""

import math

import pytest

import gibbsgraph as gg


def triangle():
    return gg.PointSet(2, [0.0, 0.0, 1.0, 0.0, 0.0, 1.0])


def params():
    return gg.ModelParams(beta=2.0, h0=0.5, h1=1.0)


def test_version_and_geometry():
    assert gg.__version__ == "0.1.0"
    points = triangle()
    assert len(points) == 3
    assert points.dim() == 2
    assert points.distance(0, 1) == pytest.approx(1.0)
    assert points.edge_length(gg.EdgeId(1, 2)) == pytest.approx(math.sqrt(2.0))
    box = gg.BoxRegion.cube(2, 4.0)
    assert box.volume() == pytest.approx(16.0)


def test_energy_and_penalty():
    p = params()
    assert gg.penalty(0, p) == pytest.approx(p.h0)
    assert gg.penalty(1, p) == 0.0
    assert gg.penalty(3, p) == pytest.approx(3.0 * p.h1)

    points = triangle()
    config = gg.Configuration(3)
    # two isolated vertices plus one open unit edge: 2*h0 is saved, length paid
    empty_energy = gg.energy(points, config, p)
    assert empty_energy == pytest.approx(3 * p.h0)
    delta = gg.energy_delta(points, config, gg.EdgeId(0, 1), p)
    config.set_open(gg.EdgeId(0, 1), True)
    assert gg.energy(points, config, p) == pytest.approx(empty_energy + delta)


def test_exact_distribution_and_conditionals():
    points = triangle()
    p = params()
    dist = gg.exact_distribution(points, p)
    assert sum(dist.probabilities) == pytest.approx(1.0)
    for k in range(3):
        assert 0.0 < dist.edge_marginal(k) < 1.0

    # the heat-bath conditional is the enumeration conditional
    rest = gg.Configuration(3)
    rest.set_open(gg.EdgeId(1, 2), True)
    k = dist.edges.index(gg.EdgeId(0, 1))
    mask = 1 << dist.edges.index(gg.EdgeId(1, 2))
    assert gg.conditional_open_probability(
        points, rest, gg.EdgeId(0, 1), p
    ) == pytest.approx(dist.conditional_open(k, mask), abs=1e-12)


def test_chain_reproducibility_and_marginals():
    points = triangle()
    p = params()
    stream = gg.mcmc_run(points, p, seed=42, burnin=50, sweeps=200)
    assert len(stream) == 200
    again = gg.mcmc_run(points, p, seed=42, burnin=50, sweeps=200)
    assert stream[-1] == again[-1]

    estimates = gg.estimate_edge_marginals(stream)
    assert len(estimates) == 3
    assert all(0.0 <= e.mean <= 1.0 for e in estimates)

    chain = gg.HeatBathChain(points, p, seed=7)
    chain.run(25)
    assert chain.sweeps_done() == 25
    assert chain.config().n_vertices() == 3


def test_ground_state_solvers_agree():
    points = gg.PointSet(2, [0.0, 0.0, 0.8, 0.0, 2.0, 0.0, 2.0, 0.7])
    p = gg.ModelParams(beta=1.0, h0=0.5, h1=1.0)
    brute = gg.ground_state_bruteforce(points, p)
    matched = gg.ground_state_matching(points, p, determine_uniqueness=True)
    assert matched.energy == pytest.approx(brute.energy, abs=1e-12)
    assert gg.verify_ground_state_properties(points, matched.config, p) == []
    assert matched.uniqueness == gg.Uniqueness.unique
    assert len(gg.cluster_decompose_2h0(points, p)) >= 1


def test_domination_and_region():
    points = triangle()
    p = params()
    rest = gg.Configuration(3)
    e = gg.EdgeId(0, 1)
    assert gg.conditional_open_probability(points, rest, e, p) <= gg.nu_open_probability(
        points, e, p
    ) + 1e-12
    assert gg.connection_g(2 * p.h0, p) == pytest.approx(0.5)

    temperature, h0 = 1.0, 0.5
    assert gg.j_tail_integral(temperature) == pytest.approx(math.log(2.0))
    assert gg.total_g_integral(temperature, h0) == pytest.approx(
        temperature * math.log(1.0 + math.exp(2.0 * h0 / temperature))
    )
    lam = 1.0 / (2.0 * h0 + gg.j_tail_integral(temperature))
    assert gg.in_region_f(lam, temperature, h0)
    assert gg.subcritical_rcm(lam, temperature, h0)


def test_point_processes():
    box = gg.BoxRegion.cube(2, 5.0)
    points = gg.sample_poisson(box, intensity=1.0, seed=11)
    for v in range(len(points)):
        x = points.point(v)
        assert all(0.0 <= c <= 5.0 for c in x)
    hard = gg.sample_hardcore(box, intensity=1.0, eps0=0.3, seed=11)
    for v in range(len(hard)):
        for w in range(v + 1, len(hard)):
            assert hard.distance(v, w) >= 0.3


def test_exploration_matches_component():
    # square 0-1-2-3 with one diagonal: component has 5 edges including cycles
    config = gg.Configuration(5)
    for e in [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]:
        config.set_open(gg.EdgeId(*e), True)
    trace = gg.explore_cluster(config, 0)
    assert not trace.survived
    assert trace.edge_total() == 5
    explored = {(e.edge.i, e.edge.j) for e in trace.edges}
    assert explored == {(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)}
    assert trace.generations[0] == [0]

    comps = gg.connected_components(config)
    assert sorted(map(len, comps)) == [1, 4]
    stats = gg.cluster_stats(config)
    assert stats.largest_fraction == pytest.approx(0.8)


def test_branching_bounds_and_experiment():
    p = params()
    t = 0.4
    bound = gg.expected_offspring_bound(t, p)
    assert bound > 0.0
    assert gg.offspring_probability_bound(1, t, p) == pytest.approx(
        t * math.exp(p.beta * (-p.h1 + p.h0))
    )
    assert gg.expected_cluster_size_bound(0.4, 0.2) == pytest.approx(2.0)

    points = triangle()
    result = gg.extinction_experiment(points, p, n_runs=20, seed=3)
    assert len(result.runs) == 20
    assert result.finite_fraction + result.survival_fraction == pytest.approx(1.0)


def test_percolation_experiment_runs():
    p = gg.ModelParams(beta=1.0, h0=0.5, h1=1.0)
    options = gg.PercolationOptions()
    options.intensity = 0.8
    options.burnin = 20
    rows = gg.percolation_experiment([3.0, 4.0], 2, p, options, seed=5)
    assert len(rows) == 4
    assert all(0.0 <= r.largest_fraction <= 1.0 for r in rows)
