#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gibbsgraph/branching.hpp"
#include "gibbsgraph/clusters.hpp"
#include "gibbsgraph/domination.hpp"
#include "gibbsgraph/ground_state.hpp"
#include "gibbsgraph/point_process.hpp"
#include "gibbsgraph/sampler.hpp"

namespace py = pybind11;
using namespace gibbsgraph;

PYBIND11_MODULE(_gibbsgraph, m) {
    m.doc() = "Gibbs random graphs on finite point sets";
    m.attr("__version__") = "0.1.0";

    py::class_<BoxRegion>(m, "BoxRegion")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("low"),
             py::arg("high"))
        .def_static("cube", &BoxRegion::cube, py::arg("dim"), py::arg("side"))
        .def_readonly("low", &BoxRegion::low)
        .def_readonly("high", &BoxRegion::high)
        .def("dim", &BoxRegion::dim)
        .def("volume", &BoxRegion::volume);

    py::class_<EdgeId>(m, "EdgeId")
        .def(py::init<int, int>(), py::arg("a"), py::arg("b"))
        .def_readonly("i", &EdgeId::i)
        .def_readonly("j", &EdgeId::j)
        .def("__eq__", [](const EdgeId& a, const EdgeId& b) { return a == b; })
        .def("__hash__", [](const EdgeId& e) { return e.i * 1000003 + e.j; })
        .def("__repr__", [](const EdgeId& e) {
            return "EdgeId(" + std::to_string(e.i) + ", " + std::to_string(e.j) + ")";
        });

    py::class_<PointSet>(m, "PointSet")
        .def(py::init<int, std::vector<double>>(), py::arg("dim"), py::arg("coords"))
        .def_static("from_rows", &PointSet::from_rows, py::arg("dim"), py::arg("rows"))
        .def("dim", &PointSet::dim)
        .def("size", &PointSet::size)
        .def("point",
             [](const PointSet& ps, int v) {
                 const auto p = ps.point(v);
                 return std::vector<double>(p.begin(), p.end());
             })
        .def("distance", &PointSet::distance)
        .def("edge_length", &PointSet::edge_length)
        .def("__len__", &PointSet::size);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<double, double, double, int>(), py::arg("beta"), py::arg("h0"),
             py::arg("h1"), py::arg("dim") = 2)
        .def_static("from_temperature", &ModelParams::from_temperature, py::arg("temperature"),
                    py::arg("h0"), py::arg("h1"), py::arg("dim") = 2)
        .def_readonly("beta", &ModelParams::beta)
        .def_readonly("h0", &ModelParams::h0)
        .def_readonly("h1", &ModelParams::h1)
        .def_readonly("dim", &ModelParams::dim)
        .def("temperature", &ModelParams::temperature);

    py::class_<Configuration>(m, "Configuration")
        .def(py::init<int>(), py::arg("n_vertices"))
        .def("n_vertices", &Configuration::n_vertices)
        .def("open_count", &Configuration::open_count)
        .def("is_open", &Configuration::is_open)
        .def("set_open", &Configuration::set_open)
        .def("flip", &Configuration::flip)
        .def("degree", &Configuration::degree)
        .def("open_edges", &Configuration::open_edges)
        .def("__eq__",
             [](const Configuration& a, const Configuration& b) { return a == b; });

    m.def("penalty", &penalty, py::arg("degree"), py::arg("params"));
    m.def("energy", &energy, py::arg("points"), py::arg("config"), py::arg("params"));
    m.def("energy_delta", &energy_delta, py::arg("points"), py::arg("config"), py::arg("edge"),
          py::arg("params"));

    m.def("sample_poisson", &sample_poisson, py::arg("box"), py::arg("intensity"),
          py::arg("seed"));
    m.def("sample_hardcore", &sample_hardcore, py::arg("box"), py::arg("intensity"),
          py::arg("eps0"), py::arg("seed"));
    m.def("t_gamma", &t_gamma, py::arg("points"), py::arg("v"), py::arg("params"));
    m.def("t_sup", &t_sup, py::arg("points"), py::arg("params"));

    py::class_<ExactDistribution>(m, "ExactDistribution")
        .def_readonly("n", &ExactDistribution::n)
        .def_readonly("edges", &ExactDistribution::edges)
        .def_readonly("probabilities", &ExactDistribution::probabilities)
        .def_readonly("z", &ExactDistribution::z)
        .def_readonly("log_z", &ExactDistribution::log_z)
        .def_readonly("min_energy", &ExactDistribution::min_energy)
        .def("probability", &ExactDistribution::probability)
        .def("edge_marginal", &ExactDistribution::edge_marginal)
        .def("conditional_open", &ExactDistribution::conditional_open)
        .def("to_configuration", &ExactDistribution::to_configuration);
    m.def("exact_distribution", &exact_distribution, py::arg("points"), py::arg("params"));

    m.def("conditional_open_probability", &conditional_open_probability, py::arg("points"),
          py::arg("rest"), py::arg("edge"), py::arg("params"));
    m.def("default_cutoff", &default_cutoff, py::arg("points"), py::arg("params"));

    py::class_<HeatBathChain>(m, "HeatBathChain")
        .def(py::init<PointSet, const ModelParams&, std::uint64_t, std::optional<double>>(),
             py::arg("points"), py::arg("params"), py::arg("seed"),
             py::arg("cutoff") = std::nullopt)
        .def("sweep", &HeatBathChain::sweep)
        .def("run", &HeatBathChain::run, py::arg("sweeps"))
        .def("config", &HeatBathChain::config, py::return_value_policy::copy)
        .def("sweeps_done", &HeatBathChain::sweeps_done);

    m.def("mcmc_run", &mcmc_run, py::arg("points"), py::arg("params"), py::arg("seed"),
          py::arg("burnin"), py::arg("sweeps"), py::arg("cutoff") = std::nullopt);

    py::class_<MarginalEstimate>(m, "MarginalEstimate")
        .def_readonly("edge", &MarginalEstimate::edge)
        .def_readonly("mean", &MarginalEstimate::mean)
        .def_readonly("std_error", &MarginalEstimate::std_error);
    m.def("estimate_edge_marginals", &estimate_edge_marginals, py::arg("stream"),
          py::arg("thin") = 1);

    py::class_<Star>(m, "Star")
        .def(py::init([](int center, std::vector<EdgeId> open, std::vector<EdgeId> closed) {
                 return Star{center, std::move(open), std::move(closed)};
             }),
             py::arg("center"), py::arg("open"), py::arg("closed") = std::vector<EdgeId>{})
        .def_readonly("center", &Star::center)
        .def_readonly("open", &Star::open)
        .def_readonly("closed", &Star::closed);
    m.def("star_probability_bound", &star_probability_bound, py::arg("points"), py::arg("star"),
          py::arg("params"), py::arg("environment_open_count"));
    m.def("degree_bound", &degree_bound, py::arg("t"), py::arg("params"), py::arg("k_max") = 64);

    m.def("connection_g", &connection_g, py::arg("length"), py::arg("params"));
    m.def("nu_open_probability", &nu_open_probability, py::arg("points"), py::arg("edge"),
          py::arg("params"));
    m.def("sample_nu", &sample_nu, py::arg("points"), py::arg("params"), py::arg("seed"),
          py::arg("cutoff") = std::nullopt);
    m.def("j_tail_integral", &j_tail_integral, py::arg("temperature"));
    m.def("total_g_integral", &total_g_integral, py::arg("temperature"), py::arg("h0"));
    m.def("in_region_f", &in_region_f, py::arg("lambda_"), py::arg("temperature"), py::arg("h0"));
    m.def("subcritical_rcm", &subcritical_rcm, py::arg("lambda_"), py::arg("temperature"),
          py::arg("h0"));

    py::enum_<Uniqueness>(m, "Uniqueness")
        .value("unique", Uniqueness::unique)
        .value("tied", Uniqueness::tied)
        .value("unknown", Uniqueness::unknown);

    py::class_<GroundStateResult>(m, "GroundStateResult")
        .def_readonly("config", &GroundStateResult::config)
        .def_readonly("energy", &GroundStateResult::energy)
        .def_readonly("uniqueness", &GroundStateResult::uniqueness)
        .def_readonly("tie_count", &GroundStateResult::tie_count)
        .def_readonly("ties", &GroundStateResult::ties)
        .def_readonly("degenerate_boundary", &GroundStateResult::degenerate_boundary);
    m.def("ground_state_bruteforce", &ground_state_bruteforce, py::arg("points"),
          py::arg("params"));
    m.def("ground_state_matching", &ground_state_matching, py::arg("points"), py::arg("params"),
          py::arg("determine_uniqueness") = false);
    m.def("verify_ground_state_properties", &verify_ground_state_properties, py::arg("points"),
          py::arg("config"), py::arg("params"));
    m.def("cluster_decompose_2h0", &cluster_decompose_2h0, py::arg("points"), py::arg("params"));
    m.def("is_unique_ground_state", &is_unique_ground_state, py::arg("points"), py::arg("params"));

    m.def("connected_components", &connected_components, py::arg("config"));
    py::class_<ClusterStats>(m, "ClusterStats")
        .def_readonly("n_points", &ClusterStats::n_points)
        .def_readonly("n_components", &ClusterStats::n_components)
        .def_readonly("largest", &ClusterStats::largest)
        .def_readonly("largest_fraction", &ClusterStats::largest_fraction)
        .def_readonly("mean_degree", &ClusterStats::mean_degree);
    m.def("cluster_stats", &cluster_stats, py::arg("config"));
    m.def("crossing_indicator", &crossing_indicator, py::arg("points"), py::arg("config"),
          py::arg("box"), py::arg("margin"));

    py::class_<PercolationOptions>(m, "PercolationOptions")
        .def(py::init<>())
        .def_readwrite("hardcore", &PercolationOptions::hardcore)
        .def_readwrite("eps0", &PercolationOptions::eps0)
        .def_readwrite("intensity", &PercolationOptions::intensity)
        .def_readwrite("burnin", &PercolationOptions::burnin)
        .def_readwrite("sweeps", &PercolationOptions::sweeps)
        .def_readwrite("margin_factor", &PercolationOptions::margin_factor)
        .def_readwrite("cutoff", &PercolationOptions::cutoff)
        .def_readwrite("use_default_cutoff", &PercolationOptions::use_default_cutoff);
    py::class_<PercolationRow>(m, "PercolationRow")
        .def_readonly("side", &PercolationRow::side)
        .def_readonly("replica", &PercolationRow::replica)
        .def_readonly("seed", &PercolationRow::seed)
        .def_readonly("n_points", &PercolationRow::n_points)
        .def_readonly("crossing", &PercolationRow::crossing)
        .def_readonly("largest_fraction", &PercolationRow::largest_fraction)
        .def_readonly("mean_degree", &PercolationRow::mean_degree)
        .def_readonly("energy", &PercolationRow::energy);
    m.def("percolation_experiment", &percolation_experiment, py::arg("sides"),
          py::arg("replicas"), py::arg("params"), py::arg("options"), py::arg("seed"));

    py::class_<ExploreCaps>(m, "ExploreCaps")
        .def(py::init<>())
        .def_readwrite("max_generations", &ExploreCaps::max_generations)
        .def_readwrite("max_edges", &ExploreCaps::max_edges);
    py::class_<ExploredEdge>(m, "ExploredEdge")
        .def_readonly("generation", &ExploredEdge::generation)
        .def_readonly("parent_vertex", &ExploredEdge::parent_vertex)
        .def_readonly("edge", &ExploredEdge::edge);
    py::class_<BranchingTrace>(m, "BranchingTrace")
        .def_readonly("start_vertex", &BranchingTrace::start_vertex)
        .def_readonly("edges", &BranchingTrace::edges)
        .def_readonly("generations", &BranchingTrace::generations)
        .def_readonly("survived", &BranchingTrace::survived)
        .def("edge_total", &BranchingTrace::edge_total)
        .def("generation_count", &BranchingTrace::generation_count);
    m.def("explore_cluster", &explore_cluster, py::arg("config"), py::arg("start"),
          py::arg("caps") = ExploreCaps{});

    m.def("offspring_probability_bound", &offspring_probability_bound, py::arg("m"), py::arg("t"),
          py::arg("params"));
    m.def("expected_offspring_bound", &expected_offspring_bound, py::arg("t"), py::arg("params"),
          py::arg("m_max") = 64);
    m.def("expected_cluster_size_bound", &expected_cluster_size_bound,
          py::arg("first_stage_mean"), py::arg("eps"));

    py::class_<CriticalBetaOptions>(m, "CriticalBetaOptions")
        .def(py::init<>())
        .def_readwrite("beta_min", &CriticalBetaOptions::beta_min)
        .def_readwrite("beta_max", &CriticalBetaOptions::beta_max)
        .def_readwrite("factor", &CriticalBetaOptions::factor)
        .def_readwrite("eps", &CriticalBetaOptions::eps);
    m.def("critical_beta_estimate", &critical_beta_estimate, py::arg("t_sup_of_beta"),
          py::arg("h0"), py::arg("h1"), py::arg("options") = CriticalBetaOptions{});

    py::class_<ExtinctionRun>(m, "ExtinctionRun")
        .def_readonly("seed", &ExtinctionRun::seed)
        .def_readonly("start_vertex", &ExtinctionRun::start_vertex)
        .def_readonly("explored_edges", &ExtinctionRun::explored_edges)
        .def_readonly("generations", &ExtinctionRun::generations)
        .def_readonly("survived", &ExtinctionRun::survived)
        .def_readonly("component_edges", &ExtinctionRun::component_edges);
    py::class_<ExtinctionOptions>(m, "ExtinctionOptions")
        .def(py::init<>())
        .def_readwrite("start_vertex", &ExtinctionOptions::start_vertex)
        .def_readwrite("burnin", &ExtinctionOptions::burnin)
        .def_readwrite("caps", &ExtinctionOptions::caps)
        .def_readwrite("use_default_cutoff", &ExtinctionOptions::use_default_cutoff)
        .def_readwrite("cutoff", &ExtinctionOptions::cutoff);
    py::class_<ExtinctionResult>(m, "ExtinctionResult")
        .def_readonly("runs", &ExtinctionResult::runs)
        .def_readonly("finite_fraction", &ExtinctionResult::finite_fraction)
        .def_readonly("survival_fraction", &ExtinctionResult::survival_fraction);
    m.def("extinction_experiment", &extinction_experiment, py::arg("points"), py::arg("params"),
          py::arg("n_runs"), py::arg("seed"), py::arg("options") = ExtinctionOptions{});
}
