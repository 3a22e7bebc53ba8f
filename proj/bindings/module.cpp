#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilouvain/dataset.hpp"
#include "ilouvain/errors.hpp"
#include "ilouvain/graph.hpp"
#include "ilouvain/ising.hpp"
#include "ilouvain/louvain.hpp"
#include "ilouvain/modularity.hpp"
#include "ilouvain/report.hpp"
#include "ilouvain/solvers.hpp"

namespace py = pybind11;
using namespace ilouvain;

namespace {

Graph graph_from_edges(int num_nodes,
                       const std::vector<std::tuple<int, int, double>>& edges) {
  GraphBuilder b;
  b.add_nodes(num_nodes);
  for (const auto& [u, v, w] : edges) b.add_edge(u, v, w);
  return b.build();
}

py::dict stats_dict(const RunStats& s) {
  py::dict d;
  d["solver_calls"] = s.solver_calls;
  d["qubo_sizes"] = s.qubo_sizes;
  d["greedy_shortcuts"] = s.greedy_shortcuts;
  d["single_candidate_eliminations"] = s.single_candidate_eliminations;
  d["infeasible_decodes"] = s.infeasible_decodes;
  py::list trace;
  for (const TraceEntry& t : s.modularity_trace)
    trace.append(py::make_tuple(t.level, t.pass, t.q));
  d["modularity_trace"] = std::move(trace);
  d["wall_ms"] = s.wall_ms;
  return d;
}

Hyperparams hyperparams_from_kwargs(
    int max_nodes, int max_clusters, int max_node_visits, std::uint64_t seed,
    std::int64_t solver_timeout_ms, int bfs_depth, std::optional<double> gamma,
    int counter_max_out, int counter_max_in, double theta,
    const std::string& node_strategy, const std::string& cluster_strategy) {
  Hyperparams hp;
  hp.max_nodes = max_nodes;
  hp.max_clusters = max_clusters;
  hp.max_node_visits = max_node_visits;
  hp.random_seed = seed;
  hp.solver_timeout = std::chrono::milliseconds(solver_timeout_ms);
  hp.bfs_depth = bfs_depth;
  hp.gamma = gamma;
  hp.counter_max_out = counter_max_out;
  hp.counter_max_in = counter_max_in;
  hp.theta = theta;
  hp.node_strategy = node_strategy_from_string(node_strategy);
  hp.cluster_strategy = cluster_strategy_from_string(cluster_strategy);
  return hp;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Modularity clustering with annealer-solved local subproblems";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<RemoteUnavailable>(m, "RemoteUnavailable", PyExc_ConnectionError);
  py::register_exception<ProtocolViolation>(m, "ProtocolViolation", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("total_weight", &Graph::total_weight)
      .def("degree", &Graph::degree, py::arg("node"))
      .def("label", &Graph::label, py::arg("node"))
      .def("labels", &Graph::labels)
      .def("__repr__", [](const Graph& g) {
        return "<ilouvain.Graph n=" + std::to_string(g.num_nodes()) +
               " m=" + std::to_string(g.num_edges()) + ">";
      });

  py::class_<ClusterResult>(m, "ClusterResult")
      .def_readonly("assignment", &ClusterResult::assignment)
      .def_readonly("modularity", &ClusterResult::modularity)
      .def_readonly("num_clusters", &ClusterResult::num_clusters)
      .def_property_readonly("stats",
                             [](const ClusterResult& r) { return stats_dict(r.stats); })
      .def("__repr__", [](const ClusterResult& r) {
        return "<ilouvain.ClusterResult Q=" + std::to_string(r.modularity) +
               " clusters=" + std::to_string(r.num_clusters) + ">";
      });

  m.def("load_graph",
        [](const std::string& name, const std::string& data_dir, bool weighted) {
          return resolve_graph(name, data_dir, weighted);
        },
        py::arg("name"), py::arg("data_dir") = "data", py::arg("weighted") = false,
        "Load a builtin graph, a bundled dataset, or an edge list file.");

  m.def("graph_from_edges", &graph_from_edges, py::arg("num_nodes"), py::arg("edges"),
        "Build a graph from (u, v, weight) triples over nodes 0..num_nodes-1.");

  m.def("builtin_names",
        [] { return std::vector<std::string>{"karate", "two_triangles", "trapped_pair"}; });

  m.def("modularity",
        [](const Graph& g, const std::vector<ClusterId>& assignment) {
          return modularity_of_assignment(g, assignment);
        },
        py::arg("graph"), py::arg("assignment"),
        "Score a full cluster assignment on a graph.");

  m.def("louvain",
        [](const Graph& g, double theta, std::uint64_t seed) {
          return louvain(g, {theta, seed});
        },
        py::arg("graph"), py::arg("theta") = 1e-7, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "Classic greedy baseline.");

  m.def("ising_louvain",
        [](const Graph& g, int max_nodes, int max_clusters, int max_node_visits,
           std::uint64_t seed, std::int64_t solver_timeout_ms, int bfs_depth,
           std::optional<double> gamma, int counter_max_out, int counter_max_in,
           double theta, const std::string& node_strategy,
           const std::string& cluster_strategy, const std::string& solver,
           const std::string& endpoint, int sa_sweeps_per_var) {
          Hyperparams hp = hyperparams_from_kwargs(
              max_nodes, max_clusters, max_node_visits, seed, solver_timeout_ms,
              bfs_depth, gamma, counter_max_out, counter_max_in, theta, node_strategy,
              cluster_strategy);
          SolverConfig cfg;
          cfg.target = solver_target_from_string(solver);
          cfg.endpoint = endpoint;
          cfg.sa.sweeps_per_var = sa_sweeps_per_var;
          SolverDispatch dispatch(cfg);
          py::gil_scoped_release release;
          return ising_louvain(g, hp, dispatch);
        },
        py::arg("graph"), py::arg("max_nodes") = 30, py::arg("max_clusters") = 4,
        py::arg("max_node_visits") = 2, py::arg("seed") = 0,
        py::arg("solver_timeout_ms") = 10'000, py::arg("bfs_depth") = 2,
        py::arg("gamma") = std::nullopt, py::arg("counter_max_out") = 20,
        py::arg("counter_max_in") = 20, py::arg("theta") = 1e-7,
        py::arg("node_strategy") = "bfs", py::arg("cluster_strategy") = "semi_greedy",
        py::arg("solver") = "sa", py::arg("endpoint") = "",
        py::arg("sa_sweeps_per_var") = 100,
        "Hierarchical clustering with QUBO-solved local moves.");

  m.def("qubo_size_quartiles",
        [](std::vector<double> sizes) {
          Quartiles q = quartiles(std::move(sizes));
          return py::make_tuple(q.q1, q.median, q.q3);
        },
        py::arg("sizes"), "Hinge quartiles (Q1, median, Q3) of a sample.");
}
