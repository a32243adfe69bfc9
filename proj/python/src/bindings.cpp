#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nbcrw.hpp"

namespace py = pybind11;
using namespace nbcrw;

namespace {

Graph graph_from_pairs(const std::vector<std::pair<NodeId, NodeId>>& pairs,
                       std::optional<std::size_t> node_count) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  NodeId top = -1;
  for (const auto& [u, v] : pairs) {
    edges.push_back({u, v});
    top = std::max({top, u, v});
  }
  return Graph::from_edges(node_count.value_or(static_cast<std::size_t>(top + 1)), edges);
}

py::dict class_dict(const ClassValues& v) {
  py::dict d;
  d["hub"] = v.hub;
  d["internal"] = v.internal;
  d["peripheral"] = v.peripheral;
  return d;
}

py::dict oracle_dict(int m) {
  const auto o = rose4_oracle(m);
  py::dict d;
  d["m"] = o.m;
  d["node_count"] = o.node_count;
  d["edge_count"] = o.edge_count;
  d["kappa1"] = o.kappa1;
  d["x"] = class_dict(o.x);
  for (const WalkKind kind : kAllWalks) {
    const auto& w = o.walk(kind);
    py::dict h;
    h["i_to_h"] = w.hitting.i_to_h;
    h["p_to_h"] = w.hitting.p_to_h;
    h["h_to_i"] = w.hitting.h_to_i;
    h["i_to_i"] = w.hitting.i_to_i;
    h["p_to_i"] = w.hitting.p_to_i;
    h["h_to_p"] = w.hitting.h_to_p;
    h["i_to_p"] = w.hitting.i_to_p;
    py::dict e;
    e["pi"] = class_dict(w.pi);
    e["hitting"] = h;
    e["internal_to_hub"] = w.internal_to_hub;
    e["t_hub"] = w.t_hub;
    e["t_global"] = w.t_global;
    d[py::str(std::string(to_string(kind)))] = e;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Non-backtracking centrality random walks";
  m.attr("__version__") = kVersion;

  static py::exception<Error> error(m, "NbcrwError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      exc.attr("exit_code") = e.exit_code();
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::enum_<WalkKind>(m, "WalkKind")
      .value("turw", WalkKind::turw)
      .value("merw", WalkKind::merw)
      .value("nbcrw", WalkKind::nbcrw);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&graph_from_pairs), py::arg("edges"), py::arg("node_count") = py::none())
      .def_static("parse", [](const std::string& text, int index_base) {
        ParseOptions opts;
        opts.index_base = index_base;
        return parse_edge_list(text, opts);
      }, py::arg("text"), py::arg("index_base") = 0)
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("degrees", &Graph::degrees)
      .def_property_readonly("labels", &Graph::labels)
      .def("edges", [](const Graph& g) {
        std::vector<std::pair<NodeId, NodeId>> out;
        for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
        return out;
      })
      .def("adjacency", &Graph::adjacency)
      .def("to_edge_list", [](const Graph& g) {
        std::ostringstream s;
        write_edge_list(s, g);
        return s.str();
      })
      .def("__repr__", [](const Graph& g) {
        return "<Graph N=" + std::to_string(g.node_count()) +
               " E=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("largest_component", &largest_component);
  m.def("make_rose", [](int petals, int l) { return make_rose({petals, l}); },
        py::arg("m"), py::arg("l") = 4);
  m.def("gen_er", &gen_er, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("gen_ba", &gen_ba, py::arg("n"), py::arg("m_attach"), py::arg("seed"));
  m.def("gen_ws", &gen_ws, py::arg("n"), py::arg("k"), py::arg("beta"), py::arg("seed"));
  m.def("complete_graph", &complete_graph);
  m.def("cycle_graph", &cycle_graph);

  py::class_<NbCentrality>(m, "NbCentrality")
      .def_readonly("kappa", &NbCentrality::kappa)
      .def_readonly("x", &NbCentrality::x)
      .def_readonly("y", &NbCentrality::y)
      .def_readonly("residual", &NbCentrality::residual)
      .def_readonly("iterations", &NbCentrality::iterations)
      .def_readonly("refined", &NbCentrality::refined);

  m.def("nb_centrality", [](const Graph& g, double tol) { return nb_centrality(g, {tol, 0}); },
        py::arg("graph"), py::arg("tol") = kDefaultTol);
  m.def("verify_b_vs_m", [](const Graph& g) {
    const auto c = verify_b_vs_m(g);
    return py::make_tuple(c.kappa_b, c.kappa_m, c.max_gap);
  });
  m.def("eigenvector_centrality", [](const Graph& g) { return adjacency_perron(g).psi; });

  auto opts = [](std::optional<double> regularize) { return NbcrwOptions{kDefaultTol, regularize}; };
  m.def("transition", [opts](WalkKind kind, const Graph& g, std::optional<double> regularize) {
    return transition(kind, g, opts(regularize)).p;
  }, py::arg("kind"), py::arg("graph"), py::arg("regularize") = py::none());
  m.def("stationary", [opts](WalkKind kind, const Graph& g, std::optional<double> regularize) {
    return stationary_closed(kind, g, opts(regularize)).pi;
  }, py::arg("kind"), py::arg("graph"), py::arg("regularize") = py::none());
  m.def("stationary_generic", [opts](WalkKind kind, const Graph& g) {
    return stationary_generic(transition(kind, g, opts({}))).pi;
  });
  m.def("ipr", &ipr);

  py::class_<HittingReport>(m, "HittingReport")
      .def_readonly("t", &HittingReport::t)
      .def_readonly("t_partial", &HittingReport::t_partial)
      .def_readonly("t_global", &HittingReport::t_global)
      .def_property_readonly("method", [](const HittingReport& r) {
        return std::string(to_string(r.method));
      });

  m.def("hitting", [opts](WalkKind kind, const Graph& g, const std::string& method,
                          std::optional<double> regularize, int threads) {
    if (method == "linear") return hitting_linear(transition(kind, g, opts(regularize)), threads);
    if (method != "spectral") {
      throw Error(ErrorCode::invalid_params, "method is 'spectral' or 'linear'");
    }
    return hitting_spectral(kind, g, opts(regularize));
  }, py::arg("kind"), py::arg("graph"), py::arg("method") = "spectral",
     py::arg("regularize") = py::none(), py::arg("threads") = 1);
  m.def("hub_node", &hub_node);

  m.def("rose_oracle", &oracle_dict, py::arg("m"));

  m.def("simulate_hitting", [opts](WalkKind kind, const Graph& g, NodeId source, NodeId target,
                                   std::int64_t trials, std::uint64_t seed, int threads) {
    SimConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.threads = threads;
    const auto r = simulate_hitting(transition(kind, g, opts({})), source, target, cfg);
    return py::make_tuple(r.estimate(0), r.std_error(0), r.truncated);
  }, py::arg("kind"), py::arg("graph"), py::arg("source"), py::arg("target"),
     py::arg("trials") = 100000, py::arg("seed") = 1, py::arg("threads") = 1);
}
