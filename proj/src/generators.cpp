#include "nbcrw/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <type_traits>

#include "nbcrw/error.hpp"
#include "nbcrw/random.hpp"

namespace nbcrw {

namespace {

Graph from_sets(const std::vector<std::set<NodeId>>& adj) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (const NodeId v : adj[u]) {
      if (static_cast<std::size_t>(v) > u) edges.push_back({static_cast<NodeId>(u), v});
    }
  }
  return Graph::from_edges(adj.size(), edges);
}

}  // namespace

Graph gen_er(std::size_t n, double p, std::uint64_t seed) {
  if (n == 0 || !(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::invalid_params, "ER needs n >= 1 and p in [0, 1]");
  }
  Rng rng = make_stream(seed, 0);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (uniform01(rng) < p) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
    }
  }
  return Graph::from_edges(n, edges);
}

Graph gen_ba(std::size_t n, std::size_t m_attach, std::uint64_t seed) {
  if (m_attach < 1 || n < m_attach + 1) {
    throw Error(ErrorCode::invalid_params, "BA needs m_attach >= 1 and n >= m_attach + 1");
  }
  Rng rng = make_stream(seed, 0);
  std::vector<Edge> edges;
  // One entry per edge endpoint, so a uniform pick is degree-weighted.
  std::vector<NodeId> ends;
  const std::size_t core = m_attach + 1;
  for (std::size_t i = 0; i < core; ++i) {
    for (std::size_t j = i + 1; j < core; ++j) {
      edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
      ends.push_back(static_cast<NodeId>(i));
      ends.push_back(static_cast<NodeId>(j));
    }
  }
  std::vector<NodeId> picked;
  for (std::size_t v = core; v < n; ++v) {
    picked.clear();
    while (picked.size() < m_attach) {
      const NodeId t = ends[uniform_index(rng, ends.size())];
      if (std::find(picked.begin(), picked.end(), t) == picked.end()) picked.push_back(t);
    }
    for (const NodeId t : picked) {
      edges.push_back({t, static_cast<NodeId>(v)});
      ends.push_back(t);
      ends.push_back(static_cast<NodeId>(v));
    }
  }
  return Graph::from_edges(n, edges);
}

Graph gen_ws(std::size_t n, std::size_t k, double beta, std::uint64_t seed) {
  if (k % 2 != 0 || k < 2 || k >= n || !(beta >= 0.0 && beta <= 1.0)) {
    throw Error(ErrorCode::invalid_params,
                "WS needs even k with 2 <= k < n and beta in [0, 1]");
  }
  Rng rng = make_stream(seed, 0);
  std::vector<std::set<NodeId>> adj(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t j = 1; j <= k / 2; ++j) {
      const auto v = static_cast<NodeId>((u + j) % n);
      adj[u].insert(v);
      adj[v].insert(static_cast<NodeId>(u));
    }
  }
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      const auto v = static_cast<NodeId>((u + j) % n);
      if (!(uniform01(rng) < beta)) continue;
      if (adj[u].size() >= n - 1) continue;
      NodeId w;
      do {
        w = static_cast<NodeId>(uniform_index(rng, n));
      } while (static_cast<std::size_t>(w) == u || adj[u].count(w) > 0);
      adj[u].erase(v);
      adj[v].erase(static_cast<NodeId>(u));
      adj[u].insert(w);
      adj[w].insert(static_cast<NodeId>(u));
    }
  }
  return from_sets(adj);
}

Graph generate(const GenSpec& spec) {
  return std::visit(
      [&](const auto& m) -> Graph {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ErSpec>) return gen_er(m.n, m.p, spec.seed);
        if constexpr (std::is_same_v<T, BaSpec>) return gen_ba(m.n, m.m_attach, spec.seed);
        if constexpr (std::is_same_v<T, WsSpec>) return gen_ws(m.n, m.k, m.beta, spec.seed);
      },
      spec.model);
}

std::string describe(const GenSpec& spec) {
  std::ostringstream out;
  out.precision(17);
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ErSpec>) out << "er(n=" << m.n << ",p=" << m.p;
        if constexpr (std::is_same_v<T, BaSpec>) {
          out << "ba(n=" << m.n << ",m_attach=" << m.m_attach;
        }
        if constexpr (std::is_same_v<T, WsSpec>) {
          out << "ws(n=" << m.n << ",k=" << m.k << ",beta=" << m.beta;
        }
      },
      spec.model);
  out << ",seed=" << spec.seed << ")";
  return out.str();
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
    }
  }
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::invalid_params, "cycle needs n >= 3");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n)});
  }
  return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(i + 1)});
  }
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.push_back({0, static_cast<NodeId>(i)});
  return Graph::from_edges(leaves + 1, edges);
}

Graph star_with_chord(std::size_t leaves) {
  if (leaves < 2) throw Error(ErrorCode::invalid_params, "chord needs two leaves");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.push_back({0, static_cast<NodeId>(i)});
  edges.push_back({1, 2});
  return Graph::from_edges(leaves + 1, edges);
}

Graph hypercube_graph(int dim) {
  if (dim < 1 || dim > 20) throw Error(ErrorCode::invalid_params, "hypercube dim in [1, 20]");
  const std::size_t n = std::size_t{1} << dim;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (int b = 0; b < dim; ++b) {
      const std::size_t j = i ^ (std::size_t{1} << b);
      if (j > i) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace nbcrw
