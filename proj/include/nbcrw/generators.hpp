#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "nbcrw/graph.hpp"

namespace nbcrw {

struct ErSpec {
  std::size_t n = 0;
  double p = 0.0;
};

/// Preferential attachment grown from a complete graph on m_attach + 1
/// nodes; every new node links to m_attach distinct existing nodes.
struct BaSpec {
  std::size_t n = 0;
  std::size_t m_attach = 0;
};

/// Ring where each node links to k/2 neighbours per side, each edge rewired
/// with probability beta.
struct WsSpec {
  std::size_t n = 0;
  std::size_t k = 0;
  double beta = 0.0;
};

struct GenSpec {
  std::variant<ErSpec, BaSpec, WsSpec> model;
  std::uint64_t seed = 1;
};

Graph gen_er(std::size_t n, double p, std::uint64_t seed);
Graph gen_ba(std::size_t n, std::size_t m_attach, std::uint64_t seed);
Graph gen_ws(std::size_t n, std::size_t k, double beta, std::uint64_t seed);
Graph generate(const GenSpec& spec);

/// "er(n=...,p=...)"-style description used in provenance headers.
std::string describe(const GenSpec& spec);

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
/// Hub 0 joined to `leaves` leaves.
Graph star_graph(std::size_t leaves);
/// Star with one extra edge between leaves 1 and 2.
Graph star_with_chord(std::size_t leaves);
Graph hypercube_graph(int dim);

}  // namespace nbcrw
