#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nbcrw/dense.hpp"

namespace nbcrw {

using NodeId = std::int32_t;

/// Undirected edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on dense 0-indexed nodes.
///
/// Immutable once built. Neighbour lists are sorted and stored in CSR form;
/// dense matrices are produced on request. Every node carries an external
/// label (by default `index + index_base`) used for all user-facing output.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an arbitrary edge list. Duplicate edges (in either
  /// orientation) collapse to one; the count is kept in
  /// `duplicates_collapsed()`. Self-loops and out-of-range ids throw
  /// `Error(invalid_params)`.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges,
                          std::vector<long long> labels = {});

  std::size_t node_count() const noexcept { return degrees_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Edges sorted lexicographically by (u, v), u < v.
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const NodeId> neighbors(NodeId i) const noexcept;
  int degree(NodeId i) const noexcept { return degrees_[i]; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  int max_degree() const noexcept;

  bool has_edge(NodeId i, NodeId j) const noexcept;

  long long label(NodeId i) const noexcept { return labels_[i]; }
  const std::vector<long long>& labels() const noexcept { return labels_; }
  /// Internal id for an external label, or -1.
  NodeId find_label(long long label) const noexcept;

  std::size_t duplicates_collapsed() const noexcept { return duplicates_; }

  Matrix adjacency() const;
  Vector degree_vector() const;

  /// y = A x without forming A.
  void multiply_adjacency(const Vector& x, Vector& y) const;

  /// FNV-1a over (n, edge list); identifies the source of derived objects.
  std::uint64_t fingerprint() const noexcept;

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<int> degrees_;
  std::vector<long long> labels_;
  std::size_t duplicates_ = 0;
};

/// Edge weights w_ij (symmetric, zero diagonal) with node strengths.
struct WeightedGraph {
  Matrix weights;
  Vector strengths;
  double total_strength = 0.0;

  std::size_t node_count() const noexcept {
    return static_cast<std::size_t>(weights.rows());
  }
};

struct GraphValidation {
  bool connected = false;
  bool is_tree = false;
  int min_degree = 0;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t component_count = 0;
};

enum class Delimiter { whitespace, comma };

struct ParseOptions {
  int index_base = 0;
  Delimiter delimiter = Delimiter::whitespace;
  /// Called once per collapsed duplicate edge.
  std::function<void(std::size_t line, const std::string& message)> on_warning;
};

/// Reads `u v` lines. `#` starts a comment, blank lines are skipped and an
/// optional `%N <count>` header fixes the node count.
Graph parse_edge_list(std::istream& in, const ParseOptions& opts = {});
Graph parse_edge_list(std::string_view text, const ParseOptions& opts = {});

/// Writes the graph in the format accepted by `parse_edge_list`, using node
/// labels, preceded by `# ` comment lines and a `%N` header.
void write_edge_list(std::ostream& out, const Graph& g,
                     std::span<const std::string> comments = {});

GraphValidation validate(const Graph& g);

/// Component id per node, numbered in order of first appearance.
std::vector<int> component_labels(const Graph& g);

/// Largest connected component (ties: the one containing the lowest id),
/// with original labels preserved.
Graph largest_component(const Graph& g);

/// L = D - A.
Matrix laplacian(const Graph& g);

/// W = X A X for X = diag(x).
WeightedGraph weighted_from_centrality(const Graph& g, const Vector& x);

/// Wraps an explicit weight matrix; validates symmetry, zero diagonal and
/// nonnegativity.
WeightedGraph make_weighted(Matrix weights);

/// L = S - W.
Matrix weighted_laplacian(const WeightedGraph& w);

}  // namespace nbcrw
