#pragma once

#include <cstddef>
#include <vector>

#include "nbcrw/dense.hpp"
#include "nbcrw/graph.hpp"

namespace nbcrw {

/// Directed edge i -> j.
struct Arc {
  NodeId from = 0;
  NodeId to = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Explicit 2E x 2E non-backtracking matrix. `arcs[r]` is the directed edge
/// behind row/column r; arcs are ordered lexicographically by (from, to).
struct NbMatrix {
  std::vector<Arc> arcs;
  Matrix b;

  std::size_t arc_index(Arc a) const;
};

/// Leading eigenvalue kappa of the non-backtracking matrix with outgoing (x)
/// and incoming (y) centralities. The stacked vector (x | x / kappa) has
/// unit 2-norm.
struct NbCentrality {
  double kappa = 0.0;
  Vector x;
  Vector y;
  double residual = 0.0;  // |M z - kappa z|_inf on the unshifted M
  int iterations = 0;
  /// True when power iteration stalled and the symmetric refinement took
  /// over (graphs whose leading root is defective, e.g. unicyclic ones).
  bool refined = false;
};

struct NbOptions {
  double tol = kDefaultTol;
  int max_iter = 0;  // 0 selects 100 * 2N
};

NbMatrix build_nb_matrix(const Graph& g);

/// M = [[A, I - D], [I, 0]].
Matrix build_m_matrix(const Graph& g);

/// Requires a connected graph that is not a tree; throws `not_connected`,
/// `tree_graph` or `convergence_failure`.
NbCentrality nb_centrality(const Graph& g, const NbOptions& opts = {});

struct BvsMCheck {
  double kappa_b = 0.0;
  double kappa_m = 0.0;
  double max_gap = 0.0;
};

/// Leading eigenvalue of the explicit B against the reduced M. Throws
/// `invalid_params` when 2E exceeds `max_arcs`.
BvsMCheck verify_b_vs_m(const Graph& g, double tol = kDefaultTol,
                        std::size_t max_arcs = 4000);

/// max_i |kappa y_i - (d_i - 1) x_i|
double incoming_identity_residual(const Graph& g, const NbCentrality& c);

/// |(A - D/kappa + I/kappa) x - kappa x|_inf
double reduced_eigen_residual(const Graph& g, const NbCentrality& c);

}  // namespace nbcrw
