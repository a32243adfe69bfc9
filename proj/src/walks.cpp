#include "nbcrw/walks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "nbcrw/error.hpp"
#include "nbcrw/spectral.hpp"

namespace nbcrw {

std::string_view to_string(WalkKind kind) noexcept {
  switch (kind) {
    case WalkKind::turw: return "turw";
    case WalkKind::merw: return "merw";
    case WalkKind::nbcrw: return "nbcrw";
  }
  return "unknown";
}

WalkKind parse_walk_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const WalkKind k : kAllWalks) {
    if (lower == to_string(k)) return k;
  }
  throw Error(ErrorCode::invalid_params, "unknown walk '" + std::string(name) + "'");
}

std::string_view to_string(StationaryMethod method) noexcept {
  switch (method) {
    case StationaryMethod::closed_form: return "closed_form";
    case StationaryMethod::power: return "power";
    case StationaryMethod::linear_solve: return "linear_solve";
  }
  return "unknown";
}

namespace {

void require_connected(const Graph& g) {
  if (g.node_count() == 0) throw Error(ErrorCode::invalid_params, "empty graph");
  if (!validate(g).connected) {
    throw Error(ErrorCode::not_connected, "graph is not connected");
  }
}

// p_ij = a_ij w_j / sum_k a_ik w_k.
TransitionMatrix biased_transition(const Graph& g, WalkKind kind, const Vector& w) {
  const auto n = static_cast<Index>(g.node_count());
  Vector denom;
  g.multiply_adjacency(w, denom);
  const double eps = 1e-12 * denom.cwiseAbs().maxCoeff();
  TransitionMatrix t{kind, Matrix::Zero(n, n), g.fingerprint()};
  for (Index i = 0; i < n; ++i) {
    if (!(denom(i) > eps)) {
      throw ZeroDenominatorError(g.label(static_cast<NodeId>(i)), denom(i));
    }
    for (const NodeId j : g.neighbors(static_cast<NodeId>(i))) {
      t.p(i, j) = w(j) / denom(i);
    }
  }
  return t;
}

Vector regularized(const Vector& x, std::optional<double> delta) {
  if (!delta) return x;
  if (!(*delta >= 0.0) || !std::isfinite(*delta)) {
    throw Error(ErrorCode::invalid_params, "regularization must be a finite value >= 0");
  }
  return x.array() + *delta;
}

}  // namespace

PerronVector adjacency_perron(const Graph& g, double tol) {
  require_connected(g);
  (void)tol;
  const auto eig = sym_eig(g.adjacency());
  const Index last = eig.eigenvalues.size() - 1;
  PerronVector out{eig.eigenvalues(last), eig.eigenvectors.col(last)};
  if (out.psi.sum() < 0.0) out.psi = -out.psi;
  // Entries are positive in exact arithmetic; clamp rounding noise.
  out.psi = out.psi.cwiseMax(0.0);
  out.psi.normalize();
  return out;
}

TransitionMatrix turw_transition(const Graph& g) {
  const auto n = static_cast<Index>(g.node_count());
  TransitionMatrix t{WalkKind::turw, Matrix::Zero(n, n), g.fingerprint()};
  for (Index i = 0; i < n; ++i) {
    const int d = g.degree(static_cast<NodeId>(i));
    if (d == 0) {
      throw Error(ErrorCode::not_connected,
                  "isolated node " + std::to_string(g.label(static_cast<NodeId>(i))));
    }
    for (const NodeId j : g.neighbors(static_cast<NodeId>(i))) t.p(i, j) = 1.0 / d;
  }
  return t;
}

TransitionMatrix merw_transition(const Graph& g, double tol) {
  // Normalising by (A psi)_i rather than lambda psi_i keeps rows stochastic
  // to rounding even where psi is tiny.
  return biased_transition(g, WalkKind::merw, adjacency_perron(g, tol).psi);
}

TransitionMatrix nbcrw_transition(const Graph& g, const NbcrwOptions& opts) {
  const auto c = nb_centrality(g, {opts.tol, 0});
  return nbcrw_transition(g, c.x, opts.regularize);
}

TransitionMatrix nbcrw_transition(const Graph& g, const Vector& x,
                                  std::optional<double> regularize) {
  if (static_cast<std::size_t>(x.size()) != g.node_count()) {
    throw Error(ErrorCode::invalid_params, "centrality length does not match node count");
  }
  return biased_transition(g, WalkKind::nbcrw, regularized(x, regularize));
}

TransitionMatrix transition(WalkKind kind, const Graph& g, const NbcrwOptions& opts) {
  switch (kind) {
    case WalkKind::turw: return turw_transition(g);
    case WalkKind::merw: return merw_transition(g, opts.tol);
    case WalkKind::nbcrw: return nbcrw_transition(g, opts);
  }
  throw Error(ErrorCode::invalid_params, "unknown walk");
}

StationaryDistribution nbcrw_stationary(const Graph& g, const NbCentrality& c) {
  const Vector d = g.degree_vector();
  const double k = c.kappa;
  Vector pi = ((k * k - 1.0) / k + d.array() / k) * c.x.array().square();
  const double q = pi.sum();
  if (!(q > 0.0)) {
    throw Error(ErrorCode::convergence_failure, "vanishing stationary normalisation");
  }
  return {WalkKind::nbcrw, pi / q, StationaryMethod::closed_form};
}

StationaryDistribution stationary_closed(WalkKind kind, const Graph& g,
                                         const NbcrwOptions& opts) {
  switch (kind) {
    case WalkKind::turw: {
      turw_transition(g);  // isolated-node gate
      return {kind, g.degree_vector() / (2.0 * static_cast<double>(g.edge_count())),
              StationaryMethod::closed_form};
    }
    case WalkKind::merw: {
      const auto perron = adjacency_perron(g, opts.tol);
      return {kind, perron.psi.array().square(), StationaryMethod::closed_form};
    }
    case WalkKind::nbcrw: {
      const auto c = nb_centrality(g, {opts.tol, 0});
      if (!opts.regularize) {
        nbcrw_transition(g, c.x);  // zero-denominator gate
        return nbcrw_stationary(g, c);
      }
      const auto w = weighted_from_centrality(g, regularized(c.x, opts.regularize));
      return {kind, w.strengths / w.total_strength, StationaryMethod::closed_form};
    }
  }
  throw Error(ErrorCode::invalid_params, "unknown walk");
}

StationaryDistribution stationary_generic(const TransitionMatrix& p) {
  const Index n = p.p.rows();
  if (n == 0 || p.p.cols() != n) {
    throw Error(ErrorCode::invalid_params, "transition matrix must be square and non-empty");
  }
  // (P^T - I) pi = 0 has rank n - 1 for an irreducible chain; the last
  // equation is replaced by the normalisation.
  Matrix sys = p.p.transpose() - Matrix::Identity(n, n);
  sys.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::FullPivLU<Matrix> lu(sys);
  if (lu.rank() < n) {
    throw Error(ErrorCode::not_connected,
                "stationary system is singular: the chain is reducible");
  }
  Vector pi = lu.solve(rhs);
  return {p.kind, pi, StationaryMethod::linear_solve};
}

StationaryDistribution stationary_power(const TransitionMatrix& p, double tol,
                                        int max_iter) {
  const Index n = p.p.rows();
  if (n == 0) throw Error(ErrorCode::invalid_params, "empty transition matrix");
  Vector pi = Vector::Constant(n, 1.0 / static_cast<double>(n));
  const Matrix pt = p.p.transpose();
  for (int it = 0; it < max_iter; ++it) {
    // Lazy step: same fixed point, no oscillation on bipartite graphs.
    Vector next = 0.5 * (pi + pt * pi);
    next /= next.sum();
    const double delta = (next - pi).lpNorm<Eigen::Infinity>();
    pi = std::move(next);
    if (delta <= tol) return {p.kind, pi, StationaryMethod::power};
  }
  throw Error(ErrorCode::convergence_failure, "stationary power iteration did not converge");
}

double detailed_balance_residual(const Vector& pi, const Matrix& p) {
  const Matrix flow = pi.asDiagonal() * p;
  return (flow - flow.transpose()).cwiseAbs().maxCoeff();
}

double row_stochastic_residual(const Matrix& p) {
  return (p.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

double stationarity_residual(const Vector& pi, const Matrix& p) {
  return (p.transpose() * pi - pi).lpNorm<Eigen::Infinity>();
}

double ipr(const Vector& pi) { return pi.squaredNorm(); }

}  // namespace nbcrw
