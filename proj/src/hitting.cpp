#include "nbcrw/hitting.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "nbcrw/error.hpp"
#include "nbcrw/parallel.hpp"
#include "nbcrw/spectral.hpp"

namespace nbcrw {

std::string_view to_string(HittingMethod method) noexcept {
  switch (method) {
    case HittingMethod::spectral: return "spectral";
    case HittingMethod::linear_solve: return "linear_solve";
  }
  return "unknown";
}

double HittingReport::consistency_gap() const {
  double gap = 0.0;
  if (t_partial_direct) {
    for (Index j = 0; j < t_partial.size(); ++j) {
      const double ref = (*t_partial_direct)(j);
      gap = std::max(gap, std::abs(t_partial(j) - ref) / (1.0 + std::abs(ref)));
    }
  }
  if (t_global_direct) {
    gap = std::max(gap, std::abs(t_global - *t_global_direct) /
                            (1.0 + std::abs(*t_global_direct)));
  }
  return gap;
}

void aggregate(HittingReport& report) {
  const Index n = report.t.rows();
  if (n < 2) {
    report.t_partial = Vector::Zero(n);
    report.t_global = 0.0;
    return;
  }
  report.t.diagonal().setZero();
  report.t_partial = report.t.colwise().sum().transpose() / static_cast<double>(n - 1);
  report.t_global = report.t_partial.sum() / static_cast<double>(n);
}

HittingReport hitting_linear(const TransitionMatrix& p, int threads) {
  const Index n = p.p.rows();
  if (n < 2 || p.p.cols() != n) {
    throw Error(ErrorCode::invalid_params, "hitting times need a square chain with N >= 2");
  }
  HittingReport report;
  report.kind = p.kind;
  report.method = HittingMethod::linear_solve;
  report.t = Matrix::Zero(n, n);

  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t jj) {
    const auto j = static_cast<Index>(jj);
    // I - P with row and column j deleted.
    Matrix sys(n - 1, n - 1);
    for (Index r = 0, rr = 0; r < n; ++r) {
      if (r == j) continue;
      for (Index c = 0, cc = 0; c < n; ++c) {
        if (c == j) continue;
        sys(rr, cc) = (r == c ? 1.0 : 0.0) - p.p(r, c);
        ++cc;
      }
      ++rr;
    }
    Eigen::PartialPivLU<Matrix> lu(sys);
    if (!(lu.rcond() > 1e-14)) {
      throw Error(ErrorCode::not_connected,
                  "absorbing system is singular: target unreachable");
    }
    const Vector t = lu.solve(Vector::Ones(n - 1));
    for (Index r = 0, rr = 0; r < n; ++r) {
      if (r == j) continue;
      report.t(r, j) = t(rr++);
    }
  });
  aggregate(report);
  return report;
}

namespace {

// Random walk on weights w with strengths s: with G the pseudo-inverse of
// the Laplacian and u = G s,
//   T_ij = s (G_jj - G_ij) + u_i - u_j,
//   T_j  = N/(N-1) (s G_jj - u_j),
//   <T>  = s/(N-1) sum_k 1/theta_k.
HittingReport laplacian_hitting(const Matrix& lap, const Vector& strengths,
                                WalkKind kind, double prefactor) {
  const Index n = lap.rows();
  if (n < 2) throw Error(ErrorCode::invalid_params, "hitting times need N >= 2");
  const auto eig = sym_eig(lap, 1e-9);
  const double scale = std::max(1.0, eig.eigenvalues(n - 1));
  if (eig.eigenvalues(1) <= 1e-10 * scale) {
    throw Error(ErrorCode::not_connected, "Laplacian has a repeated zero eigenvalue");
  }
  const double s = strengths.sum();
  const Matrix& phi = eig.eigenvectors;
  const Vector inv = eig.eigenvalues.tail(n - 1).cwiseInverse();
  const Matrix tail = phi.rightCols(n - 1);
  const Matrix g = tail * inv.asDiagonal() * tail.transpose();
  const Vector u = g * strengths;

  HittingReport report;
  report.kind = kind;
  report.method = HittingMethod::spectral;
  report.t.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      report.t(i, j) = prefactor * (s * (g(j, j) - g(i, j)) + u(i) - u(j));
    }
  }
  aggregate(report);
  const double nn = static_cast<double>(n);
  report.t_partial_direct = (nn / (nn - 1.0)) * (s * g.diagonal() - u);
  report.t_global_direct = s / (nn - 1.0) * inv.sum();
  return report;
}

}  // namespace

HittingReport hitting_spectral_turw(const Graph& g, double tol) {
  (void)tol;
  if (!validate(g).connected) throw Error(ErrorCode::not_connected, "graph is not connected");
  return laplacian_hitting(laplacian(g), g.degree_vector(), WalkKind::turw, 1.0);
}

HittingReport hitting_spectral_merw(const Graph& g, double tol) {
  (void)tol;
  if (!validate(g).connected) throw Error(ErrorCode::not_connected, "graph is not connected");
  const Index n = static_cast<Index>(g.node_count());
  if (n < 2) throw Error(ErrorCode::invalid_params, "hitting times need N >= 2");
  const auto eig = sym_eig(g.adjacency());
  // Descending order: column 0 is the Perron pair.
  const Vector lam = eig.eigenvalues.reverse();
  Matrix psi = eig.eigenvectors.rowwise().reverse();
  if (psi.col(0).sum() < 0.0) psi.col(0) = -psi.col(0);
  const double l1 = lam(0);
  if (!(l1 - lam(1) > 1e-10 * std::max(1.0, l1))) {
    throw Error(ErrorCode::not_connected, "adjacency leading eigenvalue is not simple");
  }
  const Vector p1 = psi.col(0);
  if (!(p1.minCoeff() > 0.0)) {
    throw Error(ErrorCode::convergence_failure, "Perron vector is not strictly positive");
  }
  const Vector c = (l1 / (l1 - lam.tail(n - 1).array())).matrix();
  const Matrix tail = psi.rightCols(n - 1);
  // F = sum_{k>=2} c_k psi_k psi_k^T
  const Matrix f = tail * c.asDiagonal() * tail.transpose();
  const Vector r = p1.cwiseInverse();
  const Vector fr = f * r;

  HittingReport report;
  report.kind = WalkKind::merw;
  report.method = HittingMethod::spectral;
  report.t.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    const double pj2 = p1(j) * p1(j);
    for (Index i = 0; i < n; ++i) {
      report.t(i, j) = (f(j, j) - p1(j) / p1(i) * f(i, j)) / pj2;
    }
  }
  aggregate(report);
  const double nn = static_cast<double>(n);
  Vector direct(n);
  for (Index j = 0; j < n; ++j) {
    direct(j) = (nn * f(j, j) - p1(j) * fr(j)) / (p1(j) * p1(j) * (nn - 1.0));
  }
  report.t_global_direct = direct.sum() / nn;
  report.t_partial_direct = std::move(direct);
  return report;
}

HittingReport hitting_spectral_weighted(const WeightedGraph& w, WalkKind kind,
                                        double tol, PairwisePrefactor prefactor) {
  (void)tol;
  return laplacian_hitting(weighted_laplacian(w), w.strengths, kind,
                           prefactor == PairwisePrefactor::half ? 0.5 : 1.0);
}

HittingReport hitting_spectral_nbcrw(const Graph& g, const NbcrwHittingOptions& opts) {
  const auto c = nb_centrality(g, {opts.walk.tol, 0});
  // Validates the regularisation and the zero-denominator gate.
  nbcrw_transition(g, c.x, opts.walk.regularize);
  const Vector x = opts.walk.regularize ? Vector(c.x.array() + *opts.walk.regularize) : c.x;
  return hitting_spectral_weighted(weighted_from_centrality(g, x), WalkKind::nbcrw,
                                   opts.walk.tol, opts.prefactor);
}

HittingReport hitting_spectral(WalkKind kind, const Graph& g, const NbcrwOptions& opts) {
  switch (kind) {
    case WalkKind::turw: return hitting_spectral_turw(g, opts.tol);
    case WalkKind::merw: return hitting_spectral_merw(g, opts.tol);
    case WalkKind::nbcrw: return hitting_spectral_nbcrw(g, {opts, PairwisePrefactor::unit});
  }
  throw Error(ErrorCode::invalid_params, "unknown walk");
}

NodeId hub_node(const Graph& g) {
  if (g.node_count() == 0) throw Error(ErrorCode::invalid_params, "empty graph");
  NodeId best = 0;
  for (NodeId i = 1; i < static_cast<NodeId>(g.node_count()); ++i) {
    const int di = g.degree(i);
    const int db = g.degree(best);
    if (di > db || (di == db && g.label(i) < g.label(best))) best = i;
  }
  return best;
}

HubReport hub_report(const Graph& g, const HittingReport& report) {
  const NodeId hub = hub_node(g);
  return {hub, g.label(hub), report.t_partial(hub)};
}

HubReport hub_report(const Graph& g, WalkKind kind, const NbcrwOptions& opts) {
  return hub_report(g, hitting_spectral(kind, g, opts));
}

double max_abs_gap(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::invalid_params, "matrix shapes differ");
  }
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

double kemeny_spread(const Vector& pi, const Matrix& t) {
  const Vector k = t * pi;
  return k.maxCoeff() - k.minCoeff();
}

}  // namespace nbcrw
