#include "nbcrw/nb_centrality.hpp"

#include <algorithm>
#include <cmath>

#include "nbcrw/error.hpp"
#include "nbcrw/spectral.hpp"

namespace nbcrw {

std::size_t NbMatrix::arc_index(Arc a) const {
  const auto it = std::lower_bound(arcs.begin(), arcs.end(), a);
  if (it == arcs.end() || *it != a) {
    throw Error(ErrorCode::invalid_params, "not a directed edge of the graph");
  }
  return static_cast<std::size_t>(it - arcs.begin());
}

NbMatrix build_nb_matrix(const Graph& g) {
  NbMatrix nb;
  nb.arcs.reserve(2 * g.edge_count());
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    for (const NodeId j : g.neighbors(static_cast<NodeId>(i))) {
      nb.arcs.push_back({static_cast<NodeId>(i), j});
    }
  }
  const auto size = static_cast<Index>(nb.arcs.size());
  nb.b = Matrix::Zero(size, size);
  for (Index r = 0; r < size; ++r) {
    const Arc a = nb.arcs[static_cast<std::size_t>(r)];
    for (const NodeId l : g.neighbors(a.to)) {
      if (l == a.from) continue;
      nb.b(r, static_cast<Index>(nb.arc_index({a.to, l}))) = 1.0;
    }
  }
  return nb;
}

Matrix build_m_matrix(const Graph& g) {
  const auto n = static_cast<Index>(g.node_count());
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = g.adjacency();
  m.topRightCorner(n, n).diagonal() = Vector::Ones(n) - g.degree_vector();
  m.bottomLeftCorner(n, n).diagonal().setOnes();
  return m;
}

namespace {

// Largest root of k^2 - k v'Av + v'(D - I)v = 0 for unit v, or NaN when the
// roots are complex. Over all v this is maximised by the centrality vector,
// with maximum kappa.
double quadratic_root(const Graph& g, const Vector& v) {
  Vector av;
  g.multiply_adjacency(v, av);
  const double a = v.dot(av);
  const Vector d = g.degree_vector();
  const double b = (v.array().square() * (d.array() - 1.0)).sum();
  const double disc = a * a - 4.0 * b;
  if (disc < 0.0) return std::nan("");
  return 0.5 * (a + std::sqrt(disc));
}

struct Probe {
  double g = 0.0;   // smallest eigenvalue of H(k) = (k^2 - 1)I + D - kA
  double dg = 0.0;  // its derivative in k
  Vector v;
};

Probe probe(const Matrix& a, const Vector& d, double kappa) {
  Matrix h = -kappa * a;
  h.diagonal() = d.array() + (kappa * kappa - 1.0);
  const auto eig = sym_eig(h, 1e-9);
  Probe p;
  p.g = eig.eigenvalues(0);
  p.v = eig.eigenvectors.col(0);
  if (p.v.sum() < 0.0) p.v = -p.v;
  p.dg = 2.0 * kappa - p.v.dot(a * p.v);
  return p;
}

// Fixed-point iteration k <- root(argmin-eigvec of H(k)). Monotone
// non-decreasing from any start below kappa; used when the power iteration
// on M stalls on a defective leading root.
std::pair<double, Vector> refine_symmetric(const Graph& g, double kappa, Vector x,
                                           double tol) {
  const Matrix a = g.adjacency();
  const Vector d = g.degree_vector();
  for (int it = 0; it < 200; ++it) {
    Probe p = probe(a, d, kappa);
    double next = quadratic_root(g, p.v);
    if (std::isnan(next)) next = kappa;
    const bool done = std::abs(next - kappa) <= tol * (1.0 + kappa);
    kappa = std::max(kappa, next);
    x = std::move(p.v);
    if (done) break;
  }

  // The fixed point only resolves a double root to about sqrt(eps). A simple
  // root is polished by Newton on g; at a tangency g' has a simple zero
  // instead, found by secant steps.
  const double scale = 1.0 + kappa + static_cast<double>(g.max_degree());
  Probe p = probe(a, d, kappa);
  const double start = kappa;
  double k = kappa;
  if (std::abs(p.dg) > 1e-6 * scale) {
    for (int it = 0; it < 20; ++it) {
      const double step = p.g / p.dg;
      k -= step;
      p = probe(a, d, k);
      if (std::abs(step) <= 1e-16 * (1.0 + k)) break;
    }
  } else {
    double ka = k, da = p.dg;
    double kb = k + 1e-6;
    Probe pb = probe(a, d, kb);
    for (int it = 0; it < 50 && pb.dg != da; ++it) {
      const double kc = kb - pb.dg * (kb - ka) / (pb.dg - da);
      ka = kb;
      da = pb.dg;
      kb = kc;
      pb = probe(a, d, kb);
      if (std::abs(kb - ka) <= 1e-16 * (1.0 + kb)) break;
    }
    k = kb;
    p = std::move(pb);
  }
  if (std::isfinite(k) && std::abs(k - start) <= 1e-6 * (1.0 + start) &&
      std::abs(p.g) <= 1e-10 * scale) {
    return {k, std::move(p.v)};
  }
  return {kappa, std::move(x)};
}

}  // namespace

NbCentrality nb_centrality(const Graph& g, const NbOptions& opts) {
  const auto check = validate(g);
  if (!check.connected) {
    throw Error(ErrorCode::not_connected, "graph is not connected");
  }
  if (check.is_tree) {
    throw Error(ErrorCode::tree_graph,
                "graph is a tree: the non-backtracking spectrum is zero");
  }
  const auto n = static_cast<Index>(g.node_count());
  const Vector d = g.degree_vector();

  const MatVec apply_m = [&g, &d, n](const Vector& in, Vector& out) {
    Vector top;
    g.multiply_adjacency(in.head(n), top);
    out.resize(2 * n);
    out.head(n) = top.array() + (1.0 - d.array()) * in.tail(n).array();
    out.tail(n) = in.head(n);
  };

  PowerOptions po;
  po.tol = opts.tol;
  po.max_iter = opts.max_iter > 0 ? opts.max_iter : static_cast<int>(200 * n);
  // The shift makes kappa strictly dominant over -kappa and complex roots of
  // equal modulus; a uniform start is exactly the eigenvector of the root 1.
  po.shift = static_cast<double>(g.max_degree());
  Vector start(2 * n);
  start.head(n) = d;
  start.tail(n).setOnes();
  po.start = start;

  const auto pair = leading_eig(2 * n, apply_m, po);

  NbCentrality out;
  out.iterations = pair.iterations;
  double kappa = pair.value;
  Vector x = pair.vector.head(n);
  if (x.sum() < 0.0) x = -x;

  if (!pair.converged || kappa <= 0.0) {
    out.refined = true;
    double k0 = x.norm() > 0.0 ? quadratic_root(g, x.normalized()) : std::nan("");
    if (std::isnan(k0) || k0 < 1.0) k0 = 1.0;
    auto [k, v] = refine_symmetric(g, k0, x, opts.tol);
    kappa = k;
    x = std::move(v);
  }

  x = x.cwiseMax(0.0);
  Vector z(2 * n);
  z.head(n) = x;
  z.tail(n) = x / kappa;
  const double norm = z.norm();
  if (!(norm > 0.0) || !(kappa > 0.0)) {
    throw Error(ErrorCode::convergence_failure, "non-backtracking centrality vanished");
  }
  z /= norm;

  Vector mz;
  apply_m(z, mz);
  out.kappa = kappa;
  out.x = z.head(n);
  out.y = (d.array() - 1.0) * out.x.array() / kappa;
  out.residual = (mz - kappa * z).lpNorm<Eigen::Infinity>();
  if (out.residual > 100.0 * opts.tol * (1.0 + kappa)) {
    throw Error(ErrorCode::convergence_failure,
                "non-backtracking eigenpair residual " + std::to_string(out.residual));
  }
  return out;
}

BvsMCheck verify_b_vs_m(const Graph& g, double tol, std::size_t max_arcs) {
  if (2 * g.edge_count() > max_arcs) {
    throw Error(ErrorCode::invalid_params,
                "2E = " + std::to_string(2 * g.edge_count()) +
                    " exceeds the explicit non-backtracking matrix cap");
  }
  const auto central = nb_centrality(g, {tol, 0});
  const auto nb = build_nb_matrix(g);
  PowerOptions po;
  po.tol = tol;
  po.max_iter = static_cast<int>(std::max<Index>(1000, 200 * nb.b.rows()));
  const auto pair = leading_eig(nb.b, po);
  if (!pair.converged && pair.residual > 1e-9 * (1.0 + pair.value)) {
    throw Error(ErrorCode::convergence_failure,
                "power iteration on the non-backtracking matrix did not converge");
  }
  return {pair.value, central.kappa, std::abs(pair.value - central.kappa)};
}

double incoming_identity_residual(const Graph& g, const NbCentrality& c) {
  const Vector d = g.degree_vector();
  return (c.kappa * c.y.array() - (d.array() - 1.0) * c.x.array()).abs().maxCoeff();
}

double reduced_eigen_residual(const Graph& g, const NbCentrality& c) {
  Vector ax;
  g.multiply_adjacency(c.x, ax);
  const Vector d = g.degree_vector();
  const Vector lhs = ax.array() - d.array() * c.x.array() / c.kappa + c.x.array() / c.kappa;
  return (lhs - c.kappa * c.x).lpNorm<Eigen::Infinity>();
}

}  // namespace nbcrw
