#include "nbcrw/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "nbcrw/error.hpp"

namespace nbcrw {

SpectralDecomposition sym_eig(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::invalid_params, "sym_eig needs a square matrix");
  }
  if (m.size() == 0) return {};
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    throw Error(ErrorCode::invalid_params, "sym_eig input is not symmetric");
  }
  // Tridiagonalisation followed by implicit QL; eigenvalues come out sorted.
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::convergence_failure, "symmetric eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

void sign_normalize(Vector& v) {
  Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v(arg) < 0.0) v = -v;
}

}  // namespace

LeadingEigenpair leading_eig(Index dim, const MatVec& apply, const PowerOptions& opts) {
  if (dim <= 0) throw Error(ErrorCode::invalid_params, "leading_eig on an empty matrix");
  const double c = opts.shift.value_or(0.0);
  const int max_iter = opts.max_iter > 0 ? opts.max_iter : static_cast<int>(100 * dim);

  Vector v = opts.start ? *opts.start : Vector::Ones(dim);
  if (v.size() != dim || v.norm() == 0.0) {
    throw Error(ErrorCode::invalid_params, "invalid start vector");
  }
  v.normalize();
  Vector mv(dim);
  apply(v, mv);

  LeadingEigenpair out;
  for (int it = 0;; ++it) {
    const double mu = v.dot(mv);
    const double residual = (mv - mu * v).lpNorm<Eigen::Infinity>();
    out.value = mu;
    out.residual = residual;
    out.iterations = it;
    if (residual <= opts.tol * (1.0 + std::abs(mu))) {
      out.converged = true;
      break;
    }
    if (it >= max_iter) break;
    Vector w = mv + c * v;
    const double norm = w.norm();
    if (norm == 0.0) {
      throw Error(ErrorCode::invalid_params, "power iteration hit the zero vector");
    }
    v = w / norm;
    sign_normalize(v);
    apply(v, mv);
  }
  sign_normalize(v);
  out.vector = std::move(v);
  return out;
}

LeadingEigenpair leading_eig(const Matrix& m, const PowerOptions& opts) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::invalid_params, "leading_eig needs a square matrix");
  }
  if (m.size() > 0 && m.isZero(0.0)) {
    throw Error(ErrorCode::invalid_params, "leading_eig on the zero matrix");
  }
  PowerOptions o = opts;
  if (!o.shift) o.shift = m.cwiseAbs().rowwise().sum().maxCoeff();
  return leading_eig(
      m.rows(), [&m](const Vector& in, Vector& out) { out.noalias() = m * in; }, o);
}

}  // namespace nbcrw
