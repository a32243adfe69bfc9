#pragma once

#include <functional>
#include <optional>

#include "nbcrw/dense.hpp"

namespace nbcrw {

/// Eigenvalues in ascending order; column k of `eigenvectors` pairs with
/// eigenvalue k and the columns are orthonormal.
struct SpectralDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Full decomposition of a symmetric matrix. Throws `invalid_params` when the
/// input is not symmetric within `tol * max(1, |m|_max)` and
/// `convergence_failure` when the solver does not converge.
SpectralDecomposition sym_eig(const Matrix& m, double tol = kDefaultTol);

struct LeadingEigenpair {
  double value = 0.0;
  Vector vector;  // unit 2-norm, largest-magnitude entry positive
  double residual = 0.0;  // |M v - value v|_inf, unshifted
  int iterations = 0;
  bool converged = false;
};

struct PowerOptions {
  double tol = kDefaultTol;
  /// 0 selects 100 * dim.
  int max_iter = 0;
  /// Diagonal shift c: the iteration runs on M + cI. Defaults to the
  /// infinity norm of M for the dense overload and to 0 otherwise.
  std::optional<double> shift;
  std::optional<Vector> start;
};

using MatVec = std::function<void(const Vector& in, Vector& out)>;

/// Power iteration on M + cI. Convergence is declared once
/// |M v - mu v|_inf <= tol * (1 + |mu|) with mu = v'Mv; a non-converged
/// result is returned (not thrown) so callers can judge the residual.
/// Throws `invalid_params` for a zero matrix.
LeadingEigenpair leading_eig(const Matrix& m, const PowerOptions& opts = {});
LeadingEigenpair leading_eig(Index dim, const MatVec& apply,
                             const PowerOptions& opts = {});

}  // namespace nbcrw
