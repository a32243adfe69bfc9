#pragma once

#include <optional>
#include <string_view>

#include "nbcrw/dense.hpp"
#include "nbcrw/graph.hpp"
#include "nbcrw/walks.hpp"

namespace nbcrw {

enum class HittingMethod { spectral, linear_solve };

std::string_view to_string(HittingMethod method) noexcept;

/// Pairwise hitting times T_ij (row = source, column = target) with the
/// partial means T_j and global mean <T> aggregated from them.
///
/// Spectral reports also carry the partial and global means evaluated by
/// their own closed expressions (`*_direct`); the gap between the two routes
/// is an internal consistency check.
struct HittingReport {
  WalkKind kind = WalkKind::turw;
  HittingMethod method = HittingMethod::linear_solve;
  Matrix t;
  Vector t_partial;
  double t_global = 0.0;
  std::optional<Vector> t_partial_direct;
  std::optional<double> t_global_direct;

  /// Largest relative gap between aggregated and direct means (0 without
  /// direct values).
  double consistency_gap() const;
};

/// Fills `t_partial` and `t_global` from `t`.
void aggregate(HittingReport& report);

/// One absorbing system (I - P_{-j}) t = 1 per target, LU with partial
/// pivoting. Targets are independent and split across `threads`.
HittingReport hitting_linear(const TransitionMatrix& p, int threads = 1);

HittingReport hitting_spectral_turw(const Graph& g, double tol = kDefaultTol);
HittingReport hitting_spectral_merw(const Graph& g, double tol = kDefaultTol);

/// Prefactor on the pairwise weighted-Laplacian sum. `half` reproduces the
/// printed form of the weighted pairwise expression, which disagrees with
/// the partial/global means and with the linear solve by a factor of 2.
enum class PairwisePrefactor { unit, half };

/// Hitting times of the ordinary random walk on a weighted graph.
HittingReport hitting_spectral_weighted(
    const WeightedGraph& w, WalkKind kind, double tol = kDefaultTol,
    PairwisePrefactor prefactor = PairwisePrefactor::unit);

struct NbcrwHittingOptions {
  NbcrwOptions walk;
  PairwisePrefactor prefactor = PairwisePrefactor::unit;
};

HittingReport hitting_spectral_nbcrw(const Graph& g,
                                     const NbcrwHittingOptions& opts = {});

HittingReport hitting_spectral(WalkKind kind, const Graph& g,
                               const NbcrwOptions& opts = {});

/// Max-degree node; ties go to the smallest label.
NodeId hub_node(const Graph& g);

struct HubReport {
  NodeId hub = 0;
  long long hub_label = 0;
  double t_hub = 0.0;
};

HubReport hub_report(const Graph& g, WalkKind kind,
                     const NbcrwOptions& opts = {});
HubReport hub_report(const Graph& g, const HittingReport& report);

/// max_ij |a_ij - b_ij|
double max_abs_gap(const Matrix& a, const Matrix& b);

/// Kemeny-style row spread: max_i K_i - min_i K_i for K_i = sum_j pi_j T_ij.
double kemeny_spread(const Vector& pi, const Matrix& t);

}  // namespace nbcrw
