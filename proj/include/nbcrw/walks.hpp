#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "nbcrw/dense.hpp"
#include "nbcrw/graph.hpp"
#include "nbcrw/nb_centrality.hpp"

namespace nbcrw {

enum class WalkKind { turw, merw, nbcrw };

inline constexpr WalkKind kAllWalks[] = {WalkKind::turw, WalkKind::merw,
                                         WalkKind::nbcrw};

std::string_view to_string(WalkKind kind) noexcept;
/// Accepts "turw", "merw", "nbcrw" (case-insensitive); throws
/// `invalid_params` otherwise.
WalkKind parse_walk_kind(std::string_view name);

struct TransitionMatrix {
  WalkKind kind = WalkKind::turw;
  Matrix p;
  std::uint64_t graph_fingerprint = 0;
};

enum class StationaryMethod { closed_form, power, linear_solve };

std::string_view to_string(StationaryMethod method) noexcept;

struct StationaryDistribution {
  WalkKind kind = WalkKind::turw;
  Vector pi;
  StationaryMethod method = StationaryMethod::closed_form;
};

/// Leading adjacency eigenpair (eigenvector centrality), entrywise positive.
struct PerronVector {
  double lambda = 0.0;
  Vector psi;
};

PerronVector adjacency_perron(const Graph& g, double tol = kDefaultTol);

struct NbcrwOptions {
  double tol = kDefaultTol;
  /// Non-standard: replaces x by x + delta before weighting.
  std::optional<double> regularize;
};

TransitionMatrix turw_transition(const Graph& g);
TransitionMatrix merw_transition(const Graph& g, double tol = kDefaultTol);
TransitionMatrix nbcrw_transition(const Graph& g, const NbcrwOptions& opts = {});
/// Builds the NBCRW matrix from a given centrality vector; used directly by
/// the scale-invariance checks.
TransitionMatrix nbcrw_transition(const Graph& g, const Vector& x,
                                  std::optional<double> regularize = {});
TransitionMatrix transition(WalkKind kind, const Graph& g,
                            const NbcrwOptions& opts = {});

StationaryDistribution stationary_closed(WalkKind kind, const Graph& g,
                                         const NbcrwOptions& opts = {});
/// Closed form for NBCRW from an already computed centrality.
StationaryDistribution nbcrw_stationary(const Graph& g, const NbCentrality& c);

/// Solves pi (P - I) = 0 with sum(pi) = 1 by LU; throws `not_connected` when
/// the system is singular beyond the expected rank deficiency.
StationaryDistribution stationary_generic(const TransitionMatrix& p);

/// Power iteration pi <- pi P; throws `convergence_failure`.
StationaryDistribution stationary_power(const TransitionMatrix& p,
                                        double tol = 1e-13,
                                        int max_iter = 1000000);

/// max_{i,j} |pi_i p_ij - pi_j p_ji|
double detailed_balance_residual(const Vector& pi, const Matrix& p);

/// max_i |sum_j p_ij - 1|
double row_stochastic_residual(const Matrix& p);

/// |pi P - pi|_inf
double stationarity_residual(const Vector& pi, const Matrix& p);

/// Inverse participation ratio sum_i pi_i^2.
double ipr(const Vector& pi);

}  // namespace nbcrw
