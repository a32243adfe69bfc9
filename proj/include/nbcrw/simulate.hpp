#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "nbcrw/dense.hpp"
#include "nbcrw/graph.hpp"
#include "nbcrw/walks.hpp"

namespace nbcrw {

struct SimConfig {
  std::uint64_t seed = 1;
  std::int64_t trials = 100000;
  std::int64_t max_steps = 1000000;
  std::int64_t burn_in = 1000;
  int threads = 1;
};

enum class SimMode { stationary, hitting };

std::string_view to_string(SimMode mode) noexcept;

struct SimResult {
  SimMode mode = SimMode::stationary;
  /// Stationary: visit frequency per node. Hitting: one entry, the mean
  /// over non-truncated trials.
  Vector estimate;
  Vector std_error;
  std::int64_t samples = 0;  // counted steps or trials
  std::int64_t batches = 0;  // stationary batch-means count
  std::int64_t truncated = 0;
  double truncated_fraction = 0.0;
  /// Hitting only: lower bound on the mean counting truncated trials at the
  /// cap, and the point estimate, withheld when more than 0.1% of trials
  /// were truncated.
  double capped_mean = 0.0;
  std::optional<double> point_estimate;
  std::string rng_algorithm;
  int rng_version = 0;
};

inline constexpr double kMaxTruncatedFraction = 1e-3;

/// One trajectory from node 0: `burn_in` discarded steps, then `max_steps`
/// counted steps split into floor(sqrt(max_steps)) batches for the standard
/// error. Throws `invalid_params` when max_steps is 0.
SimResult simulate_stationary(const TransitionMatrix& p, const SimConfig& cfg);

/// `trials` independent walks from source until target or `max_steps`.
/// Trial k draws from stream k of `seed`, so the result does not depend on
/// `threads`.
SimResult simulate_hitting(const TransitionMatrix& p, NodeId source,
                           NodeId target, const SimConfig& cfg);

}  // namespace nbcrw
