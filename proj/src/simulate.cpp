#include "nbcrw/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nbcrw/error.hpp"
#include "nbcrw/parallel.hpp"
#include "nbcrw/random.hpp"

namespace nbcrw {

std::string_view to_string(SimMode mode) noexcept {
  return mode == SimMode::stationary ? "stationary" : "hitting";
}

namespace {

// Row-wise cumulative distribution over the support of P.
class Sampler {
 public:
  explicit Sampler(const Matrix& p) {
    const Index n = p.rows();
    offsets_.push_back(0);
    for (Index i = 0; i < n; ++i) {
      double acc = 0.0;
      for (Index j = 0; j < n; ++j) {
        if (p(i, j) > 0.0) {
          acc += p(i, j);
          cols_.push_back(static_cast<NodeId>(j));
          cum_.push_back(acc);
        }
      }
      if (cum_.size() == offsets_.back()) {
        throw Error(ErrorCode::invalid_params, "transition row without support");
      }
      cum_.back() = 1.0;
      offsets_.push_back(cum_.size());
    }
  }

  NodeId step(NodeId i, Rng& rng) const {
    const double u = uniform01(rng);
    const auto lo = cum_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
    const auto hi = cum_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
    const auto it = std::upper_bound(lo, hi, u);
    return cols_[static_cast<std::size_t>(it - cum_.begin())];
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> cols_;
  std::vector<double> cum_;
};

void validate_chain(const TransitionMatrix& p) {
  if (p.p.rows() == 0 || p.p.rows() != p.p.cols()) {
    throw Error(ErrorCode::invalid_params, "transition matrix must be square and non-empty");
  }
}

}  // namespace

SimResult simulate_stationary(const TransitionMatrix& p, const SimConfig& cfg) {
  validate_chain(p);
  if (cfg.max_steps < 1) throw Error(ErrorCode::invalid_params, "no samples: max_steps is 0");
  if (cfg.burn_in < 0) throw Error(ErrorCode::invalid_params, "burn_in must be >= 0");
  const Sampler sampler(p.p);
  const Index n = p.p.rows();
  Rng rng = make_stream(cfg.seed, 0);

  NodeId at = 0;
  for (std::int64_t s = 0; s < cfg.burn_in; ++s) at = sampler.step(at, rng);

  const auto batches = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(cfg.max_steps)))));
  Vector total = Vector::Zero(n);
  Vector sum_f = Vector::Zero(n);
  Vector sum_f2 = Vector::Zero(n);
  Vector counts(n);
  for (std::int64_t b = 0; b < batches; ++b) {
    const std::int64_t lo = b * cfg.max_steps / batches;
    const std::int64_t hi = (b + 1) * cfg.max_steps / batches;
    counts.setZero();
    for (std::int64_t s = lo; s < hi; ++s) {
      at = sampler.step(at, rng);
      counts(at) += 1.0;
    }
    total += counts;
    const Vector f = counts / static_cast<double>(hi - lo);
    sum_f += f;
    sum_f2 += f.cwiseProduct(f);
  }

  SimResult r;
  r.mode = SimMode::stationary;
  r.estimate = total / static_cast<double>(cfg.max_steps);
  r.std_error = Vector::Zero(n);
  if (batches > 1) {
    const double nb = static_cast<double>(batches);
    const Vector mean = sum_f / nb;
    const Vector var = ((sum_f2 - nb * mean.cwiseProduct(mean)) / (nb - 1.0)).cwiseMax(0.0);
    r.std_error = (var / nb).cwiseSqrt();
  }
  r.samples = cfg.max_steps;
  r.batches = batches;
  r.rng_algorithm = kRngAlgorithm;
  r.rng_version = kRngVersion;
  return r;
}

SimResult simulate_hitting(const TransitionMatrix& p, NodeId source, NodeId target,
                           const SimConfig& cfg) {
  validate_chain(p);
  const Index n = p.p.rows();
  if (source < 0 || target < 0 || source >= n || target >= n) {
    throw Error(ErrorCode::invalid_params, "source or target out of range");
  }
  if (source == target) throw Error(ErrorCode::invalid_params, "source equals target");
  if (cfg.trials < 1 || cfg.max_steps < 1) {
    throw Error(ErrorCode::invalid_params, "trials and max_steps must be >= 1");
  }
  const Sampler sampler(p.p);
  std::vector<std::int64_t> steps(static_cast<std::size_t>(cfg.trials));
  parallel_for(steps.size(), cfg.threads, [&](std::size_t k) {
    Rng rng = make_stream(cfg.seed, k);
    NodeId at = source;
    std::int64_t s = 0;
    while (at != target && s < cfg.max_steps) {
      at = sampler.step(at, rng);
      ++s;
    }
    // -1 marks a truncated trial.
    steps[k] = at == target ? s : -1;
  });

  double sum = 0.0, sum2 = 0.0;
  std::int64_t ok = 0, truncated = 0;
  for (const std::int64_t s : steps) {
    if (s < 0) {
      ++truncated;
      continue;
    }
    const double v = static_cast<double>(s);
    sum += v;
    sum2 += v * v;
    ++ok;
  }

  SimResult r;
  r.mode = SimMode::hitting;
  r.samples = cfg.trials;
  r.truncated = truncated;
  r.truncated_fraction = static_cast<double>(truncated) / static_cast<double>(cfg.trials);
  const double mean = ok > 0 ? sum / static_cast<double>(ok) : 0.0;
  double se = 0.0;
  if (ok > 1) {
    const double okd = static_cast<double>(ok);
    const double var = std::max(0.0, (sum2 - okd * mean * mean) / (okd - 1.0));
    se = std::sqrt(var / okd);
  }
  r.estimate = Vector::Constant(1, mean);
  r.std_error = Vector::Constant(1, se);
  r.capped_mean = (sum + static_cast<double>(truncated) * static_cast<double>(cfg.max_steps)) /
                  static_cast<double>(cfg.trials);
  if (ok > 0 && r.truncated_fraction <= kMaxTruncatedFraction) r.point_estimate = mean;
  r.rng_algorithm = kRngAlgorithm;
  r.rng_version = kRngVersion;
  return r;
}

}  // namespace nbcrw
