#pragma once

// Oracles mediating every solver/objective interaction: exact values,
// additive uniform noise, stochastic batch estimates of sum-decomposable
// objectives, and the matching gradient strategies. Noise draws depend only
// on (seed, call index), never on the query point, so any run replays
// exactly. An oracle is a sequential resource: one owner per run.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "ldgm/objectives.hpp"
#include "ldgm/random.hpp"

namespace ldgm {

struct NoiseMode {
  enum class Kind { Exact, Additive, StochasticBatch };

  Kind kind = Kind::Exact;
  double delta = 0.0;   // additive: noise amplitude, uniform on [-delta, delta]
  int batch_size = 0;   // stochastic: terms sampled per evaluation

  static NoiseMode exact() { return {}; }

  static NoiseMode additive(double delta) {
    if (!(delta >= 0.0)) throw std::invalid_argument("additive noise: delta must be >= 0");
    return {Kind::Additive, delta, 0};
  }

  static NoiseMode stochastic_batch(int batch) {
    if (batch < 1) throw std::invalid_argument("stochastic batch: size must be >= 1");
    return {Kind::StochasticBatch, 0.0, batch};
  }

  std::string describe() const {
    switch (kind) {
      case Kind::Additive: return "additive delta=" + std::to_string(delta);
      case Kind::StochasticBatch: return "batch B=" + std::to_string(batch_size);
      default: return "exact";
    }
  }
};

class ValueOracle {
 public:
  ValueOracle(ObjectiveInstance base, NoiseMode mode, std::uint64_t seed)
      : base_(std::move(base)), mode_(mode), seed_(seed), rng_(seed) {
    if (mode_.kind == NoiseMode::Kind::StochasticBatch && !base_.has_terms())
      throw std::invalid_argument(
          "stochastic batch oracle requires a sum-decomposable objective");
  }

  /// Noisy evaluation; increments the call counter by exactly one.
  double operator()(const Point& x) {
    base_.check_dim(x);
    ++calls_;
    switch (mode_.kind) {
      case NoiseMode::Kind::Exact:
        return base_.value(x);
      case NoiseMode::Kind::Additive: {
        const double eps = mode_.delta * (2.0 * rng_.uniform01() - 1.0);
        return base_.value(x) + eps;
      }
      case NoiseMode::Kind::StochasticBatch: {
        const int total = base_.term_count;
        if (mode_.batch_size >= total) return base_.value(x);  // full batch
        double s = 0.0;
        for (int j = 0; j < mode_.batch_size; ++j) s += base_.term(rng_.uniform_int(total), x);
        // Rescaled so the expectation equals the exact value.
        return s * (static_cast<double>(total) / mode_.batch_size);
      }
    }
    return 0.0;  // unreachable
  }

  /// Exact objective value, uncounted; used only for reporting.
  double exact(const Point& x) const { return base_.value(x); }

  long long call_count() const { return calls_; }
  const ObjectiveInstance& base() const { return base_; }
  const NoiseMode& mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }

 private:
  ObjectiveInstance base_;
  NoiseMode mode_;
  std::uint64_t seed_;
  Rng rng_;
  long long calls_ = 0;
};

/// Sample mean and unbiased sample variance of repeated evaluations at x.
inline std::pair<double, double> measure_noise_stats(ValueOracle& o, const Point& x, int reps) {
  if (reps < 2) throw std::invalid_argument("measure_noise_stats: reps must be >= 2");
  double mean = 0.0, m2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    const double v = o(x);
    const double d = v - mean;
    mean += d / (r + 1);
    m2 += d * (v - mean);
  }
  return {mean, m2 / (reps - 1)};
}

class GradientOracle {
 public:
  /// Wraps the objective's closed-form gradient.
  static GradientOracle analytic(ObjectiveInstance base) {
    if (!base.has_gradient())
      throw std::invalid_argument("analytic gradient oracle: objective has no gradient");
    GradientOracle g;
    g.strategy_ = Strategy::Analytic;
    g.base_ = std::move(base);
    return g;
  }

  /// Per-coordinate forward differences over a value oracle; each gradient
  /// costs exactly n+1 value calls with fresh noise per call.
  static GradientOracle forward_difference(double a, ValueOracle over) {
    if (!(a > 0.0)) throw std::invalid_argument("forward difference: step must be positive");
    GradientOracle g;
    g.strategy_ = Strategy::ForwardDifference;
    g.fd_step_ = a;
    g.over_.emplace(std::move(over));
    g.base_ = g.over_->base();
    return g;
  }

  /// Analytic gradient of the batch-sampled surrogate; unbiased for the true
  /// gradient. A full-population batch reduces to the analytic gradient.
  static GradientOracle stochastic_batch(ObjectiveInstance base, int batch,
                                         std::uint64_t seed) {
    if (batch < 1) throw std::invalid_argument("stochastic gradient: batch must be >= 1");
    if (!base.has_terms() || !base.term_gradient)
      throw std::invalid_argument(
          "stochastic gradient oracle requires per-term gradients");
    GradientOracle g;
    g.strategy_ = Strategy::StochasticBatch;
    g.batch_ = batch;
    g.seed_ = seed;
    g.rng_.emplace(seed);
    g.base_ = std::move(base);
    return g;
  }

  Point operator()(const Point& x) {
    ++grad_calls_;
    switch (strategy_) {
      case Strategy::Analytic:
        return base_.gradient(x);
      case Strategy::ForwardDifference:
        return forward_difference_gradient([this](const Point& p) { return (*over_)(p); }, x,
                                           fd_step_);
      case Strategy::StochasticBatch: {
        const int total = base_.term_count;
        if (batch_ >= total && base_.has_gradient()) return base_.gradient(x);
        Point g(base_.dimension, 0.0);
        if (batch_ >= total) {
          for (int t = 0; t < total; ++t) add_in_place(g, base_.term_gradient(t, x));
          return g;
        }
        for (int j = 0; j < batch_; ++j)
          add_in_place(g, base_.term_gradient(rng_->uniform_int(total), x));
        return scale(g, static_cast<double>(total) / batch_);
      }
    }
    return {};  // unreachable
  }

  long long gradient_calls() const { return grad_calls_; }
  long long value_calls() const { return over_ ? over_->call_count() : 0; }

  /// Forward differences count underlying value calls; other strategies count
  /// gradient evaluations.
  long long call_count() const {
    return strategy_ == Strategy::ForwardDifference ? value_calls() : grad_calls_;
  }

  const ObjectiveInstance& base() const { return base_; }
  std::uint64_t seed() const { return over_ ? over_->seed() : seed_; }

 private:
  enum class Strategy { Analytic, ForwardDifference, StochasticBatch };

  GradientOracle() = default;

  Strategy strategy_ = Strategy::Analytic;
  ObjectiveInstance base_;
  std::optional<ValueOracle> over_;
  double fd_step_ = 0.0;
  int batch_ = 0;
  std::uint64_t seed_ = 0;
  std::optional<Rng> rng_;
  long long grad_calls_ = 0;
};

}  // namespace ldgm
