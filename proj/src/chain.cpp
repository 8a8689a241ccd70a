#include "dpcp/chain.hpp"

#include <algorithm>
#include <string>

#include "dpcp/errors.hpp"

namespace dpcp {

void ChainConfig::validate() const {
  if (iterations == 0) throw ConfigError("iterations must be positive");
  if (burn_in >= iterations) throw ConfigError("burn-in must be smaller than the iteration count");
  if (thin == 0) throw ConfigError("thin must be >= 1");
  if (init_segments == 0) throw ConfigError("initial segment count must be >= 1");
  if (!(beta_init > 0.0 && std::isfinite(beta_init))) throw ConfigError("initial beta must be > 0");
  if (!(beta_prior_variance > 0.0 && std::isfinite(beta_prior_variance))) {
    throw ConfigError("beta prior variance must be > 0");
  }
  if (!(beta_step > 0.0)) throw ConfigError("beta proposal step must be > 0");
  if (!(target_acceptance > 0.0 && target_acceptance < 1.0)) {
    throw ConfigError("target acceptance must lie in (0, 1)");
  }
}

void StepTuner::record(bool accepted, double& step) {
  ++in_batch_;
  if (accepted) ++accepted_;
  if (in_batch_ < batch_) return;
  ++batches_;
  const double rate = static_cast<double>(accepted_) / static_cast<double>(in_batch_);
  const double delta = std::min(0.05, 1.0 / std::sqrt(static_cast<double>(batches_)));
  step *= std::exp(rate > target_ ? delta : -delta);
  in_batch_ = 0;
  accepted_ = 0;
}

StateSequence equal_segments(std::size_t length, std::size_t segments) {
  if (length == 0) throw InvalidInput("series is empty");
  const std::size_t k0 = std::clamp<std::size_t>(segments, 1, length);
  std::vector<std::size_t> ends;
  for (std::size_t i = 1; i <= k0; ++i) ends.push_back(i * length / k0);
  return StateSequence::from_change_points(ends, length);
}

}  // namespace dpcp
