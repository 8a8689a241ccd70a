#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dpcp/emission.hpp"
#include "dpcp/random.hpp"
#include "dpcp/sequence.hpp"

namespace dpcp {

/// Concentration β with its half-normal prior and log-scale proposal step.
struct BetaState {
  double value = 1.0;
  double prior_variance = 1000.0;  // σ_β²
  double step = 0.3;               // random-walk scale on log β
};

/// Iteration schedule shared by all samplers.
struct ChainConfig {
  std::size_t iterations = 130000;
  std::size_t burn_in = 80000;
  std::size_t thin = 10;
  std::uint64_t seed = 1;
  std::size_t init_segments = 10;  // K0
  double beta_init = 1.0;
  double beta_prior_variance = 1000.0;
  double beta_step = 0.3;
  bool adapt_beta_step = true;  // during burn-in only
  double target_acceptance = 0.3;
  bool record_k_trace = false;

  void validate() const;  // throws ConfigError
  std::size_t draw_count() const { return (iterations - burn_in) / thin; }
};

struct PosteriorDraw {
  std::size_t iteration = 0;
  StateSequence seq;
  std::vector<RegimeParams> thetas;
  double beta = 0.0;
  double log_posterior = 0.0;

  std::size_t regime_count() const { return thetas.size(); }
  bool operator==(const PosteriorDraw&) const = default;
};

struct ChainResult {
  std::vector<PosteriorDraw> draws;
  double beta_acceptance = 0.0;  // post burn-in
  double beta_step = 0.0;        // after adaptation
  std::vector<std::size_t> k_trace;  // K after every iteration, if requested
};

/// One random-walk Metropolis step on log x; the Jacobian of the log
/// transform enters the acceptance ratio. Returns true on acceptance.
template <typename LogTarget>
bool log_scale_metropolis(double& x, double step, LogTarget&& log_target, RandomStream& rng) {
  const double proposal = x * std::exp(step * rng.normal());
  const double log_ratio = log_target(proposal) - log_target(x) + std::log(proposal) - std::log(x);
  if (std::log(rng.uniform()) < log_ratio) {
    x = proposal;
    return true;
  }
  return false;
}

/// Batch-wise step tuning used during burn-in: nudges log(step) toward the
/// target acceptance with a shrinking increment.
class StepTuner {
 public:
  StepTuner(double target, std::size_t batch = 50) : target_(target), batch_(batch) {}
  void record(bool accepted, double& step);

 private:
  double target_;
  std::size_t batch_;
  std::size_t in_batch_ = 0;
  std::size_t accepted_ = 0;
  std::size_t batches_ = 0;
};

/// K0 near-equal contiguous segments (K0 truncated to T).
StateSequence equal_segments(std::size_t length, std::size_t segments);

}  // namespace dpcp
