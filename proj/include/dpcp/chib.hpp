#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpcp/chain.hpp"
#include "dpcp/emission.hpp"
#include "dpcp/random.hpp"
#include "dpcp/sequence.hpp"
#include "dpcp/series.hpp"

namespace dpcp {

/// Constrained left-to-right transition matrix: regime k stays with
/// probability stay[k-1] and moves to k+1 otherwise; the last regime absorbs.
struct FiniteTransition {
  std::size_t regimes = 1;  // K*
  std::vector<double> stay;  // K*-1 entries in (0, 1)

  void validate() const;  // throws InvalidInput
  double log_stay(std::size_t k) const;   // k is 1-based
  double log_leave(std::size_t k) const;
};

struct FiniteModelConfig {
  std::vector<std::size_t> kstar_grid{4, 5, 6, 7, 8, 9, 10};
  ChainConfig chain;

  void validate() const;  // throws ConfigError
};

/// Normalized forward filter in log space. filtered[t-1][k-1] is
/// log P(s_t = k | y_1..y_t); log_evidence is log P(y_1..y_T) without any
/// constraint on s_T.
struct ForwardPass {
  std::vector<std::vector<double>> filtered;
  double log_evidence = 0.0;
};

ForwardPass forward_filter(std::span<const double> values, const EmissionFamily& family,
                           std::span<const RegimeParams> thetas, const FiniteTransition& trans);

/// Joint draw of s_1..s_T given θ and π, with s_1 = 1 and s_T = K*.
/// Throws InfeasiblePath when no such path has positive probability.
StateSequence ffbs_states(std::span<const double> values, const EmissionFamily& family,
                          std::span<const RegimeParams> thetas, const FiniteTransition& trans, RandomStream& rng);

/// log P(y | s_T = K*, θ, π) = log P(y, s_T = K*) - log P(s_T = K*).
double finite_log_likelihood(std::span<const double> values, const EmissionFamily& family,
                             std::span<const RegimeParams> thetas, const FiniteTransition& trans);

/// π_k ~ Beta(1 + n_k, β + 1) for k < K*.
FiniteTransition update_pi(const StateSequence& seq, double beta, RandomStream& rng);

/// log of Π_k β (1-π_k)^(β-1) times the half-normal prior density.
double finite_beta_log_target(const FiniteTransition& trans, double beta, double prior_variance);

/// One log-scale Metropolis step on β; returns true on acceptance.
bool update_beta_finite(const FiniteTransition& trans, BetaState& beta, RandomStream& rng);

struct FiniteFit {
  std::size_t kstar = 0;
  ChainResult chain;
  std::vector<RegimeParams> mean_thetas;
  FiniteTransition mean_transition;
  double log_likelihood_hat = 0.0;
  std::size_t parameter_count = 0;
  double bic = 0.0;
};

struct FiniteStudy {
  std::vector<FiniteFit> fits;       // grid order, infeasible K* omitted
  std::vector<std::size_t> skipped;  // K* > T
  std::size_t selected = 0;          // index into fits of the BIC minimum

  const FiniteFit& best() const { return fits.at(selected); }
};

/// Gibbs sampler for one K*: FFBS, θ, π, β.
FiniteFit fit_finite_k(const TimeSeries& data, const EmissionFamily& family, std::size_t kstar,
                       const ChainConfig& cfg);

/// Runs every grid point and selects the BIC minimum. `warn` receives a
/// message for each skipped K*.
FiniteStudy fit_finite(const TimeSeries& data, const EmissionFamily& family, const FiniteModelConfig& cfg,
                       const std::function<void(const std::string&)>& warn = {});

}  // namespace dpcp
