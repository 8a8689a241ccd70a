#pragma once

#include <cstddef>

#include "dpcp/chain.hpp"
#include "dpcp/dp_sampler.hpp"
#include "dpcp/emission.hpp"
#include "dpcp/random.hpp"
#include "dpcp/sequence.hpp"
#include "dpcp/series.hpp"

namespace dpcp {

// Replica of the alternative DP change-point dynamics with self-transition
// mass α, and of its allocation sampler, which can merge regimes but never
// create one.

struct KoConfig {
  double alpha = 1.0;

  void validate() const;  // throws ConfigError
};

/// log[(n+α)/(n+α+β)] for i = k, log[β/(n+α+β)] for i = k+1.
double ko_transition_logprob(int i, int k, std::size_t n_prefix, double alpha, double beta);

/// log of β^K Π_i Γ(α+β)/Γ(α) · Γ(n_i+α)/Γ(n_i+1+α+β).
double ko_joint_log_density(const StateSequence& seq, double alpha, double beta);

/// Unnormalized log weights for s_{t+1} given s_t = k in the forward scan.
/// jump = β/(n_prefix+1+β+α) with n_prefix = n_k^{1:(t-1)} of the new
/// allocation; stay = (n_future+α)/(n_future+β+α) with n_future the
/// self-transitions of label k over (t+1):T in the previous allocation.
/// The two come from different conditionals and are not complementary.
struct KoStepWeights {
  double log_stay;
  double log_jump;
};
KoStepWeights ko_step_weights(std::size_t n_prefix, std::size_t n_future, double alpha, double beta);

/// Forward scan t = 2..T drawing s_t from {s_{t-1}, s_{t-1}+1}; the jump is
/// only available while s_{t-1} < K. Labels never reached by s_T are dropped
/// with their parameters, so K can only decrease.
void ko_allocation_sweep(ChainState& state, const KoConfig& ko, RandomStream& rng);

/// θ and β updates follow the allocation sweep; β targets the joint density
/// above times the half-normal prior. Draws and (optionally) the K trace are
/// recorded as for run_chain.
ChainResult ko_run_chain(const TimeSeries& data, const EmissionFamily& family, const ChainConfig& cfg,
                         const KoConfig& ko = {});

}  // namespace dpcp
