#include "dpcp/ko.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dpcp/errors.hpp"
#include "dpcp/numeric.hpp"

namespace dpcp {

namespace {

double ko_log_density_from_lengths(const std::vector<Segment>& segs, double alpha, double beta) {
  const double per_regime = log_gamma(alpha + beta) - log_gamma(alpha);
  double acc = static_cast<double>(segs.size()) * (std::log(beta) + per_regime);
  for (const auto& s : segs) {
    const double n = static_cast<double>(s.self_transitions());
    acc += log_gamma(n + alpha) - log_gamma(n + 1.0 + alpha + beta);
  }
  return acc;
}

}  // namespace

void KoConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive");
}

double ko_transition_logprob(int i, int k, std::size_t n_prefix, double alpha, double beta) {
  const double n = static_cast<double>(n_prefix);
  if (i == k) return std::log((n + alpha) / (n + alpha + beta));
  if (i == k + 1) return std::log(beta / (n + alpha + beta));
  throw InvalidTransition("from regime " + std::to_string(k) + " the next label must be " + std::to_string(k) +
                          " or " + std::to_string(k + 1) + ", got " + std::to_string(i));
}

double ko_joint_log_density(const StateSequence& seq, double alpha, double beta) {
  const double per_regime = log_gamma(alpha + beta) - log_gamma(alpha);
  const std::size_t K = seq.regime_count();
  double acc = static_cast<double>(K) * (std::log(beta) + per_regime);
  for (std::size_t k = 1; k <= K; ++k) {
    const double n = static_cast<double>(seq.self_transitions(k));
    acc += log_gamma(n + alpha) - log_gamma(n + 1.0 + alpha + beta);
  }
  return acc;
}

KoStepWeights ko_step_weights(std::size_t n_prefix, std::size_t n_future, double alpha, double beta) {
  const double np = static_cast<double>(n_prefix);
  const double nf = static_cast<double>(n_future);
  return {std::log((nf + alpha) / (nf + beta + alpha)), std::log(beta / (np + 1.0 + beta + alpha))};
}

void ko_allocation_sweep(ChainState& state, const KoConfig& ko, RandomStream& rng) {
  const std::vector<Segment> old = state.segments();
  const auto& fam = state.family();
  const auto& y = state.data().values;
  const std::size_t T = state.length();
  const double beta = state.beta().value;

  // Self-transitions of old label k at times u..T-1 (u >= 1).
  auto old_future = [&](std::size_t k, std::size_t u) -> std::size_t {
    if (k >= old.size()) return 0;
    const std::size_t from = std::max(old[k].first, u);
    return old[k].last > from ? old[k].last - from : 0;
  };

  std::vector<Segment> segs{Segment{1, 1, old[0].theta}};
  std::vector<double> w(2);
  for (std::size_t t = 1; t < T; ++t) {
    // choose s_{t+1} given s_t = k (0-based index segs.size()-1)
    const std::size_t k = segs.size() - 1;
    const std::size_t run_start = segs.back().first;
    const std::size_t n_prefix = t - 1 > run_start ? t - 1 - run_start : 0;
    const KoStepWeights sw = ko_step_weights(n_prefix, old_future(k, t + 1), ko.alpha, beta);
    const double y_next = y[t];
    w[0] = sw.log_stay + fam.log_density(segs.back().theta, t + 1, y_next);
    const bool can_jump = k + 1 < old.size();
    w[1] = can_jump ? sw.log_jump + fam.log_density(old[k + 1].theta, t + 1, y_next)
                    : -std::numeric_limits<double>::infinity();
    if (can_jump && sample_log_categorical(w, rng) == 1) {
      segs.push_back(Segment{t + 1, t + 1, old[k + 1].theta});
    } else {
      segs.back().last = t + 1;
    }
  }
  state.mutable_segments() = std::move(segs);
}

ChainResult ko_run_chain(const TimeSeries& data, const EmissionFamily& family, const ChainConfig& cfg,
                         const KoConfig& ko) {
  cfg.validate();
  ko.validate();
  RandomStream rng(cfg.seed);
  BetaState beta{cfg.beta_init, cfg.beta_prior_variance, cfg.beta_step};
  ChainState state = ChainState::initial(data, family, cfg.init_segments, beta, rng);

  auto log_posterior = [&](const ChainState& s) {
    double lp = s.log_likelihood() + ko_log_density_from_lengths(s.segments(), ko.alpha, s.beta().value) +
                half_normal_log_density(s.beta().value, s.beta().prior_variance);
    for (const auto& seg : s.segments()) lp += family.log_prior(seg.theta);
    return lp;
  };

  ChainResult result;
  result.draws.reserve(cfg.draw_count());
  if (cfg.record_k_trace) result.k_trace.reserve(cfg.iterations);
  StepTuner tuner(cfg.target_acceptance);
  std::size_t accepted = 0;
  for (std::size_t m = 1; m <= cfg.iterations; ++m) {
    ko_allocation_sweep(state, ko, rng);
    update_thetas(state, rng);
    BetaState& b = state.beta();
    const bool acc = log_scale_metropolis(
        b.value, b.step,
        [&](double v) {
          return ko_log_density_from_lengths(state.segments(), ko.alpha, v) + half_normal_log_density(v, b.prior_variance);
        },
        rng);
    if (m <= cfg.burn_in) {
      if (cfg.adapt_beta_step) tuner.record(acc, b.step);
    } else {
      if (acc) ++accepted;
      if ((m - cfg.burn_in) % cfg.thin == 0) {
        result.draws.push_back(PosteriorDraw{m, state.sequence(), state.thetas(), b.value, log_posterior(state)});
      }
    }
    if (cfg.record_k_trace) result.k_trace.push_back(state.regime_count());
  }
  result.beta_acceptance = static_cast<double>(accepted) / static_cast<double>(cfg.iterations - cfg.burn_in);
  result.beta_step = state.beta().step;
  return result;
}

}  // namespace dpcp
