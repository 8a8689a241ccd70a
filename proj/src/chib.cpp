#include "dpcp/chib.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dpcp/errors.hpp"
#include "dpcp/numeric.hpp"

namespace dpcp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

void check_inputs(std::span<const double> values, std::span<const RegimeParams> thetas,
                  const FiniteTransition& trans) {
  trans.validate();
  if (values.empty()) throw InvalidInput("empty series");
  if (thetas.size() != trans.regimes) throw InvalidInput("need one parameter vector per regime");
}

}  // namespace

void FiniteTransition::validate() const {
  if (regimes < 1) throw InvalidInput("K* must be at least 1");
  if (stay.size() + 1 != regimes) throw InvalidInput("K*-1 stay probabilities required");
  for (double p : stay) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidInput("stay probabilities must lie in (0, 1)");
  }
}

double FiniteTransition::log_stay(std::size_t k) const { return k >= regimes ? 0.0 : std::log(stay[k - 1]); }

double FiniteTransition::log_leave(std::size_t k) const {
  return k >= regimes ? kNegInf : std::log1p(-stay[k - 1]);
}

void FiniteModelConfig::validate() const {
  chain.validate();
  if (kstar_grid.empty()) throw ConfigError("empty K* grid");
  for (std::size_t i = 0; i < kstar_grid.size(); ++i) {
    if (kstar_grid[i] < 1) throw ConfigError("K* values must be at least 1");
    for (std::size_t j = 0; j < i; ++j) {
      if (kstar_grid[i] == kstar_grid[j]) throw ConfigError("duplicate K* in grid");
    }
  }
}

ForwardPass forward_filter(std::span<const double> values, const EmissionFamily& family,
                           std::span<const RegimeParams> thetas, const FiniteTransition& trans) {
  check_inputs(values, thetas, trans);
  const std::size_t T = values.size();
  const std::size_t K = trans.regimes;
  ForwardPass fp;
  fp.filtered.assign(T, std::vector<double>(K, kNegInf));
  std::vector<double> row(K, kNegInf);
  for (std::size_t t = 1; t <= T; ++t) {
    const double y = values[t - 1];
    for (std::size_t k = 1; k <= K; ++k) {
      double pred;
      if (t == 1) {
        pred = k == 1 ? 0.0 : kNegInf;
      } else {
        const auto& prev = fp.filtered[t - 2];
        pred = prev[k - 1] + trans.log_stay(k);
        if (k > 1) pred = log_add(pred, prev[k - 2] + trans.log_leave(k - 1));
      }
      row[k - 1] = pred == kNegInf ? kNegInf : pred + family.log_density(thetas[k - 1], t, y);
    }
    const double c = log_sum_exp(row);
    if (!std::isfinite(c)) throw NumericError("forward filter lost all mass at t=" + std::to_string(t));
    fp.log_evidence += c;
    for (std::size_t k = 0; k < K; ++k) fp.filtered[t - 1][k] = row[k] - c;
  }
  return fp;
}

StateSequence ffbs_states(std::span<const double> values, const EmissionFamily& family,
                          std::span<const RegimeParams> thetas, const FiniteTransition& trans, RandomStream& rng) {
  if (values.size() < trans.regimes) {
    throw InfeasiblePath("T=" + std::to_string(values.size()) + " cannot visit " + std::to_string(trans.regimes) +
                         " regimes");
  }
  const ForwardPass fp = forward_filter(values, family, thetas, trans);
  const std::size_t T = values.size();
  const std::size_t K = trans.regimes;
  if (fp.filtered[T - 1][K - 1] == kNegInf) throw InfeasiblePath("no path ends in the last regime");

  std::vector<int> labels(T);
  labels[T - 1] = static_cast<int>(K);
  std::vector<double> w(2);
  for (std::size_t t = T - 1; t >= 1; --t) {
    const std::size_t j = static_cast<std::size_t>(labels[t]);
    const auto& f = fp.filtered[t - 1];
    w[0] = f[j - 1] + trans.log_stay(j);
    w[1] = j > 1 ? f[j - 2] + trans.log_leave(j - 1) : kNegInf;
    if (w[0] == kNegInf && w[1] == kNegInf) throw InfeasiblePath("backward pass reached a dead end");
    labels[t - 1] = static_cast<int>(sample_log_categorical(w, rng) == 0 ? j : j - 1);
  }
  return StateSequence::from_labels(labels);
}

double finite_log_likelihood(std::span<const double> values, const EmissionFamily& family,
                             std::span<const RegimeParams> thetas, const FiniteTransition& trans) {
  if (values.size() < trans.regimes) throw InfeasiblePath("T is smaller than K*");
  const ForwardPass fp = forward_filter(values, family, thetas, trans);
  const std::size_t T = values.size();
  const std::size_t K = trans.regimes;

  // Prior probability of reaching the last regime by time T.
  std::vector<double> p(K, kNegInf), next(K);
  p[0] = 0.0;
  for (std::size_t t = 2; t <= T; ++t) {
    for (std::size_t k = 1; k <= K; ++k) {
      next[k - 1] = p[k - 1] + trans.log_stay(k);
      if (k > 1) next[k - 1] = log_add(next[k - 1], p[k - 2] + trans.log_leave(k - 1));
    }
    p.swap(next);
  }
  return fp.log_evidence + fp.filtered[T - 1][K - 1] - p[K - 1];
}

FiniteTransition update_pi(const StateSequence& seq, double beta, RandomStream& rng) {
  FiniteTransition trans;
  trans.regimes = seq.regime_count();
  for (std::size_t k = 1; k < trans.regimes; ++k) {
    double draw = rng.beta(1.0 + static_cast<double>(seq.self_transitions(k)), beta + 1.0);
    // Keep strictly inside (0, 1) so the log terms stay finite.
    draw = std::min(std::max(draw, std::numeric_limits<double>::min()), 1.0 - 1e-16);
    trans.stay.push_back(draw);
  }
  return trans;
}

double finite_beta_log_target(const FiniteTransition& trans, double beta, double prior_variance) {
  double acc = half_normal_log_density(beta, prior_variance);
  for (double p : trans.stay) acc += std::log(beta) + (beta - 1.0) * std::log1p(-p);
  return acc;
}

bool update_beta_finite(const FiniteTransition& trans, BetaState& beta, RandomStream& rng) {
  return log_scale_metropolis(
      beta.value, beta.step, [&](double b) { return finite_beta_log_target(trans, b, beta.prior_variance); }, rng);
}

FiniteFit fit_finite_k(const TimeSeries& data, const EmissionFamily& family, std::size_t kstar,
                       const ChainConfig& cfg) {
  cfg.validate();
  data.validate();
  for (double y : data.values) family.check_observation(y);
  const std::size_t T = data.length();
  if (kstar < 1 || kstar > T) throw InfeasiblePath("K*=" + std::to_string(kstar) + " exceeds T=" + std::to_string(T));

  RandomStream rng(RandomStream::derive_seed(cfg.seed, kstar));
  const PrefixStats prefix(data.values);
  StateSequence seq = equal_segments(T, kstar);
  std::vector<RegimeParams> thetas;
  for (std::size_t k = 1; k <= kstar; ++k) {
    thetas.push_back(family.posterior_draw(prefix.range(seq.first(k), seq.last(k)), family.draw_prior(rng), rng));
  }
  BetaState beta{cfg.beta_init, cfg.beta_prior_variance, cfg.beta_step};
  FiniteTransition trans = update_pi(seq, beta.value, rng);

  FiniteFit fit;
  fit.kstar = kstar;
  fit.chain.draws.reserve(cfg.draw_count());
  const std::size_t dim = family.dimension();
  std::vector<double> theta_sum(kstar * dim, 0.0);
  std::vector<double> stay_sum(kstar - 1, 0.0);
  StepTuner tuner(cfg.target_acceptance);
  std::size_t accepted = 0;

  for (std::size_t m = 1; m <= cfg.iterations; ++m) {
    seq = ffbs_states(data.values, family, thetas, trans, rng);
    for (std::size_t k = 1; k <= kstar; ++k) {
      thetas[k - 1] = family.posterior_draw(prefix.range(seq.first(k), seq.last(k)), thetas[k - 1], rng);
    }
    trans = update_pi(seq, beta.value, rng);
    const bool acc = update_beta_finite(trans, beta, rng);
    if (m <= cfg.burn_in) {
      if (cfg.adapt_beta_step) tuner.record(acc, beta.step);
      continue;
    }
    if (acc) ++accepted;
    if (cfg.record_k_trace) fit.chain.k_trace.push_back(kstar);
    if ((m - cfg.burn_in) % cfg.thin != 0) continue;

    // Complete-data log posterior of (y, s, θ, π, β).
    double lp = finite_beta_log_target(trans, beta.value, beta.prior_variance);
    for (std::size_t k = 1; k <= kstar; ++k) {
      lp += family.log_likelihood(thetas[k - 1], prefix.range(seq.first(k), seq.last(k))) +
            family.log_prior(thetas[k - 1]);
      if (k < kstar) {
        lp += static_cast<double>(seq.self_transitions(k)) * trans.log_stay(k) + trans.log_leave(k);
      }
      const auto v = family.parameter_values(thetas[k - 1]);
      for (std::size_t d = 0; d < dim; ++d) theta_sum[(k - 1) * dim + d] += v[d];
      if (k < kstar) stay_sum[k - 1] += trans.stay[k - 1];
    }
    fit.chain.draws.push_back(PosteriorDraw{m, seq, thetas, beta.value, lp});
  }
  fit.chain.beta_acceptance = static_cast<double>(accepted) / static_cast<double>(cfg.iterations - cfg.burn_in);
  fit.chain.beta_step = beta.step;

  const double n = static_cast<double>(fit.chain.draws.size());
  for (std::size_t k = 0; k < kstar; ++k) {
    std::vector<double> v(dim);
    for (std::size_t d = 0; d < dim; ++d) v[d] = theta_sum[k * dim + d] / n;
    fit.mean_thetas.push_back(family.from_values(v));
  }
  fit.mean_transition.regimes = kstar;
  for (double s : stay_sum) fit.mean_transition.stay.push_back(s / n);
  fit.log_likelihood_hat = finite_log_likelihood(data.values, family, fit.mean_thetas, fit.mean_transition);
  fit.parameter_count = kstar * dim + (kstar - 1);
  fit.bic = -2.0 * fit.log_likelihood_hat + static_cast<double>(fit.parameter_count) * std::log(static_cast<double>(T));
  return fit;
}

FiniteStudy fit_finite(const TimeSeries& data, const EmissionFamily& family, const FiniteModelConfig& cfg,
                       const std::function<void(const std::string&)>& warn) {
  cfg.validate();
  FiniteStudy study;
  for (std::size_t kstar : cfg.kstar_grid) {
    if (kstar > data.length()) {
      study.skipped.push_back(kstar);
      if (warn) warn("skipping K*=" + std::to_string(kstar) + ": larger than T=" + std::to_string(data.length()));
      continue;
    }
    study.fits.push_back(fit_finite_k(data, family, kstar, cfg.chain));
  }
  if (study.fits.empty()) throw InfeasiblePath("no feasible K* in the grid");
  for (std::size_t i = 1; i < study.fits.size(); ++i) {
    if (study.fits[i].bic < study.fits[study.selected].bic) study.selected = i;
  }
  return study;
}

}  // namespace dpcp
