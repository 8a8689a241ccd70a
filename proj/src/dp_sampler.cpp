#include "dpcp/dp_sampler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dpcp/errors.hpp"
#include "dpcp/numeric.hpp"

namespace dpcp {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// (K-1) log β + Σ log γ over regimes given by their lengths.
double log_prior_from_segments(const std::vector<Segment>& segs, double beta) {
  double acc = static_cast<double>(segs.size() - 1) * std::log(beta);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    acc += gamma_log(i + 1 == segs.size() ? 1 : 0, static_cast<double>(segs[i].self_transitions()), beta);
  }
  return acc;
}

// Prior contribution of a run of adjacent blocks, up to factors shared by all
// alternatives: one log β per block plus its γ term. Zero lengths are absent
// blocks; the final present block carries c = 1 when it ends at T.
double local_log_prior(std::initializer_list<std::size_t> lengths, bool tail_is_final, double beta) {
  std::size_t last_present = kNone;
  std::size_t i = 0;
  for (std::size_t len : lengths) {
    if (len > 0) last_present = i;
    ++i;
  }
  double acc = 0.0;
  i = 0;
  const double log_beta = std::log(beta);
  for (std::size_t len : lengths) {
    if (len > 0) {
      const int c = (i == last_present && tail_is_final) ? 1 : 0;
      acc += log_beta + gamma_log(c, static_cast<double>(len - 1), beta);
    }
    ++i;
  }
  return acc;
}

template <typename Outcome>
Outcome draw_outcome(const MoveWeights<Outcome>& w, RandomStream& rng) {
  return w.outcomes[sample_log_categorical(w.log_weights, rng)];
}

// Replace `count` segments starting at `index` with `replacement`.
void replace_segments(std::vector<Segment>& segs, std::size_t index, std::size_t count,
                      std::initializer_list<Segment> replacement) {
  segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(index),
             segs.begin() + static_cast<std::ptrdiff_t>(index + count));
  segs.insert(segs.begin() + static_cast<std::ptrdiff_t>(index), replacement);
}

}  // namespace

// ---------------------------------------------------------------------------
// Sequence prior
// ---------------------------------------------------------------------------

double transition_logprob(int i, int k, std::size_t n_prefix, double beta) {
  const double n = static_cast<double>(n_prefix);
  if (i == k) return std::log((n + 1.0) / (n + 1.0 + beta));
  if (i == k + 1) return std::log(beta / (n + 1.0 + beta));
  throw InvalidTransition("from regime " + std::to_string(k) + " the next label must be " + std::to_string(k) +
                          " or " + std::to_string(k + 1) + ", got " + std::to_string(i));
}

double gamma_log(int c, double n, double beta) {
  return log_gamma(beta + 1.0) + log_gamma(n + 1.0) - log_gamma(n + 1.0 + beta + 1.0 - c);
}

double seq_log_prior(const StateSequence& seq, double beta) {
  const std::size_t K = seq.regime_count();
  if (K == 0) return 0.0;
  double acc = static_cast<double>(K - 1) * std::log(beta);
  for (std::size_t k = 1; k <= K; ++k) {
    acc += gamma_log(k == K ? 1 : 0, static_cast<double>(seq.self_transitions(k)), beta);
  }
  return acc;
}

double beta_log_target(const StateSequence& seq, double beta, double prior_variance) {
  return seq_log_prior(seq, beta) + half_normal_log_density(beta, prior_variance);
}

// ---------------------------------------------------------------------------
// ChainState
// ---------------------------------------------------------------------------

ChainState::ChainState(std::shared_ptr<const ObservedSeries> data, EmissionFamily family, const StateSequence& seq,
                       std::vector<RegimeParams> thetas, BetaState beta)
    : data_(std::move(data)), family_(std::move(family)), beta_(beta) {
  if (!data_ || data_->length() == 0) throw InvalidInput("chain state needs a non-empty series");
  if (seq.length() != data_->length()) throw InvalidState("sequence length does not match the series");
  if (thetas.size() != seq.regime_count()) throw InvalidState("one parameter vector per regime is required");
  if (!(beta_.value > 0.0)) throw InvalidState("beta must be positive");
  segments_.reserve(thetas.size());
  for (std::size_t k = 1; k <= seq.regime_count(); ++k) {
    segments_.push_back({seq.first(k), seq.last(k), thetas[k - 1]});
  }
}

ChainState ChainState::initial(const TimeSeries& series, const EmissionFamily& family, std::size_t k0,
                               BetaState beta, RandomStream& rng) {
  series.validate();
  for (double y : series.values) family.check_observation(y);
  const StateSequence seq = equal_segments(series.length(), k0);
  std::vector<RegimeParams> thetas;
  for (std::size_t k = 0; k < seq.regime_count(); ++k) thetas.push_back(family.draw_prior(rng));
  return ChainState(std::make_shared<const ObservedSeries>(series.values), family, seq, std::move(thetas), beta);
}

std::size_t ChainState::segment_of(std::size_t t) const {
  const auto it = std::lower_bound(segments_.begin(), segments_.end(), t,
                                   [](const Segment& s, std::size_t time) { return s.last < time; });
  return static_cast<std::size_t>(it - segments_.begin());
}

StateSequence ChainState::sequence() const {
  std::vector<std::size_t> ends;
  ends.reserve(segments_.size());
  for (const auto& s : segments_) ends.push_back(s.last);
  return StateSequence::from_change_points(ends, length());
}

std::vector<RegimeParams> ChainState::thetas() const {
  std::vector<RegimeParams> out;
  out.reserve(segments_.size());
  for (const auto& s : segments_) out.push_back(s.theta);
  return out;
}

void ChainState::set_thetas(std::span<const RegimeParams> thetas) {
  if (thetas.size() != segments_.size()) throw InvalidState("one parameter vector per regime is required");
  for (std::size_t i = 0; i < thetas.size(); ++i) segments_[i].theta = thetas[i];
}

double ChainState::segment_log_likelihood(std::size_t first, std::size_t last, const RegimeParams& theta) const {
  return family_.log_likelihood(theta, data_->prefix.range(first, last));
}

double ChainState::log_likelihood() const {
  double acc = 0.0;
  for (const auto& s : segments_) acc += segment_log_likelihood(s.first, s.last, s.theta);
  return acc;
}

double ChainState::log_posterior() const {
  double acc = log_likelihood() + log_prior_from_segments(segments_, beta_.value) +
               half_normal_log_density(beta_.value, beta_.prior_variance);
  for (const auto& s : segments_) acc += family_.log_prior(s.theta);
  return acc;
}

void ChainState::check_invariants() const {
  if (segments_.empty()) throw InvalidState("no regimes");
  std::size_t expected = 1;
  for (const auto& s : segments_) {
    if (s.first != expected || s.last < s.first) throw InvalidState("segments do not tile 1..T");
    expected = s.last + 1;
  }
  if (expected != length() + 1) throw InvalidState("segments do not end at T");
  if (!(beta_.value > 0.0)) throw InvalidState("beta must be positive");
}

void MoveConfig::validate() const {
  for (double p : {p_single, p_split, p_merge, p_forward}) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("move probabilities must lie in [0, 1]");
  }
  if (std::abs(p_single + p_split + p_merge - 1.0) > 1e-9) {
    throw ConfigError("single, split and merge probabilities must sum to 1");
  }
}

// ---------------------------------------------------------------------------
// Single-site update
// ---------------------------------------------------------------------------

MoveWeights<SingleSiteOutcome> single_site_weights(const ChainState& state, std::size_t t,
                                                   const RegimeParams& candidate, MoveRule rule) {
  MoveWeights<SingleSiteOutcome> w;
  const std::size_t T = state.length();
  if (t < 1 || t > T || T == 1) return w;
  const auto& segs = state.segments();
  const std::size_t j = state.segment_of(t);
  const Segment& own = segs[j];
  const bool has_left = t > 1;
  const bool has_right = t < T;
  const std::size_t lj = has_left ? (t > own.first ? j : j - 1) : kNone;
  const std::size_t rj = has_right ? (t < own.last ? j : j + 1) : kNone;
  if (has_left && has_right && lj == j && rj == j) return w;  // interior: s_t fixed

  const bool singleton = own.length() == 1;
  const double beta = state.beta().value;
  const double y = state.data().values[t - 1];
  const auto& fam = state.family();
  const std::size_t K = segs.size();
  w.candidate = singleton ? own.theta : candidate;

  if (rule == MoveRule::AsPrinted) {
    const double log_new = std::log(beta / (beta + 1.0));
    if (!singleton) w.add(SingleSiteOutcome::NewRegime, log_new + fam.log_density(candidate, t, y));
    if (has_left) {
      const double n = static_cast<double>(lj == j ? own.length() - 2 : segs[lj].length() - 1);
      w.add(SingleSiteOutcome::JoinLeft,
            std::log((n + 1.0) / (n + 1.0 + beta + 1.0)) + fam.log_density(segs[lj].theta, t, y));
    }
    if (has_right) {
      const double n = static_cast<double>(rj == j ? own.length() - 2 : segs[rj].length() - 1);
      const double last = rj + 1 == K ? 1.0 : 0.0;
      w.add(SingleSiteOutcome::JoinRight,
            std::log((n + 1.0) / (n + 1.0 + beta + 1.0 - last)) + fam.log_density(segs[rj].theta, t, y));
    }
    if (singleton) w.add(SingleSiteOutcome::OwnSingleton, log_new + fam.log_density(own.theta, t, y));
    return w;
  }

  // Exact: blocks A = times < t next to t, B = times > t next to t.
  const std::size_t a = has_left ? (lj == j ? t - own.first : segs[lj].length()) : 0;
  const std::size_t b = has_right ? (rj == j ? own.last - t : segs[rj].length()) : 0;
  const bool tail_final = b == 0 || rj + 1 == K;
  w.add(singleton ? SingleSiteOutcome::OwnSingleton : SingleSiteOutcome::NewRegime,
        local_log_prior({a, 1, b}, tail_final, beta) + fam.log_density(w.candidate, t, y));
  if (has_left) {
    w.add(SingleSiteOutcome::JoinLeft,
          local_log_prior({a + 1, b}, tail_final, beta) + fam.log_density(segs[lj].theta, t, y));
  }
  if (has_right) {
    w.add(SingleSiteOutcome::JoinRight,
          local_log_prior({a, b + 1}, tail_final, beta) + fam.log_density(segs[rj].theta, t, y));
  }
  return w;
}

std::optional<SingleSiteOutcome> single_site_update(ChainState& state, std::size_t t, RandomStream& rng,
                                                    MoveRule rule, std::optional<RegimeParams> candidate) {
  const std::size_t j0 = t >= 1 && t <= state.length() ? state.segment_of(t) : 0;
  const bool needs_candidate = t >= 1 && t <= state.length() && state.segments()[j0].length() > 1;
  const RegimeParams cand = candidate ? *candidate
                            : needs_candidate ? state.family().draw_prior(rng)
                                              : RegimeParams{};
  const auto w = single_site_weights(state, t, cand, rule);
  if (w.empty()) return std::nullopt;
  const SingleSiteOutcome outcome = draw_outcome(w, rng);

  auto& segs = state.mutable_segments();
  const std::size_t j = state.segment_of(t);
  Segment& own = segs[j];
  switch (outcome) {
    case SingleSiteOutcome::JoinLeft:
      if (t == own.first) {
        segs[j - 1].last = t;
        if (own.last == t) {
          segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(j));
        } else {
          own.first = t + 1;
        }
      }
      break;
    case SingleSiteOutcome::JoinRight:
      if (t == own.last) {
        segs[j + 1].first = t;
        if (own.first == t) {
          segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(j));
        } else {
          own.last = t - 1;
        }
      }
      break;
    case SingleSiteOutcome::NewRegime:
      if (t == own.first) {
        own.first = t + 1;
        replace_segments(segs, j, 0, {Segment{t, t, w.candidate}});
      } else {
        own.last = t - 1;
        replace_segments(segs, j + 1, 0, {Segment{t, t, w.candidate}});
      }
      break;
    case SingleSiteOutcome::OwnSingleton:
      own.theta = w.candidate;
      break;
  }
  return outcome;
}

// ---------------------------------------------------------------------------
// Split update
// ---------------------------------------------------------------------------

MoveWeights<SplitOutcome> split_weights(const ChainState& state, std::size_t t, const RegimeParams& candidate,
                                        MoveRule rule) {
  MoveWeights<SplitOutcome> w;
  const std::size_t T = state.length();
  if (t < 2 || t > T) return w;
  const auto& segs = state.segments();
  const std::size_t j = state.segment_of(t);
  const Segment& own = segs[j];
  const bool merged = t > own.first;
  if (rule == MoveRule::AsPrinted && !merged) return w;  // S_- empty

  const double beta = state.beta().value;
  const double log_beta = std::log(beta);
  const int c = j + 1 == segs.size() ? 1 : 0;
  // S_- = [lo, t-1], S^+ = [t, hi]; phi1 holds the current (left) parameters.
  const std::size_t lo = merged ? own.first : segs[j - 1].first;
  const std::size_t hi = own.last;
  const RegimeParams phi1 = merged ? own.theta : segs[j - 1].theta;
  const RegimeParams phi2 = merged ? candidate : own.theta;
  w.candidate = phi2;

  const double n_all = static_cast<double>(hi - lo);
  const double n_minus = static_cast<double>(t - 1 - lo);
  const double n_plus = static_cast<double>(hi - t);
  const double merged_prior = gamma_log(c, n_all, beta);
  const double split_prior = log_beta + gamma_log(0, n_minus, beta) + gamma_log(c, n_plus, beta);
  const double minus1 = state.segment_log_likelihood(lo, t - 1, phi1);
  const double minus2 = state.segment_log_likelihood(lo, t - 1, phi2);
  const double plus1 = state.segment_log_likelihood(t, hi, phi1);
  const double plus2 = state.segment_log_likelihood(t, hi, phi2);

  w.add(SplitOutcome::Keep, merged_prior + minus1 + plus1);
  w.add(SplitOutcome::NewBefore, split_prior + minus2 + plus1);
  w.add(SplitOutcome::NewAfter, split_prior + minus1 + plus2);
  if (rule == MoveRule::Exact) w.add(SplitOutcome::MergedWithCandidate, merged_prior + minus2 + plus2);
  return w;
}

std::optional<SplitOutcome> split_update(ChainState& state, std::size_t t, RandomStream& rng, MoveRule rule,
                                         std::optional<RegimeParams> candidate) {
  const std::size_t T = state.length();
  if (t < 2 || t > T) return std::nullopt;
  const std::size_t j = state.segment_of(t);
  const bool merged = t > state.segments()[j].first;
  if (rule == MoveRule::AsPrinted && !merged) return std::nullopt;
  const RegimeParams cand = candidate ? *candidate : merged ? state.family().draw_prior(rng) : RegimeParams{};
  const auto w = split_weights(state, t, cand, rule);
  if (w.empty()) return std::nullopt;
  const SplitOutcome outcome = draw_outcome(w, rng);

  auto& segs = state.mutable_segments();
  const std::size_t first_index = merged ? j : j - 1;
  const std::size_t count = merged ? 1 : 2;
  const std::size_t lo = segs[first_index].first;
  const std::size_t hi = segs[j].last;
  const RegimeParams phi1 = segs[first_index].theta;
  const RegimeParams phi2 = w.candidate;
  switch (outcome) {
    case SplitOutcome::Keep:
      replace_segments(segs, first_index, count, {Segment{lo, hi, phi1}});
      break;
    case SplitOutcome::MergedWithCandidate:
      replace_segments(segs, first_index, count, {Segment{lo, hi, phi2}});
      break;
    case SplitOutcome::NewBefore:
      replace_segments(segs, first_index, count, {Segment{lo, t - 1, phi2}, Segment{t, hi, phi1}});
      break;
    case SplitOutcome::NewAfter:
      replace_segments(segs, first_index, count, {Segment{lo, t - 1, phi1}, Segment{t, hi, phi2}});
      break;
  }
  return outcome;
}

// ---------------------------------------------------------------------------
// Merge update
// ---------------------------------------------------------------------------

MoveWeights<MergeOutcome> merge_weights(const ChainState& state, std::size_t k, const RegimeParams& candidate,
                                        MoveRule rule) {
  MoveWeights<MergeOutcome> w;
  const auto& segs = state.segments();
  const std::size_t K = segs.size();
  if (k < 1 || k > K) return w;
  w.candidate = candidate;
  const Segment& block = segs[k - 1];
  const double lik_new = state.segment_log_likelihood(block.first, block.last, candidate);
  const double lik_keep = state.segment_log_likelihood(block.first, block.last, block.theta);

  if (rule == MoveRule::Exact) {
    // Parameter refresh only; block reallocation is merge_split_step.
    w.add(MergeOutcome::NewParams, lik_new);
    w.add(MergeOutcome::Keep, lik_keep);
    return w;
  }

  const double beta = state.beta().value;
  const double log_beta = std::log(beta);
  const double n_prev = k > 1 ? static_cast<double>(segs[k - 2].self_transitions()) : 0.0;
  const double n_k = static_cast<double>(block.self_transitions());
  const double n_next = k < K ? static_cast<double>(segs[k].self_transitions()) : 0.0;
  const double prev_term = k > 1 ? gamma_log(0, n_prev, beta) : 0.0;
  const double next_term = k < K ? gamma_log(0, n_next, beta) : 0.0;  // γ_{I(k,K)} with k != K
  const double separate = log_beta + prev_term + gamma_log(0, n_k, beta) + next_term;

  w.add(MergeOutcome::NewParams, separate + lik_new);
  if (k > 1) {
    w.add(MergeOutcome::MergeDown, gamma_log(0, n_prev + n_k + 1.0, beta) + next_term +
                                       state.segment_log_likelihood(block.first, block.last, segs[k - 2].theta));
  }
  if (k < K) {
    w.add(MergeOutcome::MergeUp, prev_term + gamma_log(0, n_k + n_next + 1.0, beta) +
                                     state.segment_log_likelihood(block.first, block.last, segs[k].theta));
  }
  w.add(MergeOutcome::Keep, separate + lik_keep);
  return w;
}

std::optional<MergeOutcome> merge_update(ChainState& state, std::size_t k, RandomStream& rng, MoveRule rule,
                                         std::optional<RegimeParams> candidate) {
  if (k < 1 || k > state.regime_count()) return std::nullopt;
  const RegimeParams cand = candidate ? *candidate : state.family().draw_prior(rng);
  const auto w = merge_weights(state, k, cand, rule);
  MergeOutcome outcome = draw_outcome(w, rng);
  auto& segs = state.mutable_segments();

  if (rule == MoveRule::Exact) {
    if (outcome == MergeOutcome::NewParams) segs[k - 1].theta = cand;
    return outcome;
  }

  switch (outcome) {
    case MergeOutcome::NewParams:
      segs[k - 1].theta = cand;
      break;
    case MergeOutcome::MergeDown:
      segs[k - 2].last = segs[k - 1].last;
      segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(k - 1));
      break;
    case MergeOutcome::MergeUp:
      segs[k].first = segs[k - 1].first;
      segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(k - 1));
      break;
    case MergeOutcome::Keep:
      break;
  }
  return outcome;
}

namespace {

// Half prior, half fitted to the block the parameters will cover.
RegimeParams fresh_draw(const ChainState& state, const Segment& block, RandomStream& rng) {
  const auto& fam = state.family();
  if (rng.uniform() < 0.5) return fam.draw_prior(rng);
  return fam.fitted_draw(state.data().prefix.range(block.first, block.last), rng);
}

double fresh_log_density(const ChainState& state, const Segment& block, const RegimeParams& p) {
  const auto& fam = state.family();
  const double half = std::log(0.5);
  const std::array<double, 2> parts{half + fam.log_prior(p),
                                    half + fam.fitted_log_density(state.data().prefix.range(block.first, block.last), p)};
  return log_sum_exp(parts);
}

}  // namespace

bool merge_split_step(ChainState& state, RandomStream& rng) {
  auto& segs = state.mutable_segments();
  const double beta = state.beta().value;
  const double log_beta = std::log(beta);
  const std::size_t K = segs.size();
  const bool try_merge = rng.uniform() < 0.5;

  // Proposals: merge picks one of the K-1 boundaries and keeps either side's
  // parameters; split picks one of the K blocks, one of its n-1 cuts, and a
  // side that gets fresh parameters from fresh_proposal. The discarded (or
  // fresh) parameters enter as prior / proposal density.
  if (try_merge) {
    if (K < 2) return false;
    const std::size_t i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(K - 1));
    const Segment& a = segs[i];
    const Segment& b = segs[i + 1];
    const bool keep_left = rng.uniform() < 0.5;
    const RegimeParams& kept = keep_left ? a.theta : b.theta;
    const int c = i + 2 == K ? 1 : 0;
    const std::size_t n_merged = b.last - a.first + 1;
    const double log_ratio =
        gamma_log(c, static_cast<double>(n_merged - 1), beta) - log_beta -
        gamma_log(0, static_cast<double>(a.self_transitions()), beta) -
        gamma_log(c, static_cast<double>(b.self_transitions()), beta) +
        state.segment_log_likelihood(a.first, b.last, kept) -
        state.segment_log_likelihood(a.first, a.last, a.theta) -
        state.segment_log_likelihood(b.first, b.last, b.theta) - std::log(static_cast<double>(n_merged - 1)) +
        fresh_log_density(state, keep_left ? b : a, keep_left ? b.theta : a.theta) -
        state.family().log_prior(keep_left ? b.theta : a.theta);
    if (std::log(rng.uniform()) >= log_ratio) return false;
    replace_segments(segs, i, 2, {Segment{a.first, b.last, kept}});
    return true;
  }

  const std::size_t i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(K));
  const Segment& s = segs[i];
  const std::size_t n = s.length();
  if (n < 2) return false;
  const bool fresh_left = rng.uniform() < 0.5;
  const std::size_t cut = s.first + 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(n - 1));
  const Segment fresh_block = fresh_left ? Segment{s.first, cut - 1, s.theta} : Segment{cut, s.last, s.theta};
  const RegimeParams fresh = fresh_draw(state, fresh_block, rng);
  const int c = i + 1 == K ? 1 : 0;
  const RegimeParams& left = fresh_left ? fresh : s.theta;
  const RegimeParams& right = fresh_left ? s.theta : fresh;
  const double log_ratio =
      log_beta + gamma_log(0, static_cast<double>(cut - 1 - s.first), beta) +
      gamma_log(c, static_cast<double>(s.last - cut), beta) - gamma_log(c, static_cast<double>(n - 1), beta) +
      state.segment_log_likelihood(s.first, cut - 1, left) + state.segment_log_likelihood(cut, s.last, right) -
      state.segment_log_likelihood(s.first, s.last, s.theta) + std::log(static_cast<double>(n - 1)) +
      state.family().log_prior(fresh) - fresh_log_density(state, fresh_block, fresh);
  if (std::log(rng.uniform()) >= log_ratio) return false;
  const Segment a{s.first, cut - 1, left};
  const Segment b{cut, s.last, right};
  replace_segments(segs, i, 1, {a, b});
  return true;
}

// ---------------------------------------------------------------------------
// Parameter updates and sweeps
// ---------------------------------------------------------------------------

void update_thetas(ChainState& state, RandomStream& rng) {
  const auto& fam = state.family();
  const auto& prefix = state.data().prefix;
  for (auto& s : state.mutable_segments()) s.theta = fam.posterior_draw(prefix.range(s.first, s.last), s.theta, rng);
}

bool update_beta(ChainState& state, RandomStream& rng) {
  BetaState& b = state.beta();
  const auto& segs = state.segments();
  const auto log_target = [&](double beta) {
    return log_prior_from_segments(segs, beta) + half_normal_log_density(beta, b.prior_variance);
  };
  return log_scale_metropolis(b.value, b.step, log_target, rng);
}

SweepReport gibbs_sweep(ChainState& state, const MoveConfig& moves, RandomStream& rng) {
  SweepReport report{};
  const double u = rng.uniform();
  report.move = u < moves.p_single ? MoveKind::Single : u < moves.p_single + moves.p_split ? MoveKind::Split
                                                                                          : MoveKind::Merge;
  report.forward = rng.uniform() < moves.p_forward;
  const std::size_t T = state.length();

  switch (report.move) {
    case MoveKind::Single:
      for (std::size_t i = 1; i <= T; ++i) single_site_update(state, report.forward ? i : T + 1 - i, rng, moves.rule);
      break;
    case MoveKind::Split:
      for (std::size_t i = 1; i < T; ++i) split_update(state, report.forward ? i + 1 : T + 1 - i, rng, moves.rule);
      break;
    case MoveKind::Merge:
      if (moves.rule == MoveRule::Exact) {
        for (std::size_t k = 1; k <= state.regime_count(); ++k) merge_update(state, k, rng, moves.rule);
        for (std::size_t i = 0; i < T; ++i) merge_split_step(state, rng);
        break;
      }
      for (std::size_t k = 1; k <= state.regime_count();) {
        const std::size_t before = state.regime_count();
        merge_update(state, k, rng, moves.rule);
        if (state.regime_count() == before) ++k;
      }
      break;
  }
  update_thetas(state, rng);
  report.beta_accepted = update_beta(state, rng);
  return report;
}

PosteriorDraw snapshot(const ChainState& state, std::size_t iteration) {
  return PosteriorDraw{iteration, state.sequence(), state.thetas(), state.beta().value, state.log_posterior()};
}

ChainResult run_chain(const TimeSeries& data, const EmissionFamily& family, const ChainConfig& cfg,
                      const MoveConfig& moves) {
  cfg.validate();
  moves.validate();
  RandomStream rng(cfg.seed);
  BetaState beta{cfg.beta_init, cfg.beta_prior_variance, cfg.beta_step};
  ChainState state = ChainState::initial(data, family, cfg.init_segments, beta, rng);

  ChainResult result;
  result.draws.reserve(cfg.draw_count());
  if (cfg.record_k_trace) result.k_trace.reserve(cfg.iterations);
  StepTuner tuner(cfg.target_acceptance);
  std::size_t accepted = 0;
  for (std::size_t m = 1; m <= cfg.iterations; ++m) {
    const SweepReport rep = gibbs_sweep(state, moves, rng);
    if (m <= cfg.burn_in) {
      if (cfg.adapt_beta_step) tuner.record(rep.beta_accepted, state.beta().step);
    } else {
      if (rep.beta_accepted) ++accepted;
      if ((m - cfg.burn_in) % cfg.thin == 0) result.draws.push_back(snapshot(state, m));
    }
    if (cfg.record_k_trace) result.k_trace.push_back(state.regime_count());
  }
  result.beta_acceptance = static_cast<double>(accepted) / static_cast<double>(cfg.iterations - cfg.burn_in);
  result.beta_step = state.beta().step;
  return result;
}

}  // namespace dpcp
