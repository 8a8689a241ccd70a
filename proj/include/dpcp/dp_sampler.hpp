#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dpcp/chain.hpp"
#include "dpcp/emission.hpp"
#include "dpcp/random.hpp"
#include "dpcp/sequence.hpp"
#include "dpcp/series.hpp"

namespace dpcp {

// ---------------------------------------------------------------------------
// Marginalized sequence prior
// ---------------------------------------------------------------------------

/// log f(s_t = i | s_{t-1} = k, n_k^{1:(t-1)} = n, β) under the collapsed
/// dynamics: stay with weight n+1, jump with weight β.
double transition_logprob(int i, int k, std::size_t n_prefix, double beta);

/// log f(s_1..s_T | β) = (K-1) log β + Σ_i log γ_{I(i,K)}(n_i).
double seq_log_prior(const StateSequence& seq, double beta);

/// log γ_c(n) = log Γ(β+1) + log Γ(n+1) - log Γ(n+1+β+1-c).
double gamma_log(int c, double n, double beta);

// ---------------------------------------------------------------------------
// Chain state
// ---------------------------------------------------------------------------

/// Contiguous regime [first, last] (1-based, inclusive) and its parameters.
struct Segment {
  std::size_t first;
  std::size_t last;
  RegimeParams theta;

  std::size_t length() const { return last - first + 1; }
  std::size_t self_transitions() const { return last - first; }
};

/// Immutable observations shared by every state of a chain.
struct ObservedSeries {
  std::vector<double> values;
  PrefixStats prefix;

  explicit ObservedSeries(std::vector<double> v) : values(std::move(v)), prefix(values) {}
  std::size_t length() const { return values.size(); }
};

/// One Markov-chain configuration: allocation, per-regime parameters and β.
/// Regimes are stored as ordered segments, which keeps labels canonical and
/// the parameter list index-aligned with regime labels at all times.
class ChainState {
 public:
  ChainState(std::shared_ptr<const ObservedSeries> data, EmissionFamily family, const StateSequence& seq,
             std::vector<RegimeParams> thetas, BetaState beta);
  /// K0 equal segments with prior-drawn parameters.
  static ChainState initial(const TimeSeries& series, const EmissionFamily& family, std::size_t k0,
                            BetaState beta, RandomStream& rng);

  const EmissionFamily& family() const { return family_; }
  const ObservedSeries& data() const { return *data_; }
  std::shared_ptr<const ObservedSeries> shared_data() const { return data_; }
  std::size_t length() const { return data_->length(); }
  std::size_t regime_count() const { return segments_.size(); }

  const std::vector<Segment>& segments() const { return segments_; }
  std::vector<Segment>& mutable_segments() { return segments_; }
  /// Index of the segment containing time t.
  std::size_t segment_of(std::size_t t) const;

  StateSequence sequence() const;
  std::vector<RegimeParams> thetas() const;
  void set_thetas(std::span<const RegimeParams> thetas);

  BetaState& beta() { return beta_; }
  const BetaState& beta() const { return beta_; }

  /// Σ log f(y_t | θ_{s_t}) from segment statistics.
  double log_likelihood() const;
  /// Joint log density of (y, s, θ, β).
  double log_posterior() const;
  double segment_log_likelihood(std::size_t first, std::size_t last, const RegimeParams& theta) const;

  /// Throws InvalidState if segments are not a contiguous cover of 1..T.
  void check_invariants() const;

 private:
  std::shared_ptr<const ObservedSeries> data_;
  EmissionFamily family_;
  std::vector<Segment> segments_;
  BetaState beta_;
};

// ---------------------------------------------------------------------------
// Moves
// ---------------------------------------------------------------------------

/// Which allocation weights the moves use.
///  - AsPrinted: the single-site, split and merge weights exactly as derived
///    for the collapsed sampler, with one fresh prior candidate per proposal.
///  - Exact: single-site weights from the exact sequence-prior ratio, split
///    as an auxiliary-variable Gibbs step on the change-point indicator before
///    t, merge as a parameter refresh plus Metropolis-Hastings merge/split of
///    adjacent blocks. Leaves the posterior invariant.
enum class MoveRule { AsPrinted, Exact };

struct MoveConfig {
  double p_single = 0.5;
  double p_split = 0.25;
  double p_merge = 0.25;
  double p_forward = 0.5;
  MoveRule rule = MoveRule::Exact;

  void validate() const;  // throws ConfigError
};

enum class SingleSiteOutcome { NewRegime, JoinLeft, JoinRight, OwnSingleton };
enum class SplitOutcome { Keep, NewBefore, NewAfter, MergedWithCandidate };
enum class MergeOutcome { NewParams, MergeDown, MergeUp, Keep };

/// Categorical proposal: outcomes in listed order with unnormalized log weights.
template <typename Outcome>
struct MoveWeights {
  std::vector<Outcome> outcomes;
  std::vector<double> log_weights;
  RegimeParams candidate;  // θ_* used by the new-regime outcomes

  void add(Outcome o, double w) {
    outcomes.push_back(o);
    log_weights.push_back(w);
  }
  bool empty() const { return outcomes.empty(); }
};

/// Weights for reallocating s_t. Empty when t is interior to its regime.
MoveWeights<SingleSiteOutcome> single_site_weights(const ChainState& state, std::size_t t,
                                                   const RegimeParams& candidate, MoveRule rule);
/// Weights for a change point immediately before t. Empty when skipped.
/// Under Exact the outcomes are Keep (merged, current/left parameters),
/// MergedWithCandidate, NewBefore (split, candidate first), NewAfter.
MoveWeights<SplitOutcome> split_weights(const ChainState& state, std::size_t t, const RegimeParams& candidate,
                                        MoveRule rule);
/// Weights for reassigning the whole block of regime k (1-based).
MoveWeights<MergeOutcome> merge_weights(const ChainState& state, std::size_t k, const RegimeParams& candidate,
                                        MoveRule rule);

/// Each returns the sampled outcome, or nullopt when the move did not apply.
/// `candidate` overrides the fresh prior draw (testing hook).
std::optional<SingleSiteOutcome> single_site_update(ChainState& state, std::size_t t, RandomStream& rng,
                                                    MoveRule rule = MoveRule::Exact,
                                                    std::optional<RegimeParams> candidate = std::nullopt);
std::optional<SplitOutcome> split_update(ChainState& state, std::size_t t, RandomStream& rng,
                                         MoveRule rule = MoveRule::Exact,
                                         std::optional<RegimeParams> candidate = std::nullopt);
std::optional<MergeOutcome> merge_update(ChainState& state, std::size_t k, RandomStream& rng,
                                         MoveRule rule = MoveRule::Exact,
                                         std::optional<RegimeParams> candidate = std::nullopt);

/// One Metropolis-Hastings attempt: merge two adjacent blocks or split one
/// block at a uniform cut with a fresh prior draw. Returns true on acceptance.
bool merge_split_step(ChainState& state, RandomStream& rng);

/// Full-conditional draw for every θ_k.
void update_thetas(ChainState& state, RandomStream& rng);
/// Metropolis step on log β; returns true on acceptance.
bool update_beta(ChainState& state, RandomStream& rng);
/// log of the β full conditional (sequence prior × half-normal prior), up to a constant.
double beta_log_target(const StateSequence& seq, double beta, double prior_variance);

enum class MoveKind { Single, Split, Merge };

struct SweepReport {
  MoveKind move;
  bool forward;
  bool beta_accepted;
};

/// One iteration: a randomly chosen allocation sweep, then θ and β updates.
SweepReport gibbs_sweep(ChainState& state, const MoveConfig& moves, RandomStream& rng);

PosteriorDraw snapshot(const ChainState& state, std::size_t iteration);

ChainResult run_chain(const TimeSeries& data, const EmissionFamily& family, const ChainConfig& cfg,
                      const MoveConfig& moves = {});

}  // namespace dpcp
