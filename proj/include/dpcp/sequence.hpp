#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dpcp {

/// Canonical staircase allocation: s_1 = 1 and s_{t+1} - s_t in {0, 1}.
/// Stored as the regime end points (change points); labels are derived.
class StateSequence {
 public:
  StateSequence() = default;

  /// Validates the staircase property; throws InvalidState otherwise.
  static StateSequence from_labels(std::span<const int> labels);
  /// `ends` strictly increasing with ends.back() == length.
  static StateSequence from_change_points(std::span<const std::size_t> ends, std::size_t length);
  /// Regime lengths, all >= 1.
  static StateSequence from_lengths(std::span<const std::size_t> lengths);
  static StateSequence single_regime(std::size_t length);

  std::size_t length() const { return ends_.empty() ? 0 : ends_.back(); }
  std::size_t regime_count() const { return ends_.size(); }

  /// ξ_1..ξ_K (1-based last index of each regime).
  std::span<const std::size_t> change_points() const { return ends_; }
  std::size_t first(std::size_t k) const { return k == 1 ? 1 : ends_[k - 2] + 1; }
  std::size_t last(std::size_t k) const { return ends_[k - 1]; }
  std::size_t regime_length(std::size_t k) const { return last(k) - first(k) + 1; }
  /// n_k^{1:T}: self-transitions of regime k.
  std::size_t self_transitions(std::size_t k) const { return regime_length(k) - 1; }
  /// Regime label of time t (1-based).
  int label_at(std::size_t t) const;
  std::vector<int> labels() const;

  bool operator==(const StateSequence&) const = default;

 private:
  std::vector<std::size_t> ends_;
};

/// Renumber contiguous label blocks 1..K in order of first appearance.
/// Throws InvalidState if a label reappears after its block ended.
StateSequence canonicalize(std::span<const int> raw_labels);

/// n_i^{j:j'}: self-transitions s_t = s_{t+1} = i for t in [j, j'-1].
std::size_t self_transitions(std::span<const int> labels, int regime, std::size_t from, std::size_t to);

/// ξ_1..ξ_K of a canonical sequence.
std::vector<std::size_t> change_points(const StateSequence& seq);

/// "1x2,2x3" run-length form of the label sequence.
std::string run_length_encode(const StateSequence& seq);
StateSequence run_length_decode(const std::string& text);

}  // namespace dpcp
