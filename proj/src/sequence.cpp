#include "dpcp/sequence.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_set>

#include "dpcp/errors.hpp"

namespace dpcp {

StateSequence StateSequence::from_labels(std::span<const int> labels) {
  if (labels.empty()) return {};
  if (labels.front() != 1) throw InvalidState("staircase sequences start at label 1");
  std::vector<std::size_t> ends;
  for (std::size_t i = 1; i < labels.size(); ++i) {
    const int step = labels[i] - labels[i - 1];
    if (step == 1) {
      ends.push_back(i);
    } else if (step != 0) {
      throw InvalidState("labels must increase by 0 or 1 at every step (position " +
                         std::to_string(i + 1) + ")");
    }
  }
  ends.push_back(labels.size());
  StateSequence seq;
  seq.ends_ = std::move(ends);
  return seq;
}

StateSequence StateSequence::from_change_points(std::span<const std::size_t> ends, std::size_t length) {
  if (ends.empty() || ends.back() != length) throw InvalidState("last change point must equal the series length");
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (ends[i] < 1 || (i > 0 && ends[i] <= ends[i - 1])) {
      throw InvalidState("change points must be strictly increasing and >= 1");
    }
  }
  StateSequence seq;
  seq.ends_.assign(ends.begin(), ends.end());
  return seq;
}

StateSequence StateSequence::from_lengths(std::span<const std::size_t> lengths) {
  StateSequence seq;
  std::size_t end = 0;
  for (std::size_t len : lengths) {
    if (len == 0) throw InvalidState("regimes must be non-empty");
    end += len;
    seq.ends_.push_back(end);
  }
  return seq;
}

StateSequence StateSequence::single_regime(std::size_t length) {
  StateSequence seq;
  if (length > 0) seq.ends_.push_back(length);
  return seq;
}

int StateSequence::label_at(std::size_t t) const {
  const auto it = std::lower_bound(ends_.begin(), ends_.end(), t);
  return static_cast<int>(it - ends_.begin()) + 1;
}

std::vector<int> StateSequence::labels() const {
  std::vector<int> out;
  out.reserve(length());
  std::size_t prev = 0;
  for (std::size_t k = 0; k < ends_.size(); ++k) {
    out.insert(out.end(), ends_[k] - prev, static_cast<int>(k + 1));
    prev = ends_[k];
  }
  return out;
}

StateSequence canonicalize(std::span<const int> raw_labels) {
  std::vector<int> relabeled;
  relabeled.reserve(raw_labels.size());
  std::unordered_set<int> closed;
  int next = 0;
  for (std::size_t i = 0; i < raw_labels.size(); ++i) {
    if (i == 0 || raw_labels[i] != raw_labels[i - 1]) {
      if (i > 0) closed.insert(raw_labels[i - 1]);
      if (closed.contains(raw_labels[i])) {
        throw InvalidState("label " + std::to_string(raw_labels[i]) + " reappears at position " +
                           std::to_string(i + 1) + " after its block ended");
      }
      ++next;
    }
    relabeled.push_back(next);
  }
  return StateSequence::from_labels(relabeled);
}

std::size_t self_transitions(std::span<const int> labels, int regime, std::size_t from, std::size_t to) {
  std::size_t n = 0;
  for (std::size_t t = std::max<std::size_t>(from, 1); t < to && t < labels.size(); ++t) {
    if (labels[t - 1] == regime && labels[t] == regime) ++n;
  }
  return n;
}

std::vector<std::size_t> change_points(const StateSequence& seq) {
  const auto cp = seq.change_points();
  return {cp.begin(), cp.end()};
}

std::string run_length_encode(const StateSequence& seq) {
  std::string out;
  for (std::size_t k = 1; k <= seq.regime_count(); ++k) {
    if (k > 1) out += ',';
    out += std::to_string(k) + 'x' + std::to_string(seq.regime_length(k));
  }
  return out;
}

StateSequence run_length_decode(const std::string& text) {
  std::vector<std::size_t> lengths;
  std::stringstream ss(text);
  std::string item;
  std::size_t expected = 1;
  while (std::getline(ss, item, ',')) {
    const auto x = item.find('x');
    if (x == std::string::npos) throw FormatError("run-length item '" + item + "' lacks 'x'");
    std::size_t label = 0, count = 0;
    const auto r1 = std::from_chars(item.data(), item.data() + x, label);
    const auto r2 = std::from_chars(item.data() + x + 1, item.data() + item.size(), count);
    if (r1.ec != std::errc{} || r1.ptr != item.data() + x || r2.ec != std::errc{} ||
        r2.ptr != item.data() + item.size()) {
      throw FormatError("malformed run-length item '" + item + "'");
    }
    if (label != expected || count == 0) throw FormatError("run-length labels must be 1, 2, ... with positive counts");
    lengths.push_back(count);
    ++expected;
  }
  if (lengths.empty()) throw FormatError("empty run-length encoding");
  return StateSequence::from_lengths(lengths);
}

}  // namespace dpcp
