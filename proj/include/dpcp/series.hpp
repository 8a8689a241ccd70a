#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dpcp/emission.hpp"
#include "dpcp/sequence.hpp"

namespace dpcp {

/// Observed series y_1..y_T, optional time labels (e.g. calendar years) and,
/// for simulated data, the generating segmentation and parameters.
struct TimeSeries {
  std::vector<double> values;
  std::vector<double> time_labels;  // empty, or one label per value
  std::string name;
  std::optional<StateSequence> truth;
  std::vector<RegimeParams> truth_params;

  std::size_t length() const { return values.size(); }
  bool has_labels() const { return !time_labels.empty(); }
  /// Label of 1-based time t, or t itself when no labels are attached.
  double label(std::size_t t) const { return has_labels() ? time_labels[t - 1] : static_cast<double>(t); }

  /// T >= 1, finite values, label count matches; throws InvalidInput.
  void validate() const;
};

}  // namespace dpcp
