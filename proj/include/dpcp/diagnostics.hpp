#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dpcp/chain.hpp"
#include "dpcp/emission.hpp"
#include "dpcp/sequence.hpp"

namespace dpcp {

/// Fraction of the T(T-1)/2 unordered pairs on which two partitions agree.
/// T = 1 gives 1. Throws InvalidInput on a length mismatch or empty input.
double rand_index(std::span<const int> a, std::span<const int> b);
double rand_index(const StateSequence& a, const StateSequence& b);

/// Type-7 (linear interpolation) sample quantile, p in [0, 1].
double quantile(std::vector<double> xs, double p);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Equal-tailed interval from type-7 quantiles.
Interval equal_tailed_interval(std::span<const double> xs, double level);
/// Equal-tailed interval for integer-valued draws, read off the empirical CDF
/// so both ends are attained values.
Interval discrete_interval(std::span<const double> xs, double level);

struct ParameterSummary {
  std::string name;
  double mean = 0.0;
  Interval interval;
};

struct ChangePointSummary {
  double map = 0.0;  // from the MAP segmentation, on the time-label scale
  double mean = 0.0;
  Interval interval;
};

struct RegimeSummary {
  std::vector<ParameterSummary> parameters;
  ChangePointSummary change_point;
};

struct RunSummary {
  std::size_t draw_count = 0;
  std::map<std::size_t, double> posterior_K;
  std::size_t map_K = 0;
  std::size_t subset_count = 0;  // draws with K = map_K
  StateSequence map_segmentation;
  std::size_t map_draw_index = 0;
  std::vector<RegimeSummary> regimes;  // map_K entries, conditioned on K = map_K
  ParameterSummary beta;               // over all draws
  double level = 0.95;
};

/// posterior_K from draw frequencies (ties resolved toward smaller K), then
/// parameter and change-point summaries over the draws with K = map_K. The
/// MAP segmentation is the highest-log-posterior draw in that subset.
/// `time_labels` (optional) maps 1-based time indices to reported labels.
RunSummary summarize(std::span<const PosteriorDraw> draws, const EmissionFamily& family, double level = 0.95,
                     std::span<const double> time_labels = {});

}  // namespace dpcp
