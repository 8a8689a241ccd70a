#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpcp/chain.hpp"
#include "dpcp/chib.hpp"
#include "dpcp/diagnostics.hpp"
#include "dpcp/dp_sampler.hpp"
#include "dpcp/io.hpp"
#include "dpcp/ko.hpp"

namespace dpcp {

enum class ModelKind { Dp, Chib, Ko };

ModelKind parse_model(const std::string& text);  // dp, chib, ko
std::string model_name(ModelKind m);

struct FitOptions {
  ModelKind model = ModelKind::Dp;
  ChainConfig chain;
  MoveConfig moves;
  std::vector<std::size_t> kstar_grid{4, 5, 6, 7, 8, 9, 10};
  KoConfig ko;
};

struct FitOutput {
  std::vector<PosteriorDraw> draws;  // for chib: draws of the selected K*
  std::optional<FiniteStudy> finite;
  double beta_acceptance = 0.0;
  std::vector<std::size_t> k_trace;
};

FitOutput fit_model(const TimeSeries& data, const EmissionFamily& family, const FitOptions& opts,
                    const std::function<void(const std::string&)>& warn = {});

struct StudyConfig {
  Scheme scheme = Scheme::One;
  std::size_t replicates = 20;
  std::uint64_t seed = 1;
  FitOptions fit;
};

struct ReplicateOutcome {
  std::size_t index = 0;
  std::uint64_t data_seed = 0;
  std::size_t map_K = 0;
  double rand_index = 0.0;
};

struct StudyReport {
  std::vector<ReplicateOutcome> replicates;
  std::map<std::size_t, std::size_t> map_K_counts;
  double rand_min = 0.0;
  double rand_median = 0.0;
  double rand_max = 0.0;

  std::size_t count_K(std::size_t k) const;
};

/// Simulate + fit per replicate with derived seeds; MAP K frequencies and the
/// Rand index of the MAP segmentation against the generating one.
/// `progress` is called after each replicate.
StudyReport replicate_study(const StudyConfig& cfg,
                            const std::function<void(const ReplicateOutcome&)>& progress = {});

}  // namespace dpcp
