#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dpcp/random.hpp"

namespace dpcp {

enum class EmissionKind { NormalMeanVar, PoissonRate, NormalLinearTrend };

// Independent normal prior on the mean, inverse-gamma prior on the variance.
struct NormalMeanVarPrior {
  double mean = 0.0;
  double mean_variance = 1000.0;
  double shape = 1.0;
  double rate = 1.0;
};

struct PoissonRatePrior {
  double shape = 2.0;
  double rate = 1.0;
};

// Independent normal priors on intercept and slope, inverse-gamma on the variance.
struct LinearTrendPrior {
  double intercept_mean = 0.0;
  double slope_mean = 0.0;
  double intercept_variance = 1000.0;
  double slope_variance = 1000.0;
  double shape = 1.0;
  double rate = 1.0;
};

using PriorHyper = std::variant<NormalMeanVarPrior, PoissonRatePrior, LinearTrendPrior>;

/// Per-regime parameter vector. Fields not used by a family stay zero.
struct RegimeParams {
  double level = 0.0;     // mean, Poisson rate, or trend intercept
  double slope = 0.0;     // trend slope per time unit
  double variance = 0.0;  // observation variance (normal families)

  static RegimeParams normal(double mean, double variance) { return {mean, 0.0, variance}; }
  static RegimeParams poisson(double rate) { return {rate, 0.0, 0.0}; }
  static RegimeParams trend(double intercept, double slope, double variance) {
    return {intercept, slope, variance};
  }

  bool operator==(const RegimeParams&) const = default;
};

struct Observation {
  std::size_t t;  // 1-based time index
  double y;
};

/// Observations currently allocated to one regime, in time order.
class RegimeData {
 public:
  RegimeData() = default;
  explicit RegimeData(std::vector<Observation> obs);

  void push_back(std::size_t t, double y);
  std::span<const Observation> observations() const { return obs_; }
  std::size_t size() const { return obs_.size(); }
  bool empty() const { return obs_.empty(); }

 private:
  std::vector<Observation> obs_;
};

/// Accumulators behind every conditional draw and segment likelihood.
struct SufficientStats {
  double n = 0.0;
  double sum_y = 0.0;
  double sum_y2 = 0.0;
  double sum_t = 0.0;
  double sum_t2 = 0.0;
  double sum_ty = 0.0;
  double sum_log_factorial = 0.0;  // Σ log y! (count data only)

  void add(std::size_t t, double y);
  void remove(std::size_t t, double y);
  SufficientStats& operator+=(const SufficientStats& other);
  SufficientStats& operator-=(const SufficientStats& other);
  friend SufficientStats operator+(SufficientStats a, const SufficientStats& b) { return a += b; }
  friend SufficientStats operator-(SufficientStats a, const SufficientStats& b) { return a -= b; }
};

class EmissionFamily {
 public:
  explicit EmissionFamily(PriorHyper prior);

  static EmissionFamily normal_mean_var(NormalMeanVarPrior p = {}) { return EmissionFamily(p); }
  static EmissionFamily poisson_rate(PoissonRatePrior p = {}) { return EmissionFamily(p); }
  static EmissionFamily linear_trend(LinearTrendPrior p = {}) { return EmissionFamily(p); }
  /// "normal", "poisson" or "lintrend" with the default hyperparameters.
  static EmissionFamily from_name(const std::string& name);

  EmissionKind kind() const { return kind_; }
  const PriorHyper& prior() const { return prior_; }
  std::string name() const;

  // Unchecked hot-path evaluations.
  double log_density(const RegimeParams& p, std::size_t t, double y) const;
  double log_likelihood(const RegimeParams& p, const SufficientStats& s) const;
  double log_prior(const RegimeParams& p) const;

  RegimeParams draw_prior(RandomStream& rng) const;
  /// One semi-conjugate cycle for the normal families (coefficients given the
  /// current variance, then variance given the new coefficients); an exact
  /// conjugate draw for Poisson. `current` only seeds the variance.
  RegimeParams posterior_draw(const SufficientStats& s, const RegimeParams& current,
                              RandomStream& rng) const;

  /// Independence proposal fitted to a block's data (least-squares centre,
  /// conjugate-style variance), and its log density. Falls back to the prior
  /// when the block is too short to fit.
  RegimeParams fitted_draw(const SufficientStats& s, RandomStream& rng) const;
  double fitted_log_density(const SufficientStats& s, const RegimeParams& p) const;

  std::size_t dimension() const;
  std::vector<std::string> parameter_names() const;
  std::vector<double> parameter_values(const RegimeParams& p) const;
  RegimeParams from_values(std::span<const double> values) const;

  /// Throws InvalidInput if `p` is outside the family's support.
  void check_params(const RegimeParams& p) const;
  /// Throws InvalidInput for non-finite values or non-count Poisson data.
  void check_observation(double y) const;

 private:
  EmissionKind kind_;
  PriorHyper prior_;
};

double log_obs_density(const EmissionFamily& family, const RegimeParams& params, std::size_t t,
                       double y);
RegimeParams draw_prior(const EmissionFamily& family, RandomStream& rng);
SufficientStats sufficient_stats(const EmissionFamily& family, const RegimeData& data);
RegimeParams posterior_draw(const EmissionFamily& family, const RegimeData& data, RandomStream& rng,
                            std::optional<RegimeParams> current = std::nullopt);

/// Cumulative statistics over a whole series; segment statistics in O(1).
class PrefixStats {
 public:
  PrefixStats() = default;
  explicit PrefixStats(std::span<const double> values);

  /// Statistics of times first..last (1-based, inclusive).
  SufficientStats range(std::size_t first, std::size_t last) const;
  std::size_t length() const { return cumulative_.empty() ? 0 : cumulative_.size() - 1; }

 private:
  std::vector<SufficientStats> cumulative_;
};

}  // namespace dpcp
