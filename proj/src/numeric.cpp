#include "dpcp/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dpcp/errors.hpp"

namespace dpcp {

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_sum_exp(std::span<const double> log_weights) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double w : log_weights) hi = std::max(hi, w);
  if (!std::isfinite(hi)) return hi;
  double acc = 0.0;
  for (double w : log_weights) acc += std::exp(w - hi);
  return hi + std::log(acc);
}

std::vector<double> normalize_log_weights(std::span<const double> log_weights) {
  const double total = log_sum_exp(log_weights);
  if (!std::isfinite(total)) throw NumericError("categorical weights have no finite mass");
  std::vector<double> p(log_weights.size());
  std::transform(log_weights.begin(), log_weights.end(), p.begin(),
                 [total](double w) { return std::exp(w - total); });
  return p;
}

std::size_t sample_log_categorical(std::span<const double> log_weights, RandomStream& rng) {
  const double total = log_sum_exp(log_weights);
  if (!std::isfinite(total)) throw NumericError("categorical weights have no finite mass");
  const double u = rng.uniform();
  double cdf = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    const double p = std::exp(log_weights[i] - total);
    if (p > 0.0) last_positive = i;
    cdf += p;
    if (u < cdf) return i;
  }
  // rounding left cdf slightly below one
  return last_positive;
}

double half_normal_log_density(double x, double variance) {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  return 0.5 * std::log(2.0 / (M_PI * variance)) - 0.5 * x * x / variance;
}

}  // namespace dpcp
