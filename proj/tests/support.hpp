#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "dpcp/chib.hpp"
#include "dpcp/emission.hpp"
#include "dpcp/numeric.hpp"
#include "dpcp/random.hpp"
#include "dpcp/sequence.hpp"

namespace testsupport {

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

// Asymptotic two-sample KS critical value at significance alpha.
inline double ks_critical(std::size_t n, std::size_t m, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * static_cast<double>(m)));
}

// KS distance between a sample and a CDF given on a sorted grid (linear interpolation).
inline double ks_against_grid(std::vector<double> xs, const std::vector<double>& grid, const std::vector<double>& cdf) {
  std::sort(xs.begin(), xs.end());
  auto F = [&](double x) {
    if (x <= grid.front()) return 0.0;
    if (x >= grid.back()) return 1.0;
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - grid.begin());
    const double w = (x - grid[k - 1]) / (grid[k] - grid[k - 1]);
    return cdf[k - 1] + w * (cdf[k] - cdf[k - 1]);
  };
  double d = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = F(xs[i]);
    d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  return d;
}

// CDF on a grid of a 1-D unnormalized log density (trapezoid rule).
inline std::vector<double> grid_cdf(const std::vector<double>& grid, const std::function<double(double)>& log_density) {
  std::vector<double> lp(grid.size());
  double mx = -INFINITY;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    lp[i] = log_density(grid[i]);
    mx = std::max(mx, lp[i]);
  }
  std::vector<double> cdf(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    cdf[i] = cdf[i - 1] + 0.5 * (std::exp(lp[i] - mx) + std::exp(lp[i - 1] - mx)) * (grid[i] - grid[i - 1]);
  }
  for (double& c : cdf) c /= cdf.back();
  return cdf;
}

inline double chi_square_quantile(double df, double p) {
  return boost::math::quantile(boost::math::chi_squared(df), p);
}

// Pearson statistic for observed counts against probabilities; cells with
// tiny expected counts are pooled into one.
inline std::pair<double, double> pearson(const std::vector<double>& observed, const std::vector<double>& probs,
                                         double n) {
  double stat = 0.0, pooled_o = 0.0, pooled_e = 0.0;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double e = n * probs[i];
    if (e < 5.0) {
      pooled_o += observed[i];
      pooled_e += e;
      continue;
    }
    stat += (observed[i] - e) * (observed[i] - e) / e;
    ++cells;
  }
  if (pooled_e > 0.0) {
    stat += (pooled_o - pooled_e) * (pooled_o - pooled_e) / std::max(pooled_e, 1e-300);
    ++cells;
  }
  return {stat, static_cast<double>(cells) - 1.0};
}

// All staircase label vectors of length T.
inline std::vector<std::vector<int>> all_staircases(std::size_t T) {
  std::vector<std::vector<int>> out;
  const std::size_t count = std::size_t{1} << (T - 1);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<int> s{1};
    for (std::size_t t = 1; t < T; ++t) s.push_back(s.back() + static_cast<int>((mask >> (t - 1)) & 1u));
    out.push_back(std::move(s));
  }
  return out;
}

// Every constrained path of length T that starts in 1 and ends in K*, with
// its joint log weight log P(s) + log P(y | s) under (θ, π).
struct EnumeratedPath {
  std::vector<int> labels;
  double log_prior;
  double log_joint;
};
inline std::vector<EnumeratedPath> enumerate_paths(std::span<const double> values, const dpcp::EmissionFamily& fam,
                                                   std::span<const dpcp::RegimeParams> thetas,
                                                   const dpcp::FiniteTransition& trans) {
  std::vector<EnumeratedPath> out;
  for (auto& l : all_staircases(values.size())) {
    if (static_cast<std::size_t>(l.back()) != trans.regimes) continue;
    double lp = 0.0, ll = 0.0;
    for (std::size_t t = 0; t < l.size(); ++t) {
      if (t > 0) {
        const auto k = static_cast<std::size_t>(l[t - 1]);
        lp += l[t] == l[t - 1] ? trans.log_stay(k) : trans.log_leave(k);
      }
      ll += fam.log_density(thetas[static_cast<std::size_t>(l[t] - 1)], t + 1, values[t]);
    }
    out.push_back({std::move(l), lp, lp + ll});
  }
  return out;
}

// Pearson test of FFBS path frequencies against enumeration. Returns
// (statistic, critical value at significance alpha).
inline std::pair<double, double> ffbs_chi_square(std::span<const double> values, const dpcp::EmissionFamily& fam,
                                                 std::span<const dpcp::RegimeParams> thetas,
                                                 const dpcp::FiniteTransition& trans, std::size_t draws,
                                                 double alpha, dpcp::RandomStream& rng) {
  const auto paths = enumerate_paths(values, fam, thetas, trans);
  std::map<std::vector<int>, std::size_t> index;
  std::vector<double> lw;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    index[paths[i].labels] = i;
    lw.push_back(paths[i].log_joint);
  }
  const auto probs = dpcp::normalize_log_weights(lw);
  std::vector<double> counts(paths.size(), 0.0);
  for (std::size_t i = 0; i < draws; ++i) {
    counts[index.at(dpcp::ffbs_states(values, fam, thetas, trans, rng).labels())] += 1.0;
  }
  const auto [stat, df] = pearson(counts, probs, static_cast<double>(draws));
  if (df < 1.0) return {0.0, 0.0};
  return {stat, chi_square_quantile(df, 1.0 - alpha)};
}

// Batch-means Monte Carlo standard error of the mean.
inline std::pair<double, double> mean_and_mcse(const std::vector<double>& x, std::size_t batches = 50) {
  const std::size_t bs = x.size() / batches;
  double m = 0.0;
  for (double v : x) m += v;
  m /= static_cast<double>(x.size());
  double var = 0.0;
  for (std::size_t b = 0; b < batches; ++b) {
    double mb = 0.0;
    for (std::size_t i = b * bs; i < (b + 1) * bs; ++i) mb += x[i];
    mb /= static_cast<double>(bs);
    var += (mb - m) * (mb - m);
  }
  var /= static_cast<double>(batches - 1);
  return {m, std::sqrt(var / static_cast<double>(batches))};
}

}  // namespace testsupport
