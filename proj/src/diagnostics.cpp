#include "dpcp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "dpcp/errors.hpp"

namespace dpcp {

namespace {

double pairs(double n) { return n * (n - 1.0) / 2.0; }

std::vector<double> sorted_copy(std::span<const double> xs, double level) {
  if (xs.empty()) throw InvalidInput("interval of an empty sample");
  if (!(level >= 0.0 && level <= 1.0)) throw InvalidInput("level must lie in [0, 1]");
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  return v;
}

ParameterSummary summarize_values(std::string name, std::span<const double> xs, double level) {
  ParameterSummary s;
  s.name = std::move(name);
  double acc = 0.0;
  for (double x : xs) acc += x;
  s.mean = acc / static_cast<double>(xs.size());
  s.interval = equal_tailed_interval(xs, level);
  return s;
}

}  // namespace

double rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw InvalidInput("partitions have different lengths");
  if (a.empty()) throw InvalidInput("empty partitions");
  const double n = static_cast<double>(a.size());
  if (a.size() == 1) return 1.0;
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  double together_both = 0.0, together_a = 0.0, together_b = 0.0;
  for (const auto& [key, c] : joint) together_both += pairs(c);
  for (const auto& [key, c] : rows) together_a += pairs(c);
  for (const auto& [key, c] : cols) together_b += pairs(c);
  const double total = pairs(n);
  // agreements = pairs together in both + pairs apart in both
  return (total + 2.0 * together_both - together_a - together_b) / total;
}

double rand_index(const StateSequence& a, const StateSequence& b) {
  const auto la = a.labels();
  const auto lb = b.labels();
  return rand_index(std::span<const int>(la), std::span<const int>(lb));
}

double quantile(std::vector<double> xs, double p) {
  if (xs.empty()) throw InvalidInput("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("quantile probability must lie in [0, 1]");
  std::sort(xs.begin(), xs.end());
  const double h = (static_cast<double>(xs.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

Interval equal_tailed_interval(std::span<const double> xs, double level) {
  const auto v = sorted_copy(xs, level);
  const double tail = (1.0 - level) / 2.0;
  auto q = [&](double p) {
    const double h = (static_cast<double>(v.size()) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  return {q(tail), q(1.0 - tail)};
}

Interval discrete_interval(std::span<const double> xs, double level) {
  const auto v = sorted_copy(xs, level);
  const double n = static_cast<double>(v.size());
  const double tail = (1.0 - level) / 2.0;
  // smallest order statistic whose empirical CDF reaches p
  auto at = [&](double p) {
    double idx = std::ceil(n * p - 1e-9);
    idx = std::clamp(idx, 1.0, n);
    return v[static_cast<std::size_t>(idx) - 1];
  };
  return {at(tail), at(1.0 - tail)};
}

RunSummary summarize(std::span<const PosteriorDraw> draws, const EmissionFamily& family, double level,
                     std::span<const double> time_labels) {
  if (draws.empty()) throw InvalidInput("no draws to summarize");
  if (!(level > 0.0 && level <= 1.0)) throw InvalidInput("level must lie in (0, 1]");
  auto label = [&](std::size_t t) {
    return time_labels.empty() ? static_cast<double>(t) : time_labels[t - 1];
  };

  RunSummary out;
  out.level = level;
  out.draw_count = draws.size();
  std::map<std::size_t, std::size_t> counts;
  for (const auto& d : draws) ++counts[d.regime_count()];
  std::size_t best = 0;
  for (const auto& [k, c] : counts) {
    out.posterior_K[k] = static_cast<double>(c) / static_cast<double>(draws.size());
    if (c > best) {
      best = c;
      out.map_K = k;
    }
  }
  out.subset_count = best;

  const std::size_t K = out.map_K;
  const std::size_t dim = family.dimension();
  const auto names = family.parameter_names();
  std::vector<std::vector<double>> values(K * dim), ends(K);
  bool have_map = false;
  double best_lp = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const auto& d = draws[i];
    if (d.regime_count() != K) continue;
    if (!have_map || d.log_posterior > best_lp) {
      have_map = true;
      best_lp = d.log_posterior;
      out.map_draw_index = i;
    }
    for (std::size_t k = 0; k < K; ++k) {
      const auto v = family.parameter_values(d.thetas[k]);
      for (std::size_t p = 0; p < dim; ++p) values[k * dim + p].push_back(v[p]);
      ends[k].push_back(label(d.seq.last(k + 1)));
    }
  }
  out.map_segmentation = draws[out.map_draw_index].seq;

  for (std::size_t k = 0; k < K; ++k) {
    RegimeSummary r;
    for (std::size_t p = 0; p < dim; ++p) {
      r.parameters.push_back(summarize_values(names[p], values[k * dim + p], level));
    }
    r.change_point.map = label(out.map_segmentation.last(k + 1));
    double acc = 0.0;
    for (double e : ends[k]) acc += e;
    r.change_point.mean = acc / static_cast<double>(ends[k].size());
    r.change_point.interval = discrete_interval(ends[k], level);
    out.regimes.push_back(std::move(r));
  }

  std::vector<double> betas;
  betas.reserve(draws.size());
  for (const auto& d : draws) betas.push_back(d.beta);
  out.beta = summarize_values("beta", betas, level);
  return out;
}

}  // namespace dpcp
