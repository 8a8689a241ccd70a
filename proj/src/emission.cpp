#include "dpcp/emission.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpcp/errors.hpp"
#include "dpcp/numeric.hpp"

namespace dpcp {

namespace {

bool is_count(double y) { return y >= 0.0 && std::floor(y) == y; }

void require_positive(double v, const char* what) {
  if (!(std::isfinite(v) && v > 0.0)) throw InvalidInput(std::string(what) + " must be finite and > 0");
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidInput(std::string(what) + " must be finite");
}

double normal_log_density(double x, double mean, double variance) {
  const double d = x - mean;
  return -0.5 * (kLogTwoPi + std::log(variance) + d * d / variance);
}

double inverse_gamma_log_density(double x, double shape, double rate) {
  return shape * std::log(rate) - log_gamma(shape) - (shape + 1.0) * std::log(x) - rate / x;
}

double gamma_log_density(double x, double shape, double rate) {
  return shape * std::log(rate) - log_gamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

// Σ (y - a - b t)^2 from accumulated moments; clamped against rounding.
double residual_ss(const SufficientStats& s, double a, double b) {
  const double ss = s.sum_y2 - 2.0 * a * s.sum_y - 2.0 * b * s.sum_ty + s.n * a * a +
                    2.0 * a * b * s.sum_t + b * b * s.sum_t2;
  return std::max(ss, 0.0);
}

double draw_inverse_gamma(double shape, double rate, RandomStream& rng) {
  return 1.0 / rng.gamma(shape, rate);
}

void check_stats(const SufficientStats& s) {
  if (!(std::isfinite(s.n) && std::isfinite(s.sum_y) && std::isfinite(s.sum_y2) &&
        std::isfinite(s.sum_t) && std::isfinite(s.sum_t2) && std::isfinite(s.sum_ty))) {
    throw NumericError("non-finite sufficient statistics");
  }
}

}  // namespace

RegimeData::RegimeData(std::vector<Observation> obs) {
  obs_.reserve(obs.size());
  for (const auto& o : obs) push_back(o.t, o.y);
}

void RegimeData::push_back(std::size_t t, double y) {
  if (t < 1) throw InvalidInput("time indices start at 1");
  if (!obs_.empty() && t <= obs_.back().t) throw InvalidInput("time indices must be strictly increasing");
  obs_.push_back({t, y});
}

void SufficientStats::add(std::size_t t, double y) {
  const double td = static_cast<double>(t);
  n += 1.0;
  sum_y += y;
  sum_y2 += y * y;
  sum_t += td;
  sum_t2 += td * td;
  sum_ty += td * y;
  if (is_count(y)) sum_log_factorial += log_gamma(y + 1.0);
}

void SufficientStats::remove(std::size_t t, double y) {
  const double td = static_cast<double>(t);
  n -= 1.0;
  sum_y -= y;
  sum_y2 -= y * y;
  sum_t -= td;
  sum_t2 -= td * td;
  sum_ty -= td * y;
  if (is_count(y)) sum_log_factorial -= log_gamma(y + 1.0);
}

SufficientStats& SufficientStats::operator+=(const SufficientStats& o) {
  n += o.n;
  sum_y += o.sum_y;
  sum_y2 += o.sum_y2;
  sum_t += o.sum_t;
  sum_t2 += o.sum_t2;
  sum_ty += o.sum_ty;
  sum_log_factorial += o.sum_log_factorial;
  return *this;
}

SufficientStats& SufficientStats::operator-=(const SufficientStats& o) {
  n -= o.n;
  sum_y -= o.sum_y;
  sum_y2 -= o.sum_y2;
  sum_t -= o.sum_t;
  sum_t2 -= o.sum_t2;
  sum_ty -= o.sum_ty;
  sum_log_factorial -= o.sum_log_factorial;
  return *this;
}

EmissionFamily::EmissionFamily(PriorHyper prior) : prior_(prior) {
  if (const auto* p = std::get_if<NormalMeanVarPrior>(&prior_)) {
    kind_ = EmissionKind::NormalMeanVar;
    require_finite(p->mean, "mean-prior mean");
    require_positive(p->mean_variance, "mean-prior variance");
    require_positive(p->shape, "variance-prior shape");
    require_positive(p->rate, "variance-prior rate");
  } else if (const auto* p = std::get_if<PoissonRatePrior>(&prior_)) {
    kind_ = EmissionKind::PoissonRate;
    require_positive(p->shape, "rate-prior shape");
    require_positive(p->rate, "rate-prior rate");
  } else {
    const auto& q = std::get<LinearTrendPrior>(prior_);
    kind_ = EmissionKind::NormalLinearTrend;
    require_finite(q.intercept_mean, "intercept-prior mean");
    require_finite(q.slope_mean, "slope-prior mean");
    require_positive(q.intercept_variance, "intercept-prior variance");
    require_positive(q.slope_variance, "slope-prior variance");
    require_positive(q.shape, "variance-prior shape");
    require_positive(q.rate, "variance-prior rate");
  }
}

EmissionFamily EmissionFamily::from_name(const std::string& name) {
  if (name == "normal") return normal_mean_var();
  if (name == "poisson") return poisson_rate();
  if (name == "lintrend") return linear_trend();
  throw InvalidInput("unknown emission family '" + name + "' (expected normal, poisson, lintrend)");
}

std::string EmissionFamily::name() const {
  switch (kind_) {
    case EmissionKind::NormalMeanVar: return "normal";
    case EmissionKind::PoissonRate: return "poisson";
    case EmissionKind::NormalLinearTrend: return "lintrend";
  }
  return "unknown";
}

double EmissionFamily::log_density(const RegimeParams& p, std::size_t t, double y) const {
  switch (kind_) {
    case EmissionKind::NormalMeanVar:
      return normal_log_density(y, p.level, p.variance);
    case EmissionKind::PoissonRate:
      return y * std::log(p.level) - p.level - log_gamma(y + 1.0);
    case EmissionKind::NormalLinearTrend:
      return normal_log_density(y, p.level + p.slope * static_cast<double>(t), p.variance);
  }
  return 0.0;
}

double EmissionFamily::log_likelihood(const RegimeParams& p, const SufficientStats& s) const {
  if (s.n <= 0.0) return 0.0;
  switch (kind_) {
    case EmissionKind::NormalMeanVar:
      return -0.5 * s.n * (kLogTwoPi + std::log(p.variance)) -
             0.5 * residual_ss(s, p.level, 0.0) / p.variance;
    case EmissionKind::PoissonRate:
      return s.sum_y * std::log(p.level) - s.n * p.level - s.sum_log_factorial;
    case EmissionKind::NormalLinearTrend:
      return -0.5 * s.n * (kLogTwoPi + std::log(p.variance)) -
             0.5 * residual_ss(s, p.level, p.slope) / p.variance;
  }
  return 0.0;
}

double EmissionFamily::log_prior(const RegimeParams& p) const {
  switch (kind_) {
    case EmissionKind::NormalMeanVar: {
      const auto& h = std::get<NormalMeanVarPrior>(prior_);
      return normal_log_density(p.level, h.mean, h.mean_variance) +
             inverse_gamma_log_density(p.variance, h.shape, h.rate);
    }
    case EmissionKind::PoissonRate: {
      const auto& h = std::get<PoissonRatePrior>(prior_);
      return gamma_log_density(p.level, h.shape, h.rate);
    }
    case EmissionKind::NormalLinearTrend: {
      const auto& h = std::get<LinearTrendPrior>(prior_);
      return normal_log_density(p.level, h.intercept_mean, h.intercept_variance) +
             normal_log_density(p.slope, h.slope_mean, h.slope_variance) +
             inverse_gamma_log_density(p.variance, h.shape, h.rate);
    }
  }
  return 0.0;
}

RegimeParams EmissionFamily::draw_prior(RandomStream& rng) const {
  switch (kind_) {
    case EmissionKind::NormalMeanVar: {
      const auto& h = std::get<NormalMeanVarPrior>(prior_);
      const double mu = rng.normal(h.mean, std::sqrt(h.mean_variance));
      return RegimeParams::normal(mu, draw_inverse_gamma(h.shape, h.rate, rng));
    }
    case EmissionKind::PoissonRate: {
      const auto& h = std::get<PoissonRatePrior>(prior_);
      return RegimeParams::poisson(rng.gamma(h.shape, h.rate));
    }
    case EmissionKind::NormalLinearTrend: {
      const auto& h = std::get<LinearTrendPrior>(prior_);
      const double a = rng.normal(h.intercept_mean, std::sqrt(h.intercept_variance));
      const double b = rng.normal(h.slope_mean, std::sqrt(h.slope_variance));
      return RegimeParams::trend(a, b, draw_inverse_gamma(h.shape, h.rate, rng));
    }
  }
  return {};
}

RegimeParams EmissionFamily::posterior_draw(const SufficientStats& s, const RegimeParams& current,
                                            RandomStream& rng) const {
  check_stats(s);
  switch (kind_) {
    case EmissionKind::NormalMeanVar: {
      const auto& h = std::get<NormalMeanVarPrior>(prior_);
      const double s2 = current.variance > 0.0 ? current.variance : draw_inverse_gamma(h.shape, h.rate, rng);
      const double precision = 1.0 / h.mean_variance + s.n / s2;
      const double mean = (h.mean / h.mean_variance + s.sum_y / s2) / precision;
      const double mu = mean + rng.normal() / std::sqrt(precision);
      const double ss = residual_ss(s, mu, 0.0);
      return RegimeParams::normal(mu, draw_inverse_gamma(h.shape + 0.5 * s.n, h.rate + 0.5 * ss, rng));
    }
    case EmissionKind::PoissonRate: {
      const auto& h = std::get<PoissonRatePrior>(prior_);
      return RegimeParams::poisson(rng.gamma(h.shape + s.sum_y, h.rate + s.n));
    }
    case EmissionKind::NormalLinearTrend: {
      const auto& h = std::get<LinearTrendPrior>(prior_);
      const double s2 = current.variance > 0.0 ? current.variance : draw_inverse_gamma(h.shape, h.rate, rng);
      // Conditional precision matrix [[a, c], [c, d]] and canonical mean vector (u, v).
      const double a = 1.0 / h.intercept_variance + s.n / s2;
      const double c = s.sum_t / s2;
      const double d = 1.0 / h.slope_variance + s.sum_t2 / s2;
      const double u = h.intercept_mean / h.intercept_variance + s.sum_y / s2;
      const double v = h.slope_mean / h.slope_variance + s.sum_ty / s2;
      const double l11 = std::sqrt(a);
      const double l21 = c / l11;
      const double l22sq = d - l21 * l21;
      if (!(l22sq > 0.0)) throw NumericError("trend coefficient precision is not positive definite");
      const double l22 = std::sqrt(l22sq);
      // Solve L w = (u, v), then L^T m = w for the mean; noise is L^T x = z.
      const double w1 = u / l11;
      const double w2 = (v - l21 * w1) / l22;
      const double z1 = rng.normal();
      const double z2 = rng.normal();
      const double b1 = (w2 + z2) / l22;
      const double b0 = (w1 + z1 - l21 * b1) / l11;
      const double ss = residual_ss(s, b0, b1);
      return RegimeParams::trend(b0, b1, draw_inverse_gamma(h.shape + 0.5 * s.n, h.rate + 0.5 * ss, rng));
    }
  }
  return {};
}

namespace {

// Least-squares shape of a block: the fitted proposal centres on these.
struct BlockFit {
  bool usable = false;
  double shape = 0.0, rate = 0.0;   // variance ~ IG(shape, rate), or Poisson rate ~ G(shape, rate)
  double centre = 0.0, tbar = 0.0;  // level at the block's mean time
  double slope = 0.0, stt = 0.0;
};

BlockFit block_fit(EmissionKind kind, const PriorHyper& prior, const SufficientStats& s) {
  BlockFit f;
  if (s.n < 1.0) return f;
  const double ybar = s.sum_y / s.n;
  const double syy = std::max(s.sum_y2 - s.n * ybar * ybar, 0.0);
  switch (kind) {
    case EmissionKind::NormalMeanVar: {
      const auto& h = std::get<NormalMeanVarPrior>(prior);
      f = {true, h.shape + 0.5 * s.n, h.rate + 0.5 * syy, ybar, 0.0, 0.0, 0.0};
      break;
    }
    case EmissionKind::PoissonRate: {
      const auto& h = std::get<PoissonRatePrior>(prior);
      f = {true, h.shape + s.sum_y, h.rate + s.n, 0.0, 0.0, 0.0, 0.0};
      break;
    }
    case EmissionKind::NormalLinearTrend: {
      if (s.n < 3.0) return f;
      const auto& h = std::get<LinearTrendPrior>(prior);
      const double tbar = s.sum_t / s.n;
      const double stt = s.sum_t2 - s.n * tbar * tbar;
      if (!(stt > 1e-9)) return f;
      const double sty = s.sum_ty - s.n * tbar * ybar;
      const double slope = sty / stt;
      const double rss = std::max(syy - slope * sty, 0.0);
      f = {true, h.shape + 0.5 * s.n, h.rate + 0.5 * rss, ybar, tbar, slope, stt};
      break;
    }
  }
  return f;
}

}  // namespace

RegimeParams EmissionFamily::fitted_draw(const SufficientStats& s, RandomStream& rng) const {
  const BlockFit f = block_fit(kind_, prior_, s);
  if (!f.usable) return draw_prior(rng);
  if (kind_ == EmissionKind::PoissonRate) return RegimeParams::poisson(rng.gamma(f.shape, f.rate));
  const double v = draw_inverse_gamma(f.shape, f.rate, rng);
  const double level = rng.normal(f.centre, std::sqrt(v / s.n));
  if (kind_ == EmissionKind::NormalMeanVar) return RegimeParams::normal(level, v);
  const double slope = rng.normal(f.slope, std::sqrt(v / f.stt));
  return RegimeParams::trend(level - slope * f.tbar, slope, v);
}

double EmissionFamily::fitted_log_density(const SufficientStats& s, const RegimeParams& p) const {
  const BlockFit f = block_fit(kind_, prior_, s);
  if (!f.usable) return log_prior(p);
  if (kind_ == EmissionKind::PoissonRate) return gamma_log_density(p.level, f.shape, f.rate);
  const double v = p.variance;
  double lp = inverse_gamma_log_density(v, f.shape, f.rate);
  if (kind_ == EmissionKind::NormalMeanVar) return lp + normal_log_density(p.level, f.centre, v / s.n);
  lp += normal_log_density(p.level + p.slope * f.tbar, f.centre, v / s.n);
  return lp + normal_log_density(p.slope, f.slope, v / f.stt);
}

std::size_t EmissionFamily::dimension() const {
  switch (kind_) {
    case EmissionKind::NormalMeanVar: return 2;
    case EmissionKind::PoissonRate: return 1;
    case EmissionKind::NormalLinearTrend: return 3;
  }
  return 0;
}

std::vector<std::string> EmissionFamily::parameter_names() const {
  switch (kind_) {
    case EmissionKind::NormalMeanVar: return {"mu", "sigma2"};
    case EmissionKind::PoissonRate: return {"lambda"};
    case EmissionKind::NormalLinearTrend: return {"mu0", "mu1", "sigma2"};
  }
  return {};
}

std::vector<double> EmissionFamily::parameter_values(const RegimeParams& p) const {
  switch (kind_) {
    case EmissionKind::NormalMeanVar: return {p.level, p.variance};
    case EmissionKind::PoissonRate: return {p.level};
    case EmissionKind::NormalLinearTrend: return {p.level, p.slope, p.variance};
  }
  return {};
}

RegimeParams EmissionFamily::from_values(std::span<const double> v) const {
  if (v.size() != dimension()) throw InvalidInput("parameter vector has the wrong length for " + name());
  switch (kind_) {
    case EmissionKind::NormalMeanVar: return RegimeParams::normal(v[0], v[1]);
    case EmissionKind::PoissonRate: return RegimeParams::poisson(v[0]);
    case EmissionKind::NormalLinearTrend: return RegimeParams::trend(v[0], v[1], v[2]);
  }
  return {};
}

void EmissionFamily::check_params(const RegimeParams& p) const {
  switch (kind_) {
    case EmissionKind::NormalMeanVar:
      require_finite(p.level, "mean");
      require_positive(p.variance, "variance");
      break;
    case EmissionKind::PoissonRate:
      require_positive(p.level, "rate");
      break;
    case EmissionKind::NormalLinearTrend:
      require_finite(p.level, "intercept");
      require_finite(p.slope, "slope");
      require_positive(p.variance, "variance");
      break;
  }
}

void EmissionFamily::check_observation(double y) const {
  require_finite(y, "observation");
  if (kind_ == EmissionKind::PoissonRate && !is_count(y)) {
    throw InvalidInput("Poisson observations must be non-negative integers");
  }
}

double log_obs_density(const EmissionFamily& family, const RegimeParams& params, std::size_t t,
                       double y) {
  family.check_params(params);
  family.check_observation(y);
  return family.log_density(params, t, y);
}

RegimeParams draw_prior(const EmissionFamily& family, RandomStream& rng) { return family.draw_prior(rng); }

SufficientStats sufficient_stats(const EmissionFamily& family, const RegimeData& data) {
  SufficientStats s;
  for (const auto& o : data.observations()) {
    family.check_observation(o.y);
    s.add(o.t, o.y);
  }
  return s;
}

RegimeParams posterior_draw(const EmissionFamily& family, const RegimeData& data, RandomStream& rng,
                            std::optional<RegimeParams> current) {
  const RegimeParams start = current ? *current : family.draw_prior(rng);
  return family.posterior_draw(sufficient_stats(family, data), start, rng);
}

PrefixStats::PrefixStats(std::span<const double> values) {
  cumulative_.resize(values.size() + 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    cumulative_[i + 1] = cumulative_[i];
    cumulative_[i + 1].add(i + 1, values[i]);
  }
}

SufficientStats PrefixStats::range(std::size_t first, std::size_t last) const {
  if (first < 1 || last < first || last >= cumulative_.size()) return {};
  return cumulative_[last] - cumulative_[first - 1];
}

}  // namespace dpcp
