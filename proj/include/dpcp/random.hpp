#pragma once

#include <cstdint>
#include <random>

namespace dpcp {

/// Seeded pseudo-random source shared by every sampler. One stream per chain;
/// streams are never shared between threads.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0) : engine_(seed) {}

  double uniform();  // in (0, 1)
  double normal() { return std_normal_(engine_); }
  double normal(double mean, double sd) { return mean + sd * normal(); }
  /// Gamma with shape/rate parameterization (mean shape / rate).
  double gamma(double shape, double rate);
  double beta(double a, double b);
  /// |Z| with Z ~ N(0, variance).
  double half_normal(double variance);
  std::uint64_t next_u64() { return engine_(); }

  /// Independent stream for replicate `index`; deterministic in (seed, index).
  static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> std_normal_{0.0, 1.0};
};

}  // namespace dpcp
