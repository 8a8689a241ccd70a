#include "dpcp/random.hpp"

#include <cmath>

namespace dpcp {

double RandomStream::uniform() {
  // 53 random bits mapped into the open interval.
  for (;;) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

double RandomStream::gamma(double shape, double rate) {
  std::gamma_distribution<double> dist(shape, 1.0 / rate);
  return dist(engine_);
}

double RandomStream::beta(double a, double b) {
  const double x = gamma(a, 1.0);
  const double y = gamma(b, 1.0);
  return x / (x + y);
}

double RandomStream::half_normal(double variance) { return std::abs(normal()) * std::sqrt(variance); }

std::uint64_t RandomStream::derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer over base + index
  std::uint64_t z = base + index + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace dpcp
