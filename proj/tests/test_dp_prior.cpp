#include <doctest.h>

#include <cmath>
#include <vector>

#include "dpcp/dp_sampler.hpp"
#include "dpcp/errors.hpp"
#include "dpcp/numeric.hpp"
#include "dpcp/random.hpp"
#include "support.hpp"

using namespace dpcp;

namespace {

// Σ_t log f(s_t | s_{t-1}) along the path.
double sequential_log_prior(const std::vector<int>& s, double beta) {
  double acc = 0.0;
  std::size_t run = 0;  // self-transitions of the current label so far
  for (std::size_t t = 1; t < s.size(); ++t) {
    acc += transition_logprob(s[t], s[t - 1], run, beta);
    run = s[t] == s[t - 1] ? run + 1 : 0;
  }
  return acc;
}

}  // namespace

TEST_CASE("transition probabilities") {
  CHECK(transition_logprob(1, 1, 0, 2.0) == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-14));
  CHECK(transition_logprob(2, 1, 0, 2.0) == doctest::Approx(std::log(2.0 / 3.0)).epsilon(1e-14));
  CHECK(transition_logprob(3, 3, 100000000, 2.0) > -1e-7);
  CHECK_THROWS_AS(transition_logprob(3, 1, 0, 2.0), InvalidTransition);
  CHECK_THROWS_AS(transition_logprob(1, 2, 0, 2.0), InvalidTransition);
  RandomStream rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double beta = 0.01 + 50.0 * rng.uniform();
    const auto n = static_cast<std::size_t>(rng.uniform() * 100);
    const double total = std::exp(transition_logprob(2, 2, n, beta)) + std::exp(transition_logprob(3, 2, n, beta));
    REQUIRE(total == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("self-reinforcement and the odds of a new regime") {
  for (double beta : {0.01, 0.5, 1.0, 7.0, 50.0}) {
    double prev = -INFINITY;
    for (std::size_t n = 0; n < 200; ++n) {
      const double p = std::exp(transition_logprob(1, 1, n, beta));
      REQUIRE(p > prev);
      prev = p;
    }
    const double odds = std::exp(transition_logprob(2, 1, 0, beta) - transition_logprob(1, 1, 0, beta));
    CHECK(odds == doctest::Approx(beta).epsilon(1e-14));
  }
}

TEST_CASE("sequence prior small cases") {
  CHECK(seq_log_prior(StateSequence::single_regime(1), 3.0) == 0.0);
  const std::vector<int> s{1, 1, 2, 2, 3};
  CHECK(seq_log_prior(StateSequence::from_labels(s), 0.5) ==
        doctest::Approx(sequential_log_prior(s, 0.5)).epsilon(1e-12));
  double total = 0.0;
  const auto all = testsupport::all_staircases(4);
  CHECK(all.size() == 8);
  for (const auto& l : all) total += std::exp(seq_log_prior(StateSequence::from_labels(l), 1.7));
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sequence prior sums to one over all staircases") {
  RandomStream rng(4);
  for (std::size_t T = 1; T <= 12; ++T) {
    const auto all = testsupport::all_staircases(T);
    for (int rep = 0; rep < 5; ++rep) {
      const double beta = 0.01 + 49.99 * rng.uniform();
      std::vector<double> lp;
      for (const auto& l : all) lp.push_back(seq_log_prior(StateSequence::from_labels(l), beta));
      REQUIRE(std::exp(log_sum_exp(lp)) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("factorized prior equals the product of transitions") {
  RandomStream rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t T = 1 + static_cast<std::size_t>(rng.uniform() * 60);
    const double beta = 0.01 + 49.99 * rng.uniform();
    const double pj = rng.uniform();
    std::vector<int> l{1};
    for (std::size_t t = 1; t < T; ++t) l.push_back(l.back() + (rng.uniform() < pj ? 1 : 0));
    const double a = seq_log_prior(StateSequence::from_labels(l), beta);
    const double b = sequential_log_prior(l, beta);
    REQUIRE(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("gamma terms") {
  for (double beta : {0.1, 1.0, 3.3}) CHECK(gamma_log(1, 0.0, beta) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(gamma_log(0, 0.0, 1.0) == doctest::Approx(std::log(0.5)).epsilon(1e-14));
  // Γ(x+1) = xΓ(x) gives γ_1(n) = γ_0(n)·(n+1+β).
  RandomStream rng(6);
  for (int i = 0; i < 10000; ++i) {
    const double n = std::floor(rng.uniform() * 500);
    const double beta = 0.01 + 50.0 * rng.uniform();
    const double diff = gamma_log(1, n, beta) - gamma_log(0, n, beta);
    REQUIRE(std::abs(std::exp(diff) / (n + 1.0 + beta) - 1.0) < 1e-10);
  }
}

TEST_CASE("beta target on a one-regime pair") {
  // K=1, T=2: target ∝ prior/(1+β)
  const auto seq = StateSequence::single_regime(2);
  const double v = 10.0;
  for (double b : {0.1, 0.7, 2.0, 9.0}) {
    const double expected = half_normal_log_density(b, v) - std::log(1.0 + b);
    const double base = half_normal_log_density(1.0, v) - std::log(2.0);
    CHECK(beta_log_target(seq, b, v) - beta_log_target(seq, 1.0, v) ==
          doctest::Approx(expected - base).epsilon(1e-12));
  }
}
