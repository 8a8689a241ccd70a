#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dpcp/random.hpp"

namespace dpcp {

inline constexpr double kLogTwoPi = 1.8378770664093454835606594728112;

/// Reentrant log|Γ(x)|.
double log_gamma(double x);

/// log Σ exp(w_i); -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> log_weights);

/// exp(w_i - log_sum_exp(w)); sums to one.
std::vector<double> normalize_log_weights(std::span<const double> log_weights);

/// Inverse-CDF draw over log-sum-exp-normalized weights, scanning in listed order.
std::size_t sample_log_categorical(std::span<const double> log_weights, RandomStream& rng);

/// log of the half-normal density with variance parameter `variance`, for x > 0.
double half_normal_log_density(double x, double variance);

}  // namespace dpcp
