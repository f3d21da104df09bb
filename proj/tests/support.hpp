#pragma once

#include <cmath>
#include <cstdint>

// |count - trials*p| <= k * sqrt(trials*p*(1-p))
inline bool within_sigma(double count, double trials, double p, double k = 3.0) {
  const double sd = std::sqrt(trials * p * (1.0 - p));
  return std::abs(count - trials * p) <= k * sd + 1e-9;
}

inline bool mean_within_sigma(double mean, double expected, double variance, double trials, double k = 3.0) {
  return std::abs(mean - expected) <= k * std::sqrt(variance / trials);
}
