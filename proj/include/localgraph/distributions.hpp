#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "localgraph/rng.hpp"
#include "localgraph/types.hpp"

namespace localgraph {

// A distribution over the integers [lo, hi] given by its CDF.
// eval(f) = P[F <= f]; eval must be non-decreasing with eval(hi) = 1.
struct DiscreteCdf {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::function<double(std::int64_t)> eval;
};

// Tolerance used when checking that a CDF or weight vector reaches 1.
inline constexpr double kMassTolerance = 0x1.0p-40;

// Smallest f in [lo, hi] with eval(f) > u, found by binary search. A hint
// near the answer makes the search gallop outward from it first; the result
// does not depend on the hint.
// Throws Fault when the search observes a non-monotone or out-of-range value.
template <class Eval>
std::int64_t invert_monotone(std::int64_t lo, std::int64_t hi, const Eval& eval, double u,
                             std::optional<std::int64_t> hint = std::nullopt);

std::int64_t invert_cdf(const DiscreteCdf& cdf, double u);

// Draws one word and inverts the CDF at it.
std::int64_t sample_cdf_inverse(const DiscreteCdf& cdf, RandomSource& src);

// (1-p)^k and k*log(1-p), with the conventions 0^0 = 1 and log(0) = -inf.
double pow1m(double p, Count k);
double log_pow1m(double p, Count k);

bool sample_bernoulli(double p, RandomSource& src);

// Index of the first success of i.i.d. Bernoulli(p) trials.
std::int64_t sample_geometric(double p, RandomSource& src);

// First success among t Bernoulli(p) trials, or t+1 when all fail.
std::int64_t sample_exactf(double p, Count t, RandomSource& src);

Count sample_binomial(Count n, double p, RandomSource& src);

// Number of color-1 marbles when drawing `draws` marbles without replacement
// from an urn with c1 marbles of color 1 and c2 of color 2. One word.
Count sample_hypergeometric(Count c1, Count c2, Count draws, RandomSource& src);

// Sequential conditional binomials; consumes weights.size()-1 words.
std::vector<Count> sample_multinomial(Count n, std::span<const double> weights,
                                      RandomSource& src);

[[noreturn]] void throw_bad_cdf(const char* what, std::int64_t at, double value);

template <class Eval>
std::int64_t invert_monotone(std::int64_t lo, std::int64_t hi, const Eval& eval, double u,
                             std::optional<std::int64_t> hint) {
  if (lo > hi) throw_bad_cdf("empty domain", lo, 0.0);
  const double top = eval(hi);
  if (!(top >= 1.0 - kMassTolerance && top <= 1.0 + kMassTolerance)) {
    throw_bad_cdf("cdf does not reach 1 at domain end", hi, top);
  }
  // Invariant: eval(left) <= u < eval(right), with eval(lo - 1) taken as 0.
  std::int64_t left = lo - 1;
  std::int64_t right = hi;
  double left_value = 0.0;
  double right_value = top;
  auto probe = [&](std::int64_t x) {
    const double c = eval(x);
    if (!(c >= left_value && c <= right_value)) throw_bad_cdf("cdf is not monotone", x, c);
    if (c > u) {
      right = x;
      right_value = c;
      return true;
    }
    left = x;
    left_value = c;
    return false;
  };
  if (hint && lo < hi) {
    if (probe(std::clamp(*hint, lo, hi - 1))) {
      for (std::int64_t step = 1; right - left > 1; step *= 2) {
        if (!probe(std::max(left + 1, right - step))) break;
      }
    } else {
      for (std::int64_t step = 1; right - left > 1; step *= 2) {
        if (probe(std::min(right - 1, left + step))) break;
      }
    }
  }
  while (right - left > 1) probe(left + 1 + (right - left - 1) / 2);
  return right;
}

}  // namespace localgraph
