#include "localgraph/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace localgraph {

namespace {

void require_probability(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Fault(std::string(who) + ": probability outside [0,1]: " + std::to_string(p));
  }
}

// Geometric draws are truncated here; the mass beyond it is (1-p)^(2^62).
constexpr std::int64_t kGeometricCap = std::int64_t{1} << 62;

// Samples a unimodal pmf on [lo, hi] given its successive ratios
// ratio(k) = pmf(k+1)/pmf(k). Terms below 2^-80 of the mode are dropped,
// the remaining window is normalized into a CDF and inverted with one word.
template <class Ratio>
std::int64_t sample_unimodal(std::int64_t lo, std::int64_t hi, std::int64_t mode,
                             Ratio ratio, RandomSource& src) {
  constexpr double kCut = 0x1.0p-80;
  thread_local std::vector<double> below;
  thread_local std::vector<double> cum;
  below.clear();
  cum.clear();
  double w = 1.0;
  for (std::int64_t k = mode; k > lo; --k) {
    w /= ratio(k - 1);
    if (!(w > kCut)) break;
    below.push_back(w);
  }
  const std::int64_t window_lo = mode - static_cast<std::int64_t>(below.size());
  double total = 0.0;
  for (auto it = below.rbegin(); it != below.rend(); ++it) cum.push_back(total += *it);
  cum.push_back(total += 1.0);
  w = 1.0;
  for (std::int64_t k = mode; k < hi; ++k) {
    w *= ratio(k);
    if (!(w > kCut)) break;
    cum.push_back(total += w);
  }
  const std::int64_t window_hi = window_lo + static_cast<std::int64_t>(cum.size()) - 1;
  for (double& x : cum) x /= total;
  cum.back() = 1.0;
  // Outside the window the CDF is 0 below and 1 above, so the smallest f with
  // cdf(f) > u always lies inside it.
  return invert_monotone(
      window_lo, window_hi,
      [&](std::int64_t k) { return cum[static_cast<std::size_t>(k - window_lo)]; },
      src.next_unit());
}

}  // namespace

void throw_bad_cdf(const char* what, std::int64_t at, double value) {
  throw Fault(std::string("cdf inversion: ") + what + " (at " + std::to_string(at) +
              ", value " + std::to_string(value) + ")");
}

std::int64_t invert_cdf(const DiscreteCdf& cdf, double u) {
  return invert_monotone(cdf.lo, cdf.hi, cdf.eval, u);
}

std::int64_t sample_cdf_inverse(const DiscreteCdf& cdf, RandomSource& src) {
  return invert_cdf(cdf, src.next_unit());
}

double log_pow1m(double p, Count k) {
  if (k == 0 || p == 0.0) return 0.0;
  if (p >= 1.0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(k) * std::log1p(-p);
}

double pow1m(double p, Count k) { return std::exp(log_pow1m(p, k)); }

bool sample_bernoulli(double p, RandomSource& src) {
  require_probability(p, "sample_bernoulli");
  return src.next_unit() < p;
}

namespace {

// Closed-form first-success index for survival (1-p)^x, as a search hint.
std::optional<std::int64_t> geometric_hint(double u, double lq) {
  if (!(lq < 0.0) || !std::isfinite(lq)) return std::nullopt;
  const double k = std::floor(std::log1p(-u) / lq) + 1.0;
  if (!(k < 0x1.0p62)) return std::nullopt;
  return static_cast<std::int64_t>(k);
}

}  // namespace

std::int64_t sample_geometric(double p, RandomSource& src) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Fault("sample_geometric: need 0 < p <= 1, got " + std::to_string(p));
  }
  const double lq = std::log1p(-p);
  const double u = src.next_unit();
  return invert_monotone(
      1, kGeometricCap,
      [lq](std::int64_t x) {
        if (x >= kGeometricCap) return 1.0;
        return -std::expm1(static_cast<double>(x) * lq);
      },
      u, geometric_hint(u, lq));
}

std::int64_t sample_exactf(double p, Count t, RandomSource& src) {
  require_probability(p, "sample_exactf");
  if (t < 0) throw Fault("sample_exactf: negative trial count");
  const double u = src.next_unit();
  return invert_monotone(
      1, t + 1,
      [p, t](std::int64_t f) {
        if (f > t) return 1.0;
        return -std::expm1(log_pow1m(p, f));
      },
      u, geometric_hint(u, std::log1p(-p)));
}

Count sample_binomial(Count n, double p, RandomSource& src) {
  require_probability(p, "sample_binomial");
  if (n < 0) throw Fault("sample_binomial: negative trial count");
  if (n == 0 || p == 0.0 || p == 1.0) {
    src.next_word();
    return p == 1.0 ? n : 0;
  }
  const double odds = p / (1.0 - p);
  const auto nd = static_cast<double>(n);
  const Count mode = std::min<Count>(n, static_cast<Count>(std::floor((nd + 1.0) * p)));
  auto ratio = [nd, odds](std::int64_t k) {
    const auto kd = static_cast<double>(k);
    return (nd - kd) / (kd + 1.0) * odds;
  };
  return sample_unimodal(0, n, mode, ratio, src);
}

Count sample_hypergeometric(Count c1, Count c2, Count draws, RandomSource& src) {
  if (c1 < 0 || c2 < 0 || draws < 0 || draws > c1 + c2) {
    throw Fault("sample_hypergeometric: invalid urn or draw count");
  }
  const Count lo = std::max<Count>(0, draws - c2);
  const Count hi = std::min(c1, draws);
  if (lo == hi) {
    src.next_word();
    return lo;
  }
  const auto a1 = static_cast<double>(c1);
  const auto a2 = static_cast<double>(c2);
  const auto h = static_cast<double>(draws);
  Count mode = static_cast<Count>(std::floor((h + 1.0) * (a1 + 1.0) / (a1 + a2 + 2.0)));
  mode = std::clamp(mode, lo, hi);
  auto ratio = [=](std::int64_t s) {
    const auto sd = static_cast<double>(s);
    return (a1 - sd) * (h - sd) / ((sd + 1.0) * (a2 - h + sd + 1.0));
  };
  return sample_unimodal(lo, hi, mode, ratio, src);
}

std::vector<Count> sample_multinomial(Count n, std::span<const double> weights,
                                      RandomSource& src) {
  if (weights.empty()) throw Fault("sample_multinomial: no categories");
  double mass = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Fault("sample_multinomial: negative weight");
    mass += w;
  }
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw Fault("sample_multinomial: weights do not sum to 1");
  }
  std::vector<Count> out(weights.size(), 0);
  Count remaining = n;
  double remaining_mass = mass;
  for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
    const double q = remaining_mass > 0.0 ? std::clamp(weights[k] / remaining_mass, 0.0, 1.0) : 0.0;
    out[k] = sample_binomial(remaining, q, src);
    remaining -= out[k];
    remaining_mass -= weights[k];
  }
  out.back() = remaining;
  return out;
}

}  // namespace localgraph
