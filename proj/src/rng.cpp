#include "localgraph/rng.hpp"

namespace localgraph {

namespace {

constexpr std::uint64_t kPhiloxMultiplier = 0xD2B74407B1CE6E93ULL;
constexpr std::uint64_t kPhiloxWeyl = 0x9E3779B97F4A7C15ULL;
constexpr int kPhiloxRounds = 10;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  const unsigned __int128 product = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(product >> 64);
  lo = static_cast<std::uint64_t>(product);
}

}  // namespace

std::uint64_t RandomSource::block(std::uint64_t seed, std::uint64_t stream_id,
                                  std::uint64_t counter) {
  std::uint64_t c0 = counter;
  std::uint64_t c1 = stream_id;
  std::uint64_t key = seed;
  for (int round = 0; round < kPhiloxRounds; ++round) {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    mulhilo(kPhiloxMultiplier, c0, hi, lo);
    c0 = hi ^ key ^ c1;
    c1 = lo;
    key += kPhiloxWeyl;
  }
  return c0;
}

std::uint64_t RandomSource::next_word() {
  return block(seed_, stream_, counter_++);
}

std::uint64_t RandomSource::next_below(std::uint64_t bound) {
  const unsigned __int128 scaled =
      static_cast<unsigned __int128>(next_word()) * bound;
  return static_cast<std::uint64_t>(scaled >> 64);
}

}  // namespace localgraph
