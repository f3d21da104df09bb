#pragma once

#include <cstdint>

namespace localgraph {

// Counter-based source of 64-bit words: word i of stream (seed, stream_id) is
// Philox2x64-10 applied to the counter block (i, stream_id) under key seed.
// Every emitted word is counted so samplers can be audited for their
// randomness consumption.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed = 0, std::uint64_t stream_id = 0)
      : seed_(seed), stream_(stream_id) {}

  std::uint64_t next_word();

  // One word mapped to [0, 1) through its top 53 bits.
  double next_unit() { return static_cast<double>(next_word() >> 11) * 0x1.0p-53; }

  // One word mapped to [0, bound) by multiply-shift; bias is at most bound/2^64.
  std::uint64_t next_below(std::uint64_t bound);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }
  std::uint64_t counter() const { return counter_; }
  std::uint64_t words_consumed() const { return counter_; }

  // Stateless evaluation of the underlying block function.
  static std::uint64_t block(std::uint64_t seed, std::uint64_t stream_id,
                             std::uint64_t counter);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace localgraph
