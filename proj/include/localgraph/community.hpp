#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "localgraph/rng.hpp"
#include "localgraph/types.hpp"

namespace localgraph {

// Two-color urn with c1 + c2 = B marbles (B even); returns the color counts
// among B/2 marbles drawn without replacement. One word.
std::pair<Count, Count> sample_two_color_half(Count c1, Count c2, RandomSource& src);

// Color counts among ell marbles drawn without replacement. O(log B) words.
std::pair<Count, Count> sample_two_color(Count c1, Count c2, Count ell, RandomSource& src);

// Multivariate hypergeometric sample: counts per color among ell draws.
std::vector<Count> sample_mvh(std::span<const Count> counts, Count ell, RandomSource& src);

// Lazily expanded dyadic tree of per-range community counts. Labels of
// vertices 1..n are i.i.d. from `weights` (or a uniform partition with fixed
// sizes when `fixed_sizes` is given), and are realized only on demand.
// Communities are numbered 0..r-1.
class CommunityTree {
 public:
  CommunityTree(Vertex n, std::vector<double> weights, RandomSource rng,
                std::optional<std::vector<Count>> fixed_sizes = std::nullopt);

  Vertex n() const { return n_; }
  int r() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }

  // Per-community counts of [a, b] with 1 <= a <= b <= n.
  std::vector<Count> count_range(Vertex a, Vertex b);
  // Adds the counts of [a, b] into `out` (size r); empty ranges add nothing.
  void accumulate_range(Vertex a, Vertex b, std::span<Count> out);
  int community_of(Vertex v);

  // Number of community-j vertices among [1, b].
  Count prefix_count(Vertex b, int j);

  std::size_t materialized_nodes() const { return offset_.size(); }
  const RandomSource& rng() const { return rng_; }

  // Re-checks parent/child conservation over all materialized nodes.
  void audit() const;

 private:
  static std::uint64_t key(int level, std::uint64_t index) {
    return (static_cast<std::uint64_t>(level) << 57) | index;
  }
  const Count* node(int level, std::uint64_t index);
  const Count* find(int level, std::uint64_t index) const;
  Count real_width(int level, std::uint64_t index) const;
  void split(int level, std::uint64_t index);

  Vertex n_;
  std::vector<double> weights_;
  RandomSource rng_;
  std::optional<std::vector<Count>> fixed_;
  int depth_ = 0;  // leaves live at this level
  std::vector<Count> pool_;
  std::unordered_map<std::uint64_t, std::size_t> offset_;
};

}  // namespace localgraph
