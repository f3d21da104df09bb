#include "localgraph/community.hpp"

#include <numeric>
#include <string>

#include "localgraph/distributions.hpp"

namespace localgraph {

std::pair<Count, Count> sample_two_color_half(Count c1, Count c2, RandomSource& src) {
  const Count total = c1 + c2;
  if (c1 < 0 || c2 < 0 || total % 2 != 0) {
    throw Fault("sample_two_color_half: urn size must be even and non-negative");
  }
  const Count s1 = sample_hypergeometric(c1, c2, total / 2, src);
  return {s1, total / 2 - s1};
}

std::pair<Count, Count> sample_two_color(Count c1, Count c2, Count ell, RandomSource& src) {
  const Count total = c1 + c2;
  if (c1 < 0 || c2 < 0 || ell < 0 || ell > total) {
    throw Fault("sample_two_color: draw count out of range");
  }
  if (ell == 0) return {0, 0};
  if (ell == total) return {c1, c2};
  if (total % 2 == 1) {
    const bool first = src.next_below(static_cast<std::uint64_t>(total)) <
                       static_cast<std::uint64_t>(c1);
    auto [s1, s2] = sample_two_color(c1 - first, c2 - !first, ell - 1, src);
    return {s1 + first, s2 + !first};
  }
  if (ell <= total / 2) {
    auto [h1, h2] = sample_two_color_half(c1, c2, src);
    return sample_two_color(h1, h2, ell, src);
  }
  auto [t1, t2] = sample_two_color(c1, c2, total - ell, src);
  return {c1 - t1, c2 - t2};
}

std::vector<Count> sample_mvh(std::span<const Count> counts, Count ell, RandomSource& src) {
  Count rest = 0;
  for (Count c : counts) {
    if (c < 0) throw Fault("sample_mvh: negative color count");
    rest += c;
  }
  if (ell < 0 || ell > rest) throw Fault("sample_mvh: draw count out of range");
  std::vector<Count> out(counts.size(), 0);
  for (std::size_t k = 0; k + 1 < counts.size() && ell > 0; ++k) {
    rest -= counts[k];
    out[k] = sample_two_color(counts[k], rest, ell, src).first;
    ell -= out[k];
  }
  if (!counts.empty()) out.back() += ell;
  return out;
}

CommunityTree::CommunityTree(Vertex n, std::vector<double> weights, RandomSource rng,
                             std::optional<std::vector<Count>> fixed_sizes)
    : n_(n), weights_(std::move(weights)), rng_(rng), fixed_(std::move(fixed_sizes)) {
  if (n_ < 1) throw Fault("CommunityTree: need at least one vertex");
  if (weights_.empty()) throw Fault("CommunityTree: need at least one community");
  if (fixed_) {
    if (fixed_->size() != weights_.size()) throw Fault("CommunityTree: size vector has wrong length");
    Count total = 0;
    for (Count c : *fixed_) {
      if (c < 0) throw Fault("CommunityTree: negative community size");
      total += c;
    }
    if (total != n_) throw Fault("CommunityTree: community sizes must sum to n");
  }
  while ((Vertex{1} << depth_) < n_) ++depth_;
}

Count CommunityTree::real_width(int level, std::uint64_t index) const {
  const Vertex width = Vertex{1} << (depth_ - level);
  const Vertex lo = static_cast<Vertex>(index) * width + 1;
  const Vertex hi = std::min<Vertex>(lo + width - 1, n_);
  return hi >= lo ? hi - lo + 1 : 0;
}

const Count* CommunityTree::find(int level, std::uint64_t index) const {
  auto it = offset_.find(key(level, index));
  return it == offset_.end() ? nullptr : pool_.data() + it->second;
}

void CommunityTree::split(int level, std::uint64_t index) {
  const std::size_t r = weights_.size();
  const Count* parent = node(level, index);
  std::vector<Count> left_counts =
      sample_mvh(std::span<const Count>(parent, r), real_width(level + 1, 2 * index), rng_);
  const std::size_t left = pool_.size();
  pool_.resize(left + 2 * r);
  parent = find(level, index);  // pool may have moved
  for (std::size_t j = 0; j < r; ++j) {
    pool_[left + j] = left_counts[j];
    pool_[left + r + j] = parent[j] - left_counts[j];
    if (pool_[left + r + j] < 0) throw Fault("CommunityTree: split produced a negative count");
  }
  offset_.emplace(key(level + 1, 2 * index), left);
  offset_.emplace(key(level + 1, 2 * index + 1), left + r);
}

const Count* CommunityTree::node(int level, std::uint64_t index) {
  if (const Count* hit = find(level, index)) return hit;
  if (level == 0) {
    std::vector<Count> root =
        fixed_ ? *fixed_ : sample_multinomial(n_, weights_, rng_);
    const std::size_t at = pool_.size();
    pool_.insert(pool_.end(), root.begin(), root.end());
    offset_.emplace(key(0, 0), at);
    return pool_.data() + at;
  }
  split(level - 1, index / 2);
  return find(level, index);
}

void CommunityTree::accumulate_range(Vertex a, Vertex b, std::span<Count> out) {
  if (a < 1 || b > n_) throw Fault("count_range: range outside [1, n]");
  if (a > b) return;
  const std::size_t r = weights_.size();
  // Canonical decomposition of the 0-based half-open range [a-1, b).
  std::uint64_t lo = static_cast<std::uint64_t>(a - 1);
  std::uint64_t hi = static_cast<std::uint64_t>(b);
  int level = depth_;
  while (lo < hi) {
    if (lo & 1) {
      const Count* c = node(level, lo);
      for (std::size_t j = 0; j < r; ++j) out[j] += c[j];
      ++lo;
    }
    if (hi & 1) {
      --hi;
      const Count* c = node(level, hi);
      for (std::size_t j = 0; j < r; ++j) out[j] += c[j];
    }
    lo >>= 1;
    hi >>= 1;
    --level;
  }
}

std::vector<Count> CommunityTree::count_range(Vertex a, Vertex b) {
  if (a < 1 || b > n_ || a > b) throw Fault("count_range: range outside [1, n]");
  std::vector<Count> out(weights_.size(), 0);
  accumulate_range(a, b, out);
  return out;
}

int CommunityTree::community_of(Vertex v) {
  if (v < 1 || v > n_) throw Fault("community_of: vertex out of range");
  const Count* c = node(depth_, static_cast<std::uint64_t>(v - 1));
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (c[j] == 1) return static_cast<int>(j);
  }
  throw Fault("community_of: leaf without a community");
}

Count CommunityTree::prefix_count(Vertex b, int j) {
  if (b < 1) return 0;
  std::vector<Count> out(weights_.size(), 0);
  accumulate_range(1, std::min(b, n_), out);
  return out[static_cast<std::size_t>(j)];
}

void CommunityTree::audit() const {
  const std::size_t r = weights_.size();
  for (const auto& [k, at] : offset_) {
    const int level = static_cast<int>(k >> 57);
    const std::uint64_t index = k & ((std::uint64_t{1} << 57) - 1);
    const Count* c = pool_.data() + at;
    Count sum = 0;
    for (std::size_t j = 0; j < r; ++j) {
      if (c[j] < 0) throw Fault("CommunityTree audit: negative count");
      sum += c[j];
    }
    if (sum != real_width(level, index)) throw Fault("CommunityTree audit: count/width mismatch");
    if (level == depth_) continue;
    const Count* left = find(level + 1, 2 * index);
    const Count* right = find(level + 1, 2 * index + 1);
    if ((left == nullptr) != (right == nullptr)) throw Fault("CommunityTree audit: half-split node");
    if (left == nullptr) continue;
    for (std::size_t j = 0; j < r; ++j) {
      if (left[j] + right[j] != c[j]) throw Fault("CommunityTree audit: children do not sum to parent");
    }
  }
}

}  // namespace localgraph
