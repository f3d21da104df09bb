#include "localgraph/bucket_generator.hpp"

#include <algorithm>
#include <cmath>

#include "localgraph/distributions.hpp"

namespace localgraph {

BucketGenerator::BucketGenerator(std::unique_ptr<EdgeModel> model, RandomSource rng,
                                 BucketParams params)
    : model_(std::move(model)), rng_(rng), params_(params) {
  if (!(params_.L >= 1.0)) throw Fault("bucket: L must be at least 1");
  if (model_->n() >= (Vertex{1} << 31)) throw Fault("bucket: too many vertices");
  gnp_ = dynamic_cast<GnpModel*>(model_.get());
  const double ln_n = std::log(static_cast<double>(model_->n()));
  M_ = static_cast<Count>(std::ceil((1.0 + 3.0 * ln_n) * params_.L));
}

std::int64_t BucketGenerator::bucket_index(Vertex v, Vertex u) {
  check_vertex(v);
  check_vertex(u);
  const double mass = model_->expected_degree_range(v, 1, u);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(mass / params_.L)));
}

std::int64_t BucketGenerator::bucket_count(Vertex v) { return bucket_index(v, model_->n()); }

Vertex BucketGenerator::first_with_index(Vertex v, std::int64_t i) {
  const Vertex n = model_->n();
  if (i <= 1) return 1;
  if (gnp_ != nullptr) {
    if (gnp_->p() == 0.0) return n + 1;
    // Closed-form guess, then settle against bucket_index itself.
    const double guess = std::floor(static_cast<double>(i - 1) * params_.L / gnp_->p()) + 1.0;
    Vertex u = static_cast<Vertex>(std::clamp(guess, 1.0, static_cast<double>(n + 1)));
    while (u > 1 && bucket_index(v, u - 1) >= i) --u;
    while (u <= n && bucket_index(v, u) < i) ++u;
    return u;
  }
  Vertex lo = 1;
  Vertex hi = n + 1;
  while (lo < hi) {
    const Vertex mid = lo + (hi - lo) / 2;
    if (bucket_index(v, mid) >= i) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::pair<Vertex, Vertex> BucketGenerator::bucket_range(Vertex v, std::int64_t i) {
  if (i < 1 || i > bucket_count(v)) throw Fault("bucket_range: bucket index out of range");
  return {first_with_index(v, i), first_with_index(v, i + 1) - 1};
}

bool BucketGenerator::is_filled(Vertex v, std::int64_t i) const {
  auto it = buckets_.find(key(v, i));
  return it != buckets_.end() && it->second.filled;
}

std::vector<Vertex> BucketGenerator::bucket_members(Vertex v, std::int64_t i) const {
  auto it = buckets_.find(key(v, i));
  if (it == buckets_.end()) return {};
  return {it->second.members.begin(), it->second.members.end()};
}

std::uint64_t BucketGenerator::fingerprint(const Members& members) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Vertex u : members) {
    h ^= static_cast<std::uint64_t>(u);
    h *= 0x100000001b3ULL;
  }
  return h ^ members.size();
}

void BucketGenerator::insert_member(Members& members, Vertex u) {
  const auto w = static_cast<std::uint32_t>(u);
  auto at = std::lower_bound(members.begin(), members.end(), w);
  if (at == members.end() || *at != w) members.insert(at, w);
}

void BucketGenerator::fill(Vertex v, std::int64_t i) {
  if (is_filled(v, i)) throw Fault("fill: bucket already filled");
  const auto [lo, hi] = bucket_range(v, i);
  auto draw = [&](Vertex a) {
    if (a >= hi) return hi + 1;
    ++fill_iterations_;
    return model_->sample_skip(v, a, hi + 1, rng_);
  };
  // Skips do not depend on the bucket table, so all of them are drawn first
  // and the counterpart buckets are prefetched while sampling continues.
  absl::InlinedVector<std::pair<Vertex, std::int64_t>, 16> hits;
  for (Vertex u = draw(lo - 1); u <= hi; u = draw(u)) {
    const std::int64_t j = u == v ? i : bucket_index(u, v);
    buckets_.prefetch(key(u, j));
    hits.emplace_back(u, j);
  }
  for (const auto& [u, j] : hits) {
    Bucket& other = buckets_[key(u, j)];
    if (!other.filled) {
      insert_member(other.members, v);
      if (u != v) insert_member(buckets_[key(v, i)].members, u);
    }
  }
  ++fills_;
  Bucket& b = buckets_[key(v, i)];
  b.filled = true;
  b.fingerprint = fingerprint(b.members);
  max_bucket_size_ = std::max(max_bucket_size_, b.members.size());
}

bool BucketGenerator::vertex_pair(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  const std::int64_t j = bucket_index(u, v);
  if (!is_filled(u, j)) fill(u, j);
  const auto& members = buckets_[key(u, j)].members;
  return std::binary_search(members.begin(), members.end(), static_cast<std::uint32_t>(v));
}

Vertex BucketGenerator::next_neighbor(Vertex v) {
  check_vertex(v);
  const Vertex n = model_->n();
  Vertex& cursor = reported_[v];
  if (cursor >= n) return cursor = n + 1;
  const std::int64_t count = bucket_count(v);
  for (std::int64_t i = bucket_index(v, cursor + 1); i <= count; ++i) {
    if (!is_filled(v, i)) fill(v, i);
    const auto& members = buckets_[key(v, i)].members;
    auto it = std::upper_bound(members.begin(), members.end(), static_cast<std::uint32_t>(cursor));
    if (it != members.end()) return cursor = *it;
  }
  return cursor = n + 1;
}

std::vector<Vertex> BucketGenerator::all_neighbors(Vertex v) {
  check_vertex(v);
  std::vector<Vertex> out;
  const std::int64_t count = bucket_count(v);
  for (std::int64_t i = 1; i <= count; ++i) {
    if (!is_filled(v, i)) fill(v, i);
    const auto& members = buckets_[key(v, i)].members;
    out.insert(out.end(), members.begin(), members.end());
  }
  return out;
}

std::optional<Vertex> BucketGenerator::random_neighbor(Vertex v) {
  check_vertex(v);
  const std::int64_t count = bucket_count(v);
  const double ln_n = std::log(static_cast<double>(model_->n()));
  std::int64_t iterations = 0;
  std::optional<Vertex> answer;
  if (static_cast<double>(count) < 4.0 * ln_n) {
    iterations = 1;
    const std::vector<Vertex> all = all_neighbors(v);
    if (!all.empty()) answer = all[rng_.next_below(all.size())];
  } else {
    // Remaining bucket pool as a lazily materialized permutation of 1..count:
    // slot k holds moved[k] if present, else k itself.
    std::unordered_map<std::int64_t, std::int64_t> moved;
    auto slot = [&moved](std::int64_t k) {
      auto it = moved.find(k);
      return it == moved.end() ? k : it->second;
    };
    std::int64_t remaining = count;
    while (remaining > 0) {
      ++iterations;
      const auto k = 1 + static_cast<std::int64_t>(rng_.next_below(static_cast<std::uint64_t>(remaining)));
      const std::int64_t i = slot(k);
      if (!is_filled(v, i)) fill(v, i);
      const auto& members = buckets_[key(v, i)].members;
      const auto size = static_cast<Count>(members.size());
      if (size == 0) {
        moved[k] = slot(remaining);
        --remaining;
        continue;
      }
      if (size > M_) throw Fault("random_neighbor: bucket holds more than M neighbors");
      if (rng_.next_below(static_cast<std::uint64_t>(M_)) < static_cast<std::uint64_t>(size)) {
        answer = members[rng_.next_below(members.size())];
        break;
      }
    }
  }
  last_rejection_iterations_ = iterations;
  max_rejection_iterations_ = std::max(max_rejection_iterations_, iterations);
  total_rejection_iterations_ += iterations;
  ++rejection_queries_;
  return answer;
}

void BucketGenerator::check_invariants() {
  for (const auto& [k, b] : buckets_) {
    const auto v = static_cast<Vertex>(k >> 32);
    const auto i = static_cast<std::int64_t>(k & 0xffffffffULL);
    if (!std::is_sorted(b.members.begin(), b.members.end())) throw Fault("bucket: members not sorted");
    if (b.filled && fingerprint(b.members) != b.fingerprint) throw Fault("bucket: filled bucket changed");
    const auto [lo, hi] = bucket_range(v, i);
    for (Vertex u : b.members) {
      if (u < lo || u > hi) throw Fault("bucket: member outside its bucket range");
      const std::int64_t j = bucket_index(u, v);
      auto it = buckets_.find(key(u, j));
      if (it == buckets_.end() ||
          !std::binary_search(it->second.members.begin(), it->second.members.end(),
                              static_cast<std::uint32_t>(v))) {
        throw Fault("bucket: membership not symmetric");
      }
    }
  }
}

std::size_t BucketGenerator::stored_entries() const {
  std::size_t total = reported_.size();
  for (const auto& [k, b] : buckets_) total += 1 + b.members.size();
  return total;
}

}  // namespace localgraph
