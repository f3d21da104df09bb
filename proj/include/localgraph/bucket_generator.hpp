#pragma once

#include <memory>
#include <absl/container/flat_hash_map.h>
#include <absl/container/inlined_vector.h>
#include <utility>
#include <vector>

#include "localgraph/edge_model.hpp"
#include "localgraph/generator.hpp"

namespace localgraph {

struct BucketParams {
  double L = 8.0;  // expected neighbors per bucket
};

// The full local-access generator: row v is cut into buckets holding about L
// expected neighbors each. A bucket is decided all at once by skip sampling
// (fill), and random-neighbor picks buckets uniformly and accepts one with
// probability |bucket|/M.
class BucketGenerator final : public LocalGenerator {
 public:
  BucketGenerator(std::unique_ptr<EdgeModel> model, RandomSource rng, BucketParams params = {});

  std::string name() const override { return "bucket"; }
  Vertex vertex_count() const override { return model_->n(); }
  bool supports(QueryKind) const override { return true; }
  Vertex next_neighbor(Vertex v) override;
  std::optional<Vertex> random_neighbor(Vertex v) override;
  bool vertex_pair(Vertex u, Vertex v) override;
  std::vector<Vertex> all_neighbors(Vertex v) override;
  void check_invariants() override;
  std::uint64_t words_consumed() const override { return rng_.words_consumed(); }
  std::size_t stored_entries() const override;

  double L() const { return params_.L; }
  Count M() const { return M_; }
  std::int64_t bucket_index(Vertex v, Vertex u);
  std::int64_t bucket_count(Vertex v);
  std::pair<Vertex, Vertex> bucket_range(Vertex v, std::int64_t i);
  void fill(Vertex v, std::int64_t i);
  bool is_filled(Vertex v, std::int64_t i) const;
  // Members of P_v^(i) known so far.
  std::vector<Vertex> bucket_members(Vertex v, std::int64_t i) const;

  std::int64_t fills() const { return fills_; }
  std::int64_t fill_iterations() const { return fill_iterations_; }
  std::int64_t last_rejection_iterations() const { return last_rejection_iterations_; }
  std::int64_t max_rejection_iterations() const { return max_rejection_iterations_; }
  std::int64_t total_rejection_iterations() const { return total_rejection_iterations_; }
  std::int64_t rejection_queries() const { return rejection_queries_; }
  // Largest |P_v^(i)| over all filled buckets.
  std::size_t max_bucket_size() const { return max_bucket_size_; }

 private:
  using Members = absl::InlinedVector<std::uint32_t, 6>;
  struct Bucket {
    Members members;
    bool filled = false;
    std::uint64_t fingerprint = 0;
  };
  static std::uint64_t key(Vertex v, std::int64_t i) {
    return (static_cast<std::uint64_t>(v) << 32) | static_cast<std::uint64_t>(i);
  }
  static std::uint64_t fingerprint(const Members& members);
  static void insert_member(Members& members, Vertex u);
  // Smallest u with bucket_index(v, u) >= i, or n+1.
  Vertex first_with_index(Vertex v, std::int64_t i);

  std::unique_ptr<EdgeModel> model_;
  GnpModel* gnp_ = nullptr;
  RandomSource rng_;
  BucketParams params_;
  Count M_;
  absl::flat_hash_map<std::uint64_t, Bucket> buckets_;
  absl::flat_hash_map<Vertex, Vertex> reported_;
  std::int64_t fills_ = 0;
  std::int64_t fill_iterations_ = 0;
  std::int64_t last_rejection_iterations_ = 0;
  std::int64_t max_rejection_iterations_ = 0;
  std::int64_t total_rejection_iterations_ = 0;
  std::int64_t rejection_queries_ = 0;
  std::size_t max_bucket_size_ = 0;
};

}  // namespace localgraph
