#pragma once

#include <memory>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "localgraph/edge_model.hpp"
#include "localgraph/generator.hpp"

namespace localgraph {

// Next-neighbor by skip sampling: from the frontier last[v], draw the first
// success of the run of undecided cells in one step, rejecting landings on
// cells already known to be 0. Vertex-pair answers that come out 0 are kept
// in a pair set Q; 1-answers go to the known-neighbor sets P_v.
class SkipGenerator final : public LocalGenerator {
 public:
  SkipGenerator(std::unique_ptr<EdgeModel> model, RandomSource rng);

  std::string name() const override { return "skip"; }
  Vertex vertex_count() const override { return model_->n(); }
  bool supports(QueryKind kind) const override { return kind != QueryKind::RandomNeighbor; }
  Vertex next_neighbor(Vertex v) override;
  bool vertex_pair(Vertex u, Vertex v) override;
  std::vector<Vertex> all_neighbors(Vertex v) override;
  void check_invariants() override;
  std::uint64_t words_consumed() const override { return rng_.words_consumed(); }
  std::size_t stored_entries() const override;

  Vertex last(Vertex v) const;
  // Repeat-loop iterations of the most recent frontier advance, and the
  // running maximum and total over all of them.
  std::int64_t last_iterations() const { return last_iterations_; }
  std::int64_t max_iterations() const { return max_iterations_; }
  std::int64_t total_iterations() const { return total_iterations_; }
  std::int64_t advances() const { return advances_; }

 private:
  // Moves last[v] to the next neighbor above it and returns that neighbor.
  Vertex advance(Vertex v);
  bool known_edge(Vertex v, Vertex u) const;
  void add_edge(Vertex v, Vertex u);
  static std::uint64_t pair_key(Vertex a, Vertex b);

  std::unique_ptr<EdgeModel> model_;
  RandomSource rng_;
  std::unordered_map<Vertex, Vertex> last_;
  std::unordered_map<Vertex, Vertex> reported_;
  std::unordered_map<Vertex, std::set<Vertex>> known_;
  std::unordered_set<std::uint64_t> zeros_;
  std::int64_t last_iterations_ = 0;
  std::int64_t max_iterations_ = 0;
  std::int64_t total_iterations_ = 0;
  std::int64_t advances_ = 0;
};

}  // namespace localgraph
