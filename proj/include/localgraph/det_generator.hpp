#pragma once

#include <memory>
#include <set>
#include <unordered_map>
#include <vector>

#include "localgraph/edge_model.hpp"
#include "localgraph/generator.hpp"
#include "localgraph/order_stat_tree.hpp"

namespace localgraph {

// Generator with worst-case polylog next-neighbor. A range tree over the
// vertex ids keeps, in every dyadic node, an order-statistic tree of the
// nonzero frontier values last[u] of the vertices below it. The undecided
// candidates T_v of v are then countable and selectable by rank, so one
// ExactF draw per query picks the next neighbor directly. Vertex-pair zeros
// live in per-vertex sets Q'_v that are purged as frontiers pass them.
//
// For block models every community gets its own copy of the index and of
// Q'_v, and the next neighbor is drawn by binary search over positions.
class DetGenerator final : public LocalGenerator {
 public:
  DetGenerator(std::unique_ptr<EdgeModel> model, RandomSource rng);

  std::string name() const override { return "det"; }
  Vertex vertex_count() const override { return n_; }
  bool supports(QueryKind kind) const override { return kind != QueryKind::RandomNeighbor; }
  Vertex next_neighbor(Vertex v) override;
  bool vertex_pair(Vertex u, Vertex v) override;
  std::vector<Vertex> all_neighbors(Vertex v) override;
  void check_invariants() override;
  std::uint64_t words_consumed() const override { return rng_.words_consumed(); }
  std::size_t stored_entries() const override;

  Vertex last(Vertex v) const;
  // |T_v|: undecided cells of row v between the frontier and the first known
  // neighbor above it.
  Count count(Vertex v);
  // The rank-th smallest member of T_v, 1-based.
  Vertex pick(Vertex v, Count rank);
  // Moves the frontier of v to u > last[v].
  void update(Vertex v, Vertex u);
  // Members of T_v listed explicitly (for tests).
  std::vector<Vertex> candidates(Vertex v);

  std::uint64_t max_count_visits() const { return max_count_visits_; }
  std::uint64_t max_pick_visits() const { return max_pick_visits_; }
  std::uint64_t max_update_visits() const { return max_update_visits_; }
  std::uint64_t zero_insertions() const { return zero_insertions_; }
  std::uint64_t zero_removals() const { return zero_removals_; }
  int depth() const { return depth_; }

 private:
  struct Node {
    int level;
    std::uint64_t index;
  };

  Vertex advance(Vertex v);
  Vertex advance_block(Vertex v, Vertex from, Vertex w, double u);
  int community(Vertex u);
  Vertex first_known_above(Vertex v, Vertex x) const;
  void add_edge(Vertex v, Vertex u);
  std::vector<Node> decompose(Vertex a, Vertex b) const;
  Vertex node_lo(Node x) const;
  Vertex node_hi(Node x) const;
  Count community_width(Node x, int j);
  // Undecided community-j cells of row v inside node x (x inside (last, w)).
  Count undecided_in(Vertex v, Node x, int j);
  Count zeros_in(Vertex v, int j, Vertex lo, Vertex hi) const;
  std::uint32_t* index_root(int level, std::uint64_t index, int j, bool create);
  std::uint32_t* zero_root(Vertex v, int j, bool create);
  void zero_insert(Vertex v, Vertex u);
  void zero_erase(Vertex v, Vertex u);
  bool zero_contains(Vertex v, Vertex u);

  std::unique_ptr<EdgeModel> model_;
  GnpModel* gnp_ = nullptr;
  SbmModel* sbm_ = nullptr;
  RandomSource rng_;
  Vertex n_;
  int depth_ = 0;
  int r_ = 1;
  OrderStatForest forest_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_roots_;
  std::unordered_map<std::uint64_t, std::uint32_t> zero_roots_;
  std::unordered_map<Vertex, Vertex> last_;
  std::unordered_map<Vertex, Vertex> reported_;
  std::unordered_map<Vertex, std::set<Vertex>> known_;
  std::uint64_t max_count_visits_ = 0;
  std::uint64_t max_pick_visits_ = 0;
  std::uint64_t max_update_visits_ = 0;
  std::uint64_t zero_insertions_ = 0;
  std::uint64_t zero_removals_ = 0;
  std::vector<Count> scratch_;
};

}  // namespace localgraph
