#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "localgraph/generator.hpp"

namespace localgraph {

struct GridVertex {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const GridVertex&) const = default;
};

struct SmallWorldParams {
  std::int64_t side = 0;  // grid is side x side
  double c = 1.0;         // edge (v,u) present with probability min(c / dist^2, 1)
  int boost_k = 2;        // copies per unit of c when c > 1
  std::uint64_t seed = 0;
};

struct RingMember {
  std::int64_t label;  // 1..4d
  GridVertex at;
};

struct OutEdge {
  std::int64_t distance;
  std::int64_t label;
  Vertex target;
};

std::int64_t manhattan(GridVertex a, GridVertex b);

// In-grid vertices at distance d from v, with their labels. Labels run
// clockwise from (x, y+d).
std::vector<RingMember> ring_members(GridVertex v, std::int64_t d, std::int64_t side);
// Position of label in the full ring of radius d, on or off the grid.
GridVertex ring_position(GridVertex v, std::int64_t d, std::int64_t label);

// P[D <= d] for the first distance >= a that holds an out-neighbor when every
// ring is full (4i vertices at distance i, each present with probability 1/i^2).
double next_distance_cdf(std::int64_t a, std::int64_t d);

// Directed Kleinberg lattice. Each vertex draws its out-neighbors from its
// own random stream (seed, v), so answers do not depend on query order.
class SmallWorldGenerator final : public LocalGenerator {
 public:
  explicit SmallWorldGenerator(SmallWorldParams params);

  std::string name() const override { return "smallworld"; }
  Vertex vertex_count() const override { return params_.side * params_.side; }
  bool supports(QueryKind) const override { return true; }
  Vertex next_neighbor(Vertex v) override;
  std::optional<Vertex> random_neighbor(Vertex v) override;
  // Whether the directed edge u -> v is present.
  bool vertex_pair(Vertex u, Vertex v) override;
  std::vector<Vertex> all_neighbors(Vertex v) override;
  void check_invariants() override;
  std::uint64_t words_consumed() const override { return words_; }
  std::size_t stored_entries() const override;

  // Out-edges ordered by distance, then label.
  const std::vector<OutEdge>& out_edges(Vertex v);

  GridVertex coords(Vertex v) const;
  Vertex id(GridVertex g) const { return (g.x - 1) * params_.side + g.y; }
  const SmallWorldParams& params() const { return params_; }
  std::int64_t max_distance() const { return 2 * (params_.side - 1); }
  // Smallest distance at which boosting takes over from direct flips.
  std::int64_t boost_start() const { return boost_start_; }
  std::int64_t boost_copies() const { return boost_copies_; }
  std::uint64_t direct_flip_rings() const { return direct_flip_rings_; }

  // Phase 1: next distance >= a holding a base-process success, or nullopt.
  std::optional<std::int64_t> sample_next_distance(std::int64_t a, RandomSource& src) const;
  // Phase 2: labels of the successes in the first block of 4D trials with
  // bias p that contains one.
  static std::vector<std::int64_t> sample_ring_neighbors(std::int64_t D, double p, RandomSource& src);

 private:
  // All (distance, label) successes of one base process from distance a on.
  std::vector<std::pair<std::int64_t, std::int64_t>> base_process(std::int64_t a, RandomSource& src) const;
  std::vector<OutEdge> generate(Vertex v, RandomSource& src);

  // Random-neighbor picks use a stream no vertex id can collide with.
  static constexpr std::uint64_t kQueryStream = ~std::uint64_t{0};

  SmallWorldParams params_;
  RandomSource query_rng_;
  std::int64_t boost_start_ = 1;
  std::int64_t boost_copies_ = 1;
  std::uint64_t words_ = 0;
  std::uint64_t direct_flip_rings_ = 0;
  std::unordered_map<Vertex, std::vector<OutEdge>> memo_;
  std::unordered_map<Vertex, std::size_t> reported_;
};

}  // namespace localgraph
