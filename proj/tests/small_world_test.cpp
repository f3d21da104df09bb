#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "localgraph/oracle.hpp"
#include "localgraph/small_world.hpp"
#include "support.hpp"

using namespace localgraph;

TEST_CASE("ring members") {
  CHECK(ring_members({3, 3}, 1, 5).size() == 4);
  const auto corner = ring_members({1, 1}, 1, 5);
  CHECK(corner.size() == 2);
  for (const auto& m : corner) CHECK(manhattan({1, 1}, m.at) == 1);
  const auto first = ring_members({3, 3}, 2, 5);
  CHECK(first.front().label == 1);
  CHECK(first.front().at == GridVertex{3, 5});
  for (std::int64_t d = 1; d <= 12; ++d) {
    for (GridVertex v : {GridVertex{1, 1}, GridVertex{4, 7}, GridVertex{8, 8}}) {
      const auto ring = ring_members(v, d, 8);
      CHECK(ring.size() <= static_cast<std::size_t>(4 * d));
      std::set<std::pair<std::int64_t, std::int64_t>> distinct;
      for (const auto& m : ring) {
        CHECK(manhattan(v, m.at) == d);
        distinct.insert({m.at.x, m.at.y});
      }
      CHECK(distinct.size() == ring.size());
      std::size_t brute = 0;
      for (std::int64_t x = 1; x <= 8; ++x)
        for (std::int64_t y = 1; y <= 8; ++y) brute += manhattan(v, {x, y}) == d;
      CHECK(ring.size() == brute);
    }
  }
}

TEST_CASE("next distance cdf") {
  for (std::int64_t d = 1; d < 10; ++d) CHECK(next_distance_cdf(1, d) == 1.0);
  CHECK(next_distance_cdf(2, 2) == doctest::Approx(1.0 - 6561.0 / 65536.0).epsilon(1e-14));
  CHECK(next_distance_cdf(2, 2) == doctest::Approx(1.0 - std::pow(0.75, 8)).epsilon(1e-14));
  for (std::int64_t a = 2; a <= 20; ++a) {
    double prev = 0.0;
    for (std::int64_t d = a; d <= 200; ++d) {
      CHECK(next_distance_cdf(a, d) >= prev);
      prev = next_distance_cdf(a, d);
    }
  }
  SmallWorldGenerator gen({8, 1.0, 2, 1});
  RandomSource src(1, 0);
  for (int i = 0; i < 100; ++i) CHECK(gen.sample_next_distance(1, src) == 1);
  CHECK_FALSE(gen.sample_next_distance(15, src).has_value());
}

TEST_CASE("ring neighbor sampling") {
  RandomSource src(2, 0);
  for (int i = 0; i < 50; ++i) CHECK(SmallWorldGenerator::sample_ring_neighbors(3, 1.0, src).size() == 12);
  // 4 labels, p = 1/2, conditioned on at least one success: uniform over 15 subsets.
  Histogram h;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    std::uint64_t mask = 0;
    for (auto label : SmallWorldGenerator::sample_ring_neighbors(1, 0.5, src)) mask |= std::uint64_t{1} << (label - 1);
    h.add(mask);
  }
  Reference ref;
  for (std::uint64_t m = 1; m < 16; ++m) ref[m] = 1.0 / 15.0;
  CHECK(l1_distance(h, ref) <= 0.02);
  int singletons = 0;
  for (int i = 0; i < 10000; ++i) singletons += SmallWorldGenerator::sample_ring_neighbors(10, 1e-3, src).size() == 1;
  CHECK(singletons >= 9700);
}

TEST_CASE("all-neighbors structure") {
  SmallWorldGenerator tiny({2, 4.0, 2, 3});
  for (Vertex v = 1; v <= 4; ++v) {
    CHECK(tiny.all_neighbors(v).size() == 3);
    for (Vertex u : tiny.all_neighbors(v)) CHECK(u != v);
  }
  SmallWorldGenerator faint({16, 1e-9, 2, 3});
  std::size_t edges = 0;
  for (Vertex v = 1; v <= 256; ++v) edges += faint.all_neighbors(v).size();
  CHECK(edges == 0);
  SmallWorldGenerator gen({12, 1.0, 2, 4});
  for (Vertex v = 1; v <= 144; ++v) {
    const auto& out = gen.out_edges(v);
    CHECK(&out == &gen.out_edges(v));
    for (std::size_t i = 1; i < out.size(); ++i) {
      CHECK(std::pair(out[i - 1].distance, out[i - 1].label) < std::pair(out[i].distance, out[i].label));
    }
    // Distance-1 ring always has a neighbor at c = 1.
    CHECK(!out.empty());
    CHECK(out.front().distance == 1);
  }
  gen.check_invariants();
  SmallWorldGenerator again({12, 1.0, 2, 4});
  for (Vertex v = 144; v >= 1; --v) CHECK(again.all_neighbors(v) == gen.all_neighbors(v));
}

TEST_CASE("thinning halves the marginal") {
  const int trials = 100000;
  // Pair at distance 3 on an 8x8 grid.
  int hits = 0;
  std::uint64_t words_thin = 0, words_plain = 0;
  for (int t = 0; t < trials; ++t) {
    SmallWorldGenerator gen({8, 0.5, 2, static_cast<std::uint64_t>(t)});
    hits += gen.vertex_pair(gen.id({4, 4}), gen.id({5, 6}));
    words_thin += gen.words_consumed();
    SmallWorldGenerator plain({8, 1.0, 2, static_cast<std::uint64_t>(t)});
    plain.out_edges(plain.id({4, 4}));
    words_plain += plain.words_consumed();
  }
  CHECK(within_sigma(hits, trials, 0.5 / 9));
  CHECK(words_thin > words_plain);
}

TEST_CASE("boosting parameters and direct flips") {
  SmallWorldGenerator gen({8, 4.0, 2, 1});
  // c / d^2 <= 1 - 1/k first holds at d = 3.
  CHECK(gen.boost_start() == 3);
  CHECK(gen.boost_copies() == 8);
  gen.out_edges(1);
  CHECK(gen.direct_flip_rings() == 2);
  for (std::int64_t d = gen.boost_start(); d <= 14; ++d) {
    const double p = 1.0 / static_cast<double>(d * d);
    const double ratio = 4.0 * p / (1.0 - std::pow(1.0 - p, 8));
    CHECK(ratio > 0.0);
    CHECK(ratio <= 1.0);
  }
  SmallWorldGenerator plain({8, 1.0, 2, 1});
  plain.out_edges(1);
  CHECK(plain.direct_flip_rings() == 0);
  CHECK_THROWS_AS(SmallWorldGenerator({8, 4.0, 1, 1}), Fault);
}

TEST_CASE("boosted marginals at several distances") {
  const int trials = 100000;
  const double c = 4.0;
  std::map<int, int> hits;
  const GridVertex v{1, 1};
  const std::vector<GridVertex> targets = {{1, 2}, {2, 2}, {3, 2}, {4, 4}, {8, 8}};
  for (int t = 0; t < trials; ++t) {
    SmallWorldGenerator gen({8, c, 2, static_cast<std::uint64_t>(t) + 500});
    for (std::size_t k = 0; k < targets.size(); ++k) hits[static_cast<int>(k)] += gen.vertex_pair(gen.id(v), gen.id(targets[k]));
  }
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const double d = static_cast<double>(manhattan(v, targets[k]));
    CAPTURE(d);
    CHECK(within_sigma(hits[static_cast<int>(k)], trials, std::min(c / (d * d), 1.0)));
  }
}

TEST_CASE("random neighbor on small world") {
  SmallWorldGenerator gen({8, 1.0, 2, 9});
  for (int i = 0; i < 200; ++i) {
    const auto u = gen.random_neighbor(10);
    REQUIRE(u.has_value());
    CHECK(gen.vertex_pair(10, *u));
  }
  std::vector<Vertex> listed;
  for (Vertex u = gen.next_neighbor(10); u <= 64; u = gen.next_neighbor(10)) listed.push_back(u);
  CHECK(listed == gen.all_neighbors(10));
}
