#include <doctest.h>

#include <set>

#include "localgraph/factory.hpp"
#include "localgraph/oracle.hpp"
#include "support.hpp"

using namespace localgraph;

namespace {

const std::vector<std::string> kNames = {"naive", "skip", "bucket", "det"};

ModelConfig gnp(Vertex n, double p) {
  ModelConfig c;
  c.kind = ModelKind::Gnp;
  c.n = n;
  c.p = p;
  return c;
}

}  // namespace

TEST_CASE("next-neighbor on complete and empty graphs") {
  for (const auto& name : kNames) {
    CAPTURE(name);
    auto full = make_generator(name, gnp(6, 1.0), 1);
    for (Vertex u = 1; u <= 6; ++u) CHECK(full->next_neighbor(1) == u);
    CHECK(full->next_neighbor(1) == 7);
    CHECK(full->next_neighbor(1) == 7);
    CHECK(full->all_neighbors(3) == std::vector<Vertex>{1, 2, 3, 4, 5, 6});
    auto empty = make_generator(name, gnp(6, 0.0), 1);
    CHECK(empty->next_neighbor(2) == 7);
    CHECK(empty->all_neighbors(4).empty());
    CHECK_FALSE(empty->vertex_pair(1, 5));
    CHECK_THROWS_AS(full->next_neighbor(0), Fault);
    CHECK_THROWS_AS(full->vertex_pair(1, 7), Fault);
  }
}

TEST_CASE("next-neighbor answers strictly increase and skipped pairs are absent") {
  for (const auto& name : kNames) {
    CAPTURE(name);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto gen = make_generator(name, gnp(40, 0.15), seed);
      for (Vertex v : {1, 7, 40}) {
        Vertex prev = 0;
        for (;;) {
          const Vertex u = gen->next_neighbor(v);
          CHECK(u > prev);
          if (u > 40) break;
          CHECK(gen->vertex_pair(v, u));
          CHECK(gen->vertex_pair(u, v));
          for (Vertex w = prev + 1; w < u; ++w) CHECK_FALSE(gen->vertex_pair(v, w));
          prev = u;
        }
        CHECK(gen->next_neighbor(v) == 41);
      }
      gen->check_invariants();
    }
  }
}

TEST_CASE("vertex-pair is symmetric and all-neighbors agrees with enumeration") {
  for (const auto& name : kNames) {
    CAPTURE(name);
    auto gen = make_generator(name, gnp(30, 0.2), 5);
    RandomSource pick(9, 0);
    for (int i = 0; i < 300; ++i) {
      const Vertex a = 1 + static_cast<Vertex>(pick.next_below(30));
      const Vertex b = 1 + static_cast<Vertex>(pick.next_below(30));
      CHECK(gen->vertex_pair(a, b) == gen->vertex_pair(b, a));
    }
    auto twin = make_generator(name, gnp(30, 0.2), 5);
    for (Vertex v = 1; v <= 30; ++v) {
      std::vector<Vertex> listed;
      for (Vertex u = gen->next_neighbor(v); u <= 30; u = gen->next_neighbor(v)) listed.push_back(u);
      const auto all = gen->all_neighbors(v);
      std::vector<Vertex> expected;
      for (Vertex u = 1; u <= 30; ++u)
        if (gen->vertex_pair(v, u)) expected.push_back(u);
      CHECK(all == expected);
      CHECK(std::includes(all.begin(), all.end(), listed.begin(), listed.end()));
    }
    gen->check_invariants();
  }
}

TEST_CASE("generators are deterministic per seed") {
  for (const auto& name : kNames) {
    CAPTURE(name);
    auto a = make_generator(name, gnp(50, 0.1), 77);
    auto b = make_generator(name, gnp(50, 0.1), 77);
    for (Vertex v = 1; v <= 50; ++v) CHECK(a->all_neighbors(v) == b->all_neighbors(v));
    CHECK(a->words_consumed() == b->words_consumed());
  }
}

TEST_CASE("vertex-pair marginal on fresh states") {
  const int trials = 100000;
  for (const auto& name : kNames) {
    CAPTURE(name);
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
      auto gen = make_generator(name, gnp(16, 0.3), static_cast<std::uint64_t>(t));
      hits += gen->vertex_pair(3, 11);
    }
    CHECK(within_sigma(hits, trials, 0.3));
  }
}

TEST_CASE("edge count of the oracle and generators") {
  const int trials = 4000;
  const Vertex n = 20;
  const double p = 0.2;
  const double pairs = static_cast<double>(n * (n + 1) / 2);
  const double var = pairs * p * (1 - p);
  RandomSource src(3, 0);
  GnpModel model(n, p);
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) sum += static_cast<double>(naive_generate(model, src).edges.size());
  CHECK(mean_within_sigma(sum / trials, pairs * p, var, trials));
  for (const auto& name : kNames) {
    CAPTURE(name);
    double total = 0.0;
    for (int t = 0; t < trials; ++t) {
      auto gen = make_generator(name, gnp(n, p), static_cast<std::uint64_t>(t) + 1000);
      for (Vertex v = 1; v <= n; ++v)
        for (Vertex u : gen->all_neighbors(v)) total += u >= v;
    }
    CHECK(mean_within_sigma(total / trials, pairs * p, var, trials));
  }
}

TEST_CASE("no-self-loops wrapper") {
  for (const auto& name : kNames) {
    CAPTURE(name);
    NoSelfLoops gen(make_generator(name, gnp(5, 1.0), 1));
    CHECK(gen.next_neighbor(1) == 2);
    CHECK(gen.next_neighbor(3) == 1);
    CHECK(gen.next_neighbor(3) == 2);
    CHECK(gen.next_neighbor(3) == 4);
    CHECK_FALSE(gen.vertex_pair(2, 2));
    CHECK(gen.all_neighbors(4) == std::vector<Vertex>{1, 2, 3, 5});
  }
  NoSelfLoops lonely(make_generator("bucket", gnp(1, 1.0), 1));
  CHECK_FALSE(lonely.random_neighbor(1).has_value());
  NoSelfLoops pairs(make_generator("bucket", gnp(2, 1.0), 1));
  for (int i = 0; i < 20; ++i) CHECK(pairs.random_neighbor(1) == 2);
}

TEST_CASE("random-neighbor support") {
  CHECK_THROWS_AS(make_generator("skip", gnp(5, 0.5), 1)->random_neighbor(1), Unsupported);
  CHECK_THROWS_AS(make_generator("det", gnp(5, 0.5), 1)->random_neighbor(1), Unsupported);
  for (const std::string name : {"naive", "bucket"}) {
    auto gen = make_generator(name, gnp(5, 0.0), 1);
    CHECK_FALSE(gen->random_neighbor(2).has_value());
    auto one = make_generator(name, gnp(1, 1.0), 1);
    CHECK(one->random_neighbor(1) == 1);
  }
}

TEST_CASE("factory rejects mismatches") {
  ModelConfig sw;
  sw.kind = ModelKind::SmallWorld;
  sw.small_world = {4, 1.0, 2, 0};
  CHECK_THROWS_AS(make_generator("bucket", sw, 1), Unsupported);
  CHECK_THROWS_AS(make_generator("smallworld", gnp(4, 0.5), 1), Unsupported);
  CHECK_THROWS_AS(make_generator("bogus", gnp(4, 0.5), 1), Unsupported);
  CHECK(is_generator_name("det"));
  CHECK_FALSE(is_generator_name("fast"));
}
