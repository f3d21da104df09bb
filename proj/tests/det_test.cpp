#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "localgraph/det_generator.hpp"
#include "localgraph/order_stat_tree.hpp"
#include "support.hpp"

using namespace localgraph;

namespace {

DetGenerator make(Vertex n, double p, std::uint64_t seed) {
  return DetGenerator(std::make_unique<GnpModel>(n, p), RandomSource(seed, 0));
}

// Explicit record of every pair the transcript has revealed.
struct Mirror {
  Vertex n;
  std::map<std::pair<Vertex, Vertex>, bool> decided;

  void record(Vertex a, Vertex b, bool edge) { decided[{std::min(a, b), std::max(a, b)}] = edge; }

  // Undecided candidates of v strictly between its frontier and its first
  // recorded neighbor beyond the frontier.
  std::vector<Vertex> candidates(DetGenerator& gen, Vertex v) const {
    const Vertex last = gen.last(v);
    Vertex w = n + 1;
    for (Vertex u = last + 1; u <= n; ++u) {
      auto it = decided.find({std::min(u, v), std::max(u, v)});
      if (it != decided.end() && it->second) {
        w = u;
        break;
      }
    }
    std::vector<Vertex> out;
    for (Vertex u = last + 1; u < w; ++u) {
      if (gen.last(u) >= v) continue;
      if (decided.count({std::min(u, v), std::max(u, v)})) continue;
      out.push_back(u);
    }
    return out;
  }
};

}  // namespace

TEST_CASE("order statistic forest") {
  OrderStatForest f;
  std::uint32_t root = OrderStatForest::kNil;
  std::multiset<std::pair<std::int64_t, std::int64_t>> ref;
  RandomSource src(1, 0);
  for (int i = 0; i < 3000; ++i) {
    const std::pair<std::int64_t, std::int64_t> key{static_cast<std::int64_t>(src.next_below(200)),
                                                    static_cast<std::int64_t>(src.next_below(50))};
    if (src.next_below(3) == 0 && !ref.empty()) {
      const bool had = ref.count(key) > 0;
      CHECK(f.erase(root, key) == had);
      if (had) ref.erase(ref.find(key));
    } else if (!ref.count(key)) {
      f.insert(root, key);
      ref.insert(key);
    }
    if (i % 97 == 0) {
      const auto listed = f.audit(root);
      CHECK(std::vector<std::pair<std::int64_t, std::int64_t>>(ref.begin(), ref.end()) == listed);
    }
  }
  CHECK(f.size(root) == static_cast<std::int64_t>(ref.size()));
  std::int64_t rank = 0;
  for (const auto& key : ref) {
    CHECK(f.select(root, rank) == key);
    CHECK(f.count_less(root, key) == rank);
    CHECK(f.contains(root, key));
    ++rank;
  }
  CHECK(f.live_nodes() == ref.size());
  // Height stays logarithmic: a lookup touches O(log size) nodes.
  f.reset_visits();
  f.count_less(root, {100, 0});
  CHECK(static_cast<double>(f.visits()) <= 1.45 * std::log2(static_cast<double>(ref.size()) + 2) + 2);
}

TEST_CASE("det count and pick on fresh and exhausted rows") {
  auto gen = make(8, 0.5, 1);
  CHECK(gen.count(1) == 8);
  for (Count f = 1; f <= 8; ++f) CHECK(gen.pick(1, f) == f);
  CHECK_THROWS_AS(gen.pick(1, 9), Fault);
  gen.update(1, 9);
  CHECK(gen.count(1) == 0);
  CHECK(gen.last(1) == 9);
  // Vertex 1 has decided its whole row, so every other row lost candidate 1.
  CHECK(gen.count(2) == 7);
  CHECK(gen.pick(2, 1) == 2);
}

TEST_CASE("det ranks shift past a decided non-neighbor") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto gen = make(8, 0.5, seed);
    if (gen.vertex_pair(1, 3)) continue;
    CHECK(gen.count(1) == 7);
    CHECK(gen.pick(1, 2) == 2);
    CHECK(gen.pick(1, 3) == 4);
    return;
  }
  FAIL("no seed produced a non-edge");
}

TEST_CASE("det update is monotone") {
  auto gen = make(16, 0.5, 2);
  gen.update(4, 3);
  gen.update(4, 10);
  CHECK(gen.last(4) == 10);
  CHECK_THROWS_AS(gen.update(4, 8), Fault);
  gen.check_invariants();
}

TEST_CASE("det candidates match the mirrored matrix") {
  const Vertex n = 32;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto gen = make(n, 0.3, seed);
    Mirror mirror{n, {}};
    RandomSource script(seed, 99);
    for (int step = 0; step < 60; ++step) {
      const Vertex v = 1 + static_cast<Vertex>(script.next_below(static_cast<std::uint64_t>(n)));
      const auto kind = script.next_below(3);
      if (kind == 0) {
        const Vertex u = 1 + static_cast<Vertex>(script.next_below(static_cast<std::uint64_t>(n)));
        mirror.record(v, u, gen.vertex_pair(v, u));
      } else {
        const Vertex u = gen.next_neighbor(v);
        if (u <= n) mirror.record(v, u, true);
      }
      if (step % 5 == 0) {
        for (Vertex x = 1; x <= n; ++x) {
          CAPTURE(seed);
          CAPTURE(step);
          CAPTURE(x);
          CHECK(gen.candidates(x) == mirror.candidates(gen, x));
        }
        gen.check_invariants();
      }
    }
    CHECK(gen.zero_removals() <= gen.zero_insertions());
  }
}

TEST_CASE("det next-neighbor consumes one word") {
  auto gen = make(256, 0.05, 5);
  RandomSource pick(6, 0);
  for (int i = 0; i < 5000; ++i) {
    const Vertex v = 1 + static_cast<Vertex>(pick.next_below(256));
    if (i % 3 == 0) gen.vertex_pair(v, 1 + static_cast<Vertex>(pick.next_below(256)));
    const auto before = gen.words_consumed();
    gen.next_neighbor(v);
    CHECK(gen.words_consumed() - before == 1);
  }
}

TEST_CASE("det tree operations touch polylogarithmically many nodes") {
  const Vertex n = 4096;
  auto gen = make(n, 0.002, 7);
  RandomSource pick(8, 0);
  for (int i = 0; i < 20000; ++i) {
    const Vertex v = 1 + static_cast<Vertex>(pick.next_below(static_cast<std::uint64_t>(n)));
    if (i % 4 == 0) gen.vertex_pair(v, 1 + static_cast<Vertex>(pick.next_below(static_cast<std::uint64_t>(n))));
    gen.next_neighbor(v);
  }
  const double lg = std::log2(static_cast<double>(n));
  // Calibrated constant: 8 node visits per log^2 n unit.
  const double cap = 8.0 * lg * lg;
  CHECK(static_cast<double>(gen.max_count_visits()) <= cap);
  CHECK(static_cast<double>(gen.max_pick_visits()) <= cap);
  CHECK(static_cast<double>(gen.max_update_visits()) <= cap);
}

TEST_CASE("det on block models") {
  SbmSpec one;
  one.weights = {1.0};
  one.prob = {{0.3}};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    DetGenerator block(std::make_unique<SbmModel>(40, one, RandomSource(seed, 1)), RandomSource(seed, 0));
    auto plain = make(40, 0.3, seed);
    for (Vertex v = 1; v <= 40; v += 3) CHECK(block.all_neighbors(v) == plain.all_neighbors(v));
  }
  SbmSpec none;
  none.weights = {0.5, 0.5};
  none.prob = {{0.0, 0.0}, {0.0, 0.0}};
  DetGenerator empty(std::make_unique<SbmModel>(20, none, RandomSource(1, 1)), RandomSource(1, 0));
  for (Vertex v = 1; v <= 20; ++v) CHECK(empty.next_neighbor(v) == 21);
  SbmSpec two;
  two.weights = {0.5, 0.5};
  two.prob = {{0.8, 0.1}, {0.1, 0.5}};
  DetGenerator sbm(std::make_unique<SbmModel>(30, two, RandomSource(2, 1)), RandomSource(2, 0));
  RandomSource pick(3, 0);
  for (int i = 0; i < 400; ++i) {
    const Vertex v = 1 + static_cast<Vertex>(pick.next_below(30));
    if (i % 2) sbm.vertex_pair(v, 1 + static_cast<Vertex>(pick.next_below(30)));
    else sbm.next_neighbor(v);
    if (i % 20 == 0) sbm.check_invariants();
  }
}
