#include <doctest.h>

#include <cmath>

#include "localgraph/edge_model.hpp"
#include "support.hpp"

using namespace localgraph;

namespace {

SbmSpec two_block() {
  SbmSpec spec;
  spec.weights = {0.5, 0.5};
  spec.prob = {{0.8, 0.1}, {0.1, 0.5}};
  return spec;
}

}  // namespace

TEST_CASE("gnp closed forms") {
  GnpModel m(10, 0.3);
  CHECK(m.edge_prob(1, 2) == 0.3);
  GnpModel half(10, 0.5);
  CHECK(half.survival(1, 1, 2) == doctest::Approx(0.25));
  CHECK(half.survival(1, 5, 4) == 1.0);
  GnpModel tenth(20, 0.1);
  CHECK(tenth.expected_degree_range(3, 1, 10) == doctest::Approx(1.0));
  CHECK(tenth.expected_degree_range(3, 5, 4) == 0.0);
  CHECK_THROWS_AS(m.edge_prob(0, 2), Fault);
  CHECK_THROWS_AS(m.edge_prob(1, 11), Fault);
  CHECK_THROWS_AS(GnpModel(10, 1.2), Fault);
}

TEST_CASE("skip cdf examples") {
  GnpModel half(10, 0.5);
  const DiscreteCdf cdf = half.skip_cdf(1, 0, 3);
  CHECK(cdf.lo == 1);
  CHECK(cdf.hi == 3);
  CHECK(cdf.eval(1) == doctest::Approx(0.5));
  CHECK(cdf.eval(2) == doctest::Approx(0.75));
  CHECK(cdf.eval(3) == doctest::Approx(1.0));
  RandomSource src(1, 0);
  GnpModel zero(10, 0.0);
  GnpModel one(10, 1.0);
  for (int i = 0; i < 50; ++i) {
    CHECK(zero.sample_skip(1, 4, 7, src) == 7);
    CHECK(one.sample_skip(1, 4, 7, src) == 5);
  }
}

TEST_CASE("survival splits multiplicatively") {
  GnpModel g(1000, 0.013);
  RandomSource rng(3, 0);
  SbmModel s(1000, two_block(), rng);
  for (EdgeModel* m : {static_cast<EdgeModel*>(&g), static_cast<EdgeModel*>(&s)}) {
    for (Vertex a : {1, 17, 400}) {
      for (Vertex b : {a + 1, a + 90, Vertex{1000}}) {
        for (Vertex mid = a; mid < b; mid += std::max<Vertex>(1, (b - a) / 7)) {
          const double whole = m->survival(5, a, b);
          const double split = m->survival(5, a, mid) * m->survival(5, mid + 1, b);
          CHECK(std::abs(whole - split) <= 0x1.0p-40 * std::max(whole, 1e-300));
          const double e = m->expected_degree_range(5, a, b);
          const double es = m->expected_degree_range(5, a, mid) + m->expected_degree_range(5, mid + 1, b);
          CHECK(e == doctest::Approx(es).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("skip cdf is non-decreasing and reaches one") {
  RandomSource rng(4, 0);
  SbmModel s(300, two_block(), rng);
  const DiscreteCdf cdf = s.skip_cdf(7, 20, 250);
  double prev = 0.0;
  for (std::int64_t f = cdf.lo; f <= cdf.hi; ++f) {
    CHECK(cdf.eval(f) >= prev);
    prev = cdf.eval(f);
  }
  CHECK(prev == doctest::Approx(1.0));
}

TEST_CASE("sbm forced communities") {
  SbmSpec spec = two_block();
  spec.weights = {1.0, 0.0};
  SbmModel all_first(10, spec, RandomSource(1, 1));
  CHECK(all_first.edge_prob(1, 2) == 0.8);
  spec.weights = {0.5, 0.5};
  spec.fixed_sizes = std::vector<Count>{1, 1};
  SbmModel split(2, spec, RandomSource(1, 1));
  CHECK(split.edge_prob(1, 2) == doctest::Approx(0.1));
}

TEST_CASE("sbm range quantities against per-vertex sums") {
  SbmModel s(1024, two_block(), RandomSource(9, 1));
  for (Vertex v : {1, 300, 1024}) {
    for (auto [a, b] : {std::pair<Vertex, Vertex>{1, 1024}, {10, 20}, {513, 700}, {44, 44}}) {
      double log_prod = 0.0;
      double sum = 0.0;
      for (Vertex u = a; u <= b; ++u) {
        log_prod += std::log1p(-s.edge_prob(v, u));
        sum += s.edge_prob(v, u);
      }
      CHECK(s.log_survival(v, a, b) == doctest::Approx(log_prod).epsilon(1e-12));
      CHECK(s.expected_degree_range(v, a, b) == doctest::Approx(sum).epsilon(1e-12));
    }
  }
}

TEST_CASE("sbm survival example") {
  // v in community 0, range holding two community-0 vertices and one community-1 vertex.
  SbmSpec spec = two_block();
  SbmModel s(64, spec, RandomSource(21, 1));
  const int cv = s.community_of(1);
  REQUIRE(cv >= 0);
  for (Vertex a = 2; a + 2 <= 64; ++a) {
    int c0 = 0;
    for (Vertex u = a; u <= a + 2; ++u) c0 += s.community_of(u) == 0;
    if (c0 != 2 || s.community_of(1) != 0) continue;
    CHECK(s.survival(1, a, a + 2) == doctest::Approx(0.2 * 0.2 * 0.9));
    CHECK(s.expected_degree_range(1, a, a + 2) == doctest::Approx(1.7));
    return;
  }
}

TEST_CASE("sbm spec validation") {
  SbmSpec spec = two_block();
  spec.prob[0][1] = 0.2;
  CHECK_THROWS_AS(spec.validate(), Fault);
  spec = two_block();
  spec.weights = {0.5, 0.6};
  CHECK_THROWS_AS(spec.validate(), Fault);
  spec = two_block();
  spec.prob[1][1] = 1.5;
  CHECK_THROWS_AS(spec.validate(), Fault);
  CHECK_NOTHROW(two_block().validate());
}
