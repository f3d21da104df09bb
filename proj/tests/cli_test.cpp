#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "localgraph/factory.hpp"
#include "localgraph/io.hpp"
#include "localgraph/suites.hpp"
#include "support.hpp"

using namespace localgraph;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, const std::string& input = "") {
  std::string cmd = std::string(LOCALGRAPH_CLI) + " " + args + " 2>/dev/null";
  if (!input.empty()) cmd = "printf '" + input + "' | " + cmd;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("sbm file parsing") {
  std::istringstream good("2\n0.5 0.5\n0.8 0.1\n0.1 0.5\n");
  const SbmSpec spec = parse_sbm(good);
  CHECK(spec.r() == 2);
  CHECK(spec.prob[0][1] == 0.1);
  std::istringstream asym("2\n0.5 0.5\n0.8 0.2\n0.1 0.5\n");
  CHECK_THROWS_AS(parse_sbm(asym), Fault);
  std::istringstream truncated("2\n0.5 0.5\n0.8\n");
  CHECK_THROWS_AS(parse_sbm(truncated), Fault);
}

TEST_CASE("query script parsing") {
  std::istringstream script("NN 1\n# comment\n\nRN 2  # trailing\nVP 2 3\nAN 4\n");
  const auto qs = parse_query_script(script, 4);
  REQUIRE(qs.size() == 4);
  CHECK(qs[0].kind == QueryKind::NextNeighbor);
  CHECK(qs[2].kind == QueryKind::VertexPair);
  CHECK(qs[2].b == 3);
  std::istringstream range("NN 5\n");
  CHECK_THROWS_AS(parse_query_script(range, 4), Fault);
  std::istringstream junk("XX 1\n");
  CHECK_THROWS_AS(parse_query_script(junk, 4), Fault);
  std::istringstream arity("VP 1\n");
  CHECK_THROWS_AS(parse_query_script(arity, 4), Fault);
}

TEST_CASE("answer rendering") {
  ModelConfig config;
  config.kind = ModelKind::Gnp;
  config.n = 3;
  config.p = 1.0;
  auto gen = make_generator("bucket", config, 1);
  CHECK(answer_query(*gen, {QueryKind::NextNeighbor, 1, 0}) == "1");
  CHECK(answer_query(*gen, {QueryKind::AllNeighbors, 2, 0}) == "1 2 3");
  CHECK(answer_query(*gen, {QueryKind::VertexPair, 2, 3}) == "1");
  for (int i = 0; i < 2; ++i) answer_query(*gen, {QueryKind::NextNeighbor, 1, 0});
  CHECK(answer_query(*gen, {QueryKind::NextNeighbor, 1, 0}) == "NONE");
  config.p = 0.0;
  auto empty = make_generator("bucket", config, 1);
  CHECK(answer_query(*empty, {QueryKind::RandomNeighbor, 1, 0}) == "NONE");
  CHECK(answer_query(*empty, {QueryKind::AllNeighbors, 1, 0}).empty());
}

TEST_CASE("full graph writer") {
  ModelConfig config;
  config.kind = ModelKind::Gnp;
  config.n = 4;
  config.p = 1.0;
  auto gen = make_generator("skip", config, 7);
  std::ostringstream out;
  CHECK(write_full_graph(*gen, out, {}) == 10);
  CHECK(out.str().rfind("1 1\n1 2\n2 2\n", 0) == 0);
  ModelConfig sw;
  sw.kind = ModelKind::SmallWorld;
  sw.small_world = {2, 4.0, 2, 0};
  auto world = make_generator("smallworld", sw, 3);
  std::ostringstream directed;
  CHECK(write_full_graph(*world, directed, {true, false}) == 12);
  std::ostringstream coords;
  write_full_graph(*world, coords, {true, true});
  CHECK(coords.str().rfind("1 1 1 2\n", 0) == 0);
}

TEST_CASE("suite power guard and lookup") {
  SuiteOptions few;
  few.trials = 10;
  CHECK(run_suite("uniformity", few).verdict == Verdict::Skip);
  CHECK(run_suite("equivalence", few).verdict == Verdict::Skip);
  CHECK(run_suite("mvh", few).verdict == Verdict::Skip);
  CHECK_THROWS_AS(run_suite("nope", few), Unsupported);
  Report r("demo", 5);
  r.check("ok", true);
  CHECK(r.verdict == Verdict::Pass);
  r.check("broken", false);
  CHECK(r.verdict == Verdict::Fail);
  const std::string text = r.render();
  CHECK(text.find("failing_invariant: broken") != std::string::npos);
  CHECK(text.find("reproduction_seed: 5") != std::string::npos);
  CHECK(text.find("result: FAIL") != std::string::npos);
}

TEST_CASE("cli full") {
  const Run complete = run("full --model gnp --n 4 --p 1 --seed 7");
  CHECK(complete.status == 0);
  CHECK(count_lines(complete.out) == 10);
  const Run empty = run("full --model gnp --n 4 --p 0 --seed 7");
  CHECK(empty.status == 0);
  CHECK(empty.out.empty());
  const Run big = run("full --model gnp --n 100000 --p 0.00002 --seed 1");
  const double pairs = 100000.0 * 100001.0 / 2.0;
  CHECK(within_sigma(static_cast<double>(count_lines(big.out)), pairs, 0.00002));
  for (const std::string g : {"naive", "skip", "det"}) {
    CHECK(run("full --model gnp --n 4 --p 1 --generator " + g).out == complete.out);
  }
  CHECK(run("full --model gnp --n 50 --p 0.2 --seed 3 --no-self-loops").out.find("1 1\n") == std::string::npos);
}

TEST_CASE("cli models and usage errors") {
  const std::string path = "cli_test_sbm.txt";
  std::ofstream(path) << "2\n0.5 0.5\n0.8 0.1\n0.1 0.5\n";
  CHECK(run("full --model sbm --n 30 --sbm-file " + path + " --seed 2").status == 0);
  CHECK(run("full --model sbm --n 30 --sbm-file " + path + " --generator det --seed 2").status == 0);
  const Run sw = run("full --model smallworld --side 4 --c 1 --seed 2");
  CHECK(sw.status == 0);
  CHECK(count_lines(sw.out) >= 16);
  CHECK(run("full --model smallworld --side 4 --c 1 --coords").status == 0);
  CHECK(run("full --model gnp --p 0.5").status == 2);
  CHECK(run("full --model gnp --n 4 --p 1.5").status == 2);
  CHECK(run("full --model triangle --n 4").status == 2);
  CHECK(run("full --model gnp --n 4 --p 0.5 --generator smallworld").status == 2);
  CHECK(run("frobnicate").status == 2);
}

TEST_CASE("cli query") {
  const Run nn = run("query --model gnp --n 5 --p 1", "NN 1\\nNN 1\\nNN 1\\n");
  CHECK(nn.status == 0);
  CHECK(nn.out == "1\n2\n3\n");
  CHECK(run("query --model gnp --n 5 --p 0", "RN 1\\n").out == "NONE\n");
  const Run vp = run("query --model gnp --n 20 --p 0.5 --seed 4", "VP 2 3\\nVP 3 2\\n");
  CHECK(vp.out.size() == 4);
  CHECK(vp.out[0] == vp.out[2]);
  CHECK(run("query --model gnp --n 5 --p 0.5 --generator det", "RN 1\\n").status == 2);
  CHECK(run("query --model gnp --n 5 --p 0.5", "NN 9\\n").status == 2);
}

TEST_CASE("cli stats exit codes") {
  const Run skip = run("stats uniformity --trials 10");
  CHECK(skip.status == 0);
  CHECK(skip.out.find("result: SKIP") != std::string::npos);
  CHECK(run("stats nope").status == 2);
}

TEST_CASE("cli output is byte-identical across runs") {
  const std::string args = "full --model gnp --n 2000 --p 0.003 --seed 11";
  CHECK(run(args).out == run(args).out);
  CHECK(run(args).out != run("full --model gnp --n 2000 --p 0.003 --seed 12").out);
}
