#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "localgraph/factory.hpp"
#include "localgraph/io.hpp"
#include "localgraph/suites.hpp"
#include "localgraph/types.hpp"

using namespace localgraph;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct ModelArgs {
  std::string model = "gnp";
  Vertex n = 0;
  double p = 0.0;
  std::string sbm_file;
  std::int64_t side = 0;
  double c = 1.0;
  int boost_k = 2;
  double L = 8.0;
  std::string generator;
  std::uint64_t seed = 1;
  bool no_self_loops = false;
};

void add_model_options(CLI::App* cmd, ModelArgs& args) {
  cmd->add_option("--model", args.model, "gnp | sbm | smallworld")
      ->check(CLI::IsMember({"gnp", "sbm", "smallworld"}));
  cmd->add_option("--n", args.n, "vertex count (gnp, sbm)")->check(CLI::PositiveNumber);
  cmd->add_option("--p", args.p, "edge probability (gnp)")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--sbm-file", args.sbm_file, "block model description (sbm)")->check(CLI::ExistingFile);
  cmd->add_option("--side", args.side, "grid side (smallworld)")->check(CLI::PositiveNumber);
  cmd->add_option("--c", args.c, "long-range constant (smallworld)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--boost-k", args.boost_k, "copies per unit of c when c > 1")->check(CLI::PositiveNumber);
  cmd->add_option("--L", args.L, "expected neighbors per bucket")->check(CLI::Range(1.0, 1e9));
  cmd->add_option("--generator", args.generator, "naive | skip | bucket | det | smallworld");
  cmd->add_option("--seed", args.seed, "random seed");
  cmd->add_flag("--no-self-loops", args.no_self_loops, "drop self-loops from answers");
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ModelConfig build_config(const ModelArgs& args) {
  ModelConfig config;
  config.bucket.L = args.L;
  if (args.model == "gnp") {
    if (args.n <= 0) throw UsageError("--model gnp needs --n");
    config.kind = ModelKind::Gnp;
    config.n = args.n;
    config.p = args.p;
  } else if (args.model == "sbm") {
    if (args.n <= 0 || args.sbm_file.empty()) throw UsageError("--model sbm needs --n and --sbm-file");
    config.kind = ModelKind::Sbm;
    config.n = args.n;
    std::ifstream in(args.sbm_file);
    try {
      config.sbm = parse_sbm(in);
    } catch (const Fault& e) {
      throw UsageError(std::string("bad --sbm-file: ") + e.what());
    }
  } else {
    if (args.side <= 0) throw UsageError("--model smallworld needs --side");
    config.kind = ModelKind::SmallWorld;
    config.small_world = {args.side, args.c, args.boost_k, 0};
    config.n = args.side * args.side;
  }
  return config;
}

std::unique_ptr<LocalGenerator> build_generator(const ModelArgs& args) {
  const ModelConfig config = build_config(args);
  std::string name = args.generator;
  if (name.empty()) name = config.kind == ModelKind::SmallWorld ? "smallworld" : "bucket";
  if (!is_generator_name(name)) throw UsageError("unknown generator: " + name);
  auto gen = make_generator(name, config, args.seed);
  if (args.no_self_loops) gen = std::make_unique<NoSelfLoops>(std::move(gen));
  return gen;
}

int cmd_full(const ModelArgs& args, const std::string& out_path, bool coords) {
  auto gen = build_generator(args);
  FullGraphOptions options;
  options.directed = args.model == "smallworld";
  options.coords = coords;
  if (coords && !options.directed) throw UsageError("--coords applies to --model smallworld only");
  if (out_path.empty()) {
    write_full_graph(*gen, std::cout, options);
    std::cout.flush();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UsageError("cannot open " + out_path);
    write_full_graph(*gen, out, options);
    if (!out) throw Fault("write failed: " + out_path);
  }
  return kExitOk;
}

int cmd_query(const ModelArgs& args) {
  auto gen = build_generator(args);
  std::vector<FuzzQuery> script;
  try {
    script = parse_query_script(std::cin, gen->vertex_count());
  } catch (const Fault& e) {
    throw UsageError(e.what());
  }
  for (const FuzzQuery& q : script) std::cout << answer_query(*gen, q) << '\n';
  std::cout.flush();
  return kExitOk;
}

int cmd_stats(const std::string& suite, const SuiteOptions& options) {
  const Report report = run_suite(suite, options);
  std::cout << report.render();
  std::cout.flush();
  return report.verdict == Verdict::Fail ? kExitFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local-access random graph generation"};
  app.require_subcommand(1);

  ModelArgs args;
  std::string out_path;
  bool coords = false;
  auto* full = app.add_subcommand("full", "Write the whole graph as an edge list");
  add_model_options(full, args);
  full->add_option("--out", out_path, "output file (default standard output)");
  full->add_flag("--coords", coords, "small world: print x1 y1 x2 y2");

  auto* query = app.add_subcommand("query", "Answer a query script read from standard input");
  add_model_options(query, args);

  std::string suite;
  SuiteOptions suite_options;
  auto* stats = app.add_subcommand("stats", "Run a statistics suite");
  stats->add_option("suite", suite, "suite name")->required();
  stats->add_option("--trials", suite_options.trials, "trial count (0 = suite default)");
  stats->add_option("--seed", suite_options.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*full) return cmd_full(args, out_path, coords);
    if (*query) return cmd_query(args);
    return cmd_stats(suite, suite_options);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const Unsupported& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Fault& e) {
    std::cerr << "fault: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "fault: " << e.what() << '\n';
    return kExitFailure;
  }
}
