#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace localgraph {

enum class Verdict { Pass, Fail, Skip };

const char* verdict_name(Verdict v);

// Result of a statistics suite as ordered "key: value" lines.
struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  Verdict verdict = Verdict::Pass;
  std::vector<std::string> failing;
  std::vector<std::pair<std::string, std::string>> lines;

  Report(std::string name, std::uint64_t seed_value) : suite(std::move(name)), seed(seed_value) {}

  template <class T>
  void add(const std::string& key, const T& value) {
    std::ostringstream os;
    os.precision(6);
    os << value;
    lines.emplace_back(key, os.str());
  }
  // Records a checked quantity; a failed check turns the verdict to Fail.
  void check(const std::string& key, bool ok);
  void skip(const std::string& reason);
  std::string render() const;
};

struct SuiteOptions {
  std::uint64_t trials = 0;  // 0 selects the suite's default
  std::uint64_t seed = 1;
};

std::vector<std::string> suite_names();
// Throws Unsupported for an unknown suite name.
Report run_suite(const std::string& name, const SuiteOptions& options);

Report run_equivalence(const SuiteOptions& options);
Report run_sbm_equivalence(const SuiteOptions& options);
Report run_uniformity(const SuiteOptions& options);
Report run_iterations(const SuiteOptions& options);
Report run_mvh(const SuiteOptions& options);
Report run_small_world(const SuiteOptions& options);
Report run_scaling(const SuiteOptions& options);
Report run_accounting(const SuiteOptions& options);
Report run_fuzz(const SuiteOptions& options);
Report run_edge_count(const SuiteOptions& options);

}  // namespace localgraph
