#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "localgraph/edge_model.hpp"
#include "localgraph/generator.hpp"

namespace localgraph {

struct RealizedGraph {
  Vertex n = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;  // u <= v, sorted
  std::optional<std::vector<int>> communities;   // 0-based, index v-1

  bool has_edge(Vertex u, Vertex v) const;
};

// One independent Bernoulli flip per unordered pair {u, v}, u <= v, in
// row-major order. Limited to n <= 1024.
RealizedGraph naive_generate(EdgeModel& model, RandomSource& src);
// Block model drawn directly: i.i.d. labels, then one flip per pair.
RealizedGraph naive_generate_sbm(Vertex n, const SbmSpec& spec, RandomSource& src);

// Bit index of the pair {u, v} in the row-major order used by graph_code.
std::uint64_t pair_index(Vertex u, Vertex v, Vertex n);
// Edge set of a graph with n(n+1)/2 <= 64 cells as a bit mask.
std::uint64_t graph_code(const RealizedGraph& g);
// Exact probability of the graph with the given code under G(n, p).
double gnp_code_probability(std::uint64_t code, Vertex n, double p);

using Pmf = std::map<std::vector<Count>, double>;
// Exact multivariate hypergeometric law of ell draws from an urn with the
// given color counts (total at most 64).
Pmf mvh_exact_pmf(const std::vector<Count>& counts, Count ell);

struct Histogram {
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(std::uint64_t outcome, std::uint64_t times = 1) {
    counts[outcome] += times;
    total += times;
  }
};

using Reference = std::unordered_map<std::uint64_t, double>;

// Sum over outcomes of |empirical - reference|; mass outside the reference
// support counts in full.
double l1_distance(const Histogram& h, const Reference& ref);
// Two-sample L1 distance between empirical distributions.
double l1_distance(const Histogram& a, const Histogram& b);
// Pearson goodness-of-fit p-value over the reference support; 0 if the
// histogram has mass outside it.
double chi_square_p(const Histogram& h, const Reference& ref);
// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, double dof);

struct FuzzQuery {
  QueryKind kind;
  Vertex a = 0;
  Vertex b = 0;
};

std::string format_query(const FuzzQuery& q);

struct FuzzReport {
  std::uint64_t trials = 0;
  std::uint64_t queries = 0;
  std::uint64_t violations = 0;
  // First failure: message, seed and the shortest failing query prefix.
  std::string first_message;
  std::uint64_t first_seed = 0;
  std::vector<FuzzQuery> reproduction;
};

using GeneratorFactory = std::function<std::unique_ptr<LocalGenerator>(std::uint64_t seed)>;

// Runs random (and, every fourth trial, adversarial) interleavings of the
// queries the generator supports. After each query the generator's own
// invariants are checked; at the end the graph is completed with
// all-neighbors queries and every answer of the transcript is checked
// against it. `directed` treats vertex-pair and neighbor lists as out-edges.
FuzzReport fuzz_interleavings(const GeneratorFactory& factory, std::uint64_t queries_per_trial,
                              std::uint64_t trials, std::uint64_t seed, bool directed = false);

// Replays one query sequence; returns the first violation, if any.
std::optional<std::string> replay_and_check(const GeneratorFactory& factory, std::uint64_t seed,
                                            const std::vector<FuzzQuery>& queries, bool directed);

}  // namespace localgraph
