#include "localgraph/oracle.hpp"

#include <algorithm>
#include <bit>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>
#include <sstream>

#include "localgraph/distributions.hpp"

namespace localgraph {

bool RealizedGraph::has_edge(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::pair(u, v));
}

RealizedGraph naive_generate(EdgeModel& model, RandomSource& src) {
  const Vertex n = model.n();
  if (n > 1024) throw Fault("naive_generate: n too large to enumerate");
  RealizedGraph g;
  g.n = n;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u; v <= n; ++v) {
      if (sample_bernoulli(model.edge_prob(u, v), src)) g.edges.emplace_back(u, v);
    }
  }
  return g;
}

RealizedGraph naive_generate_sbm(Vertex n, const SbmSpec& spec, RandomSource& src) {
  if (n > 1024) throw Fault("naive_generate: n too large to enumerate");
  spec.validate();
  std::vector<double> cum(spec.weights.size());
  std::partial_sum(spec.weights.begin(), spec.weights.end(), cum.begin());
  cum.back() = 1.0;
  RealizedGraph g;
  g.n = n;
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (auto& label : labels) {
    label = static_cast<int>(invert_monotone(
        0, static_cast<std::int64_t>(cum.size()) - 1,
        [&](std::int64_t k) { return cum[static_cast<std::size_t>(k)]; }, src.next_unit()));
  }
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u; v <= n; ++v) {
      const double p = spec.prob[labels[u - 1]][labels[v - 1]];
      if (sample_bernoulli(p, src)) g.edges.emplace_back(u, v);
    }
  }
  g.communities = std::move(labels);
  return g;
}

std::uint64_t pair_index(Vertex u, Vertex v, Vertex n) {
  if (u > v) std::swap(u, v);
  // Rows 1..u-1 hold n, n-1, ..., n-u+2 cells.
  const auto before = static_cast<std::uint64_t>((u - 1) * n - (u - 1) * (u - 2) / 2);
  return before + static_cast<std::uint64_t>(v - u);
}

std::uint64_t graph_code(const RealizedGraph& g) {
  if (g.n * (g.n + 1) / 2 > 64) throw Fault("graph_code: graph too large");
  std::uint64_t code = 0;
  for (auto [u, v] : g.edges) code |= std::uint64_t{1} << pair_index(u, v, g.n);
  return code;
}

double gnp_code_probability(std::uint64_t code, Vertex n, double p) {
  const int cells = static_cast<int>(n * (n + 1) / 2);
  const int ones = std::popcount(code);
  return std::pow(p, ones) * std::pow(1.0 - p, cells - ones);
}

namespace {

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return static_cast<std::uint64_t>(acc);
}

void enumerate_mvh(const std::vector<Count>& counts, std::size_t k, Count left,
                   std::vector<Count>& cur, double weight, double denom, Pmf& out) {
  if (k + 1 == counts.size()) {
    if (left > counts[k]) return;
    cur[k] = left;
    out[cur] = weight * static_cast<double>(choose(counts[k], left)) / denom;
    return;
  }
  for (Count s = 0; s <= std::min(counts[k], left); ++s) {
    cur[k] = s;
    enumerate_mvh(counts, k + 1, left - s, cur, weight * static_cast<double>(choose(counts[k], s)), denom, out);
  }
}

}  // namespace

Pmf mvh_exact_pmf(const std::vector<Count>& counts, Count ell) {
  const Count total = std::accumulate(counts.begin(), counts.end(), Count{0});
  if (counts.empty() || total > 64) throw Fault("mvh_exact_pmf: urn must hold 1..64 marbles in at least one color");
  if (ell < 0 || ell > total) throw Fault("mvh_exact_pmf: draw count out of range");
  Pmf out;
  std::vector<Count> cur(counts.size(), 0);
  enumerate_mvh(counts, 0, ell, cur, 1.0, static_cast<double>(choose(total, ell)), out);
  return out;
}

double l1_distance(const Histogram& h, const Reference& ref) {
  if (h.total == 0) throw Fault("l1_distance: empty histogram");
  const auto n = static_cast<double>(h.total);
  double dist = 0.0;
  for (const auto& [outcome, q] : ref) {
    auto it = h.counts.find(outcome);
    const double e = it == h.counts.end() ? 0.0 : static_cast<double>(it->second) / n;
    dist += std::abs(e - q);
  }
  for (const auto& [outcome, c] : h.counts) {
    if (ref.count(outcome) == 0) dist += static_cast<double>(c) / n;
  }
  return dist;
}

double l1_distance(const Histogram& a, const Histogram& b) {
  if (a.total == 0 || b.total == 0) throw Fault("l1_distance: empty histogram");
  const auto na = static_cast<double>(a.total);
  const auto nb = static_cast<double>(b.total);
  double dist = 0.0;
  for (const auto& [outcome, c] : a.counts) {
    auto it = b.counts.find(outcome);
    const double other = it == b.counts.end() ? 0.0 : static_cast<double>(it->second) / nb;
    dist += std::abs(static_cast<double>(c) / na - other);
  }
  for (const auto& [outcome, c] : b.counts) {
    if (a.counts.count(outcome) == 0) dist += static_cast<double>(c) / nb;
  }
  return dist;
}

double chi_square_sf(double statistic, double dof) {
  if (dof <= 0.0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

double chi_square_p(const Histogram& h, const Reference& ref) {
  if (h.total == 0) throw Fault("chi_square_p: empty histogram");
  const auto n = static_cast<double>(h.total);
  double stat = 0.0;
  int bins = 0;
  for (const auto& [outcome, q] : ref) {
    if (q <= 0.0) continue;
    ++bins;
    auto it = h.counts.find(outcome);
    const double obs = it == h.counts.end() ? 0.0 : static_cast<double>(it->second);
    const double expect = n * q;
    stat += (obs - expect) * (obs - expect) / expect;
  }
  for (const auto& [outcome, c] : h.counts) {
    auto it = ref.find(outcome);
    if (c > 0 && (it == ref.end() || it->second <= 0.0)) return 0.0;
  }
  return chi_square_sf(stat, bins - 1);
}

std::string format_query(const FuzzQuery& q) {
  std::ostringstream os;
  switch (q.kind) {
    case QueryKind::NextNeighbor: os << "NN " << q.a; break;
    case QueryKind::RandomNeighbor: os << "RN " << q.a; break;
    case QueryKind::VertexPair: os << "VP " << q.a << ' ' << q.b; break;
    case QueryKind::AllNeighbors: os << "AN " << q.a; break;
  }
  return os.str();
}

namespace {

struct Answer {
  Vertex vertex = 0;             // NN, RN (0 for none)
  bool bit = false;              // VP
  std::vector<Vertex> list;      // AN
};

std::vector<FuzzQuery> random_script(const LocalGenerator& gen, std::uint64_t budget, RandomSource& src) {
  std::vector<QueryKind> kinds;
  for (QueryKind k : {QueryKind::NextNeighbor, QueryKind::RandomNeighbor, QueryKind::VertexPair,
                      QueryKind::AllNeighbors}) {
    if (gen.supports(k)) kinds.push_back(k);
  }
  const auto n = static_cast<std::uint64_t>(gen.vertex_count());
  std::vector<FuzzQuery> out;
  for (std::uint64_t i = 0; i < budget; ++i) {
    FuzzQuery q{kinds[src.next_below(kinds.size())]};
    q.a = 1 + static_cast<Vertex>(src.next_below(n));
    q.b = 1 + static_cast<Vertex>(src.next_below(n));
    out.push_back(q);
  }
  return out;
}

// Exhausts next-neighbor on every vertex but a target, then probes the target.
std::vector<FuzzQuery> adversary_script(const LocalGenerator& gen, RandomSource& src) {
  const Vertex n = gen.vertex_count();
  const Vertex target = 1 + static_cast<Vertex>(src.next_below(static_cast<std::uint64_t>(n)));
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Vertex{1});
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[src.next_below(i)]);
  std::vector<FuzzQuery> out;
  for (Vertex v : order) {
    if (v == target) continue;
    for (Vertex k = 0; k <= n; ++k) out.push_back({QueryKind::NextNeighbor, v, 0});
  }
  for (Vertex k = 0; k <= n / 4; ++k) {
    out.push_back({QueryKind::NextNeighbor, target, 0});
    if (gen.supports(QueryKind::VertexPair)) {
      out.push_back({QueryKind::VertexPair, target, 1 + static_cast<Vertex>(src.next_below(static_cast<std::uint64_t>(n)))});
    }
    if (gen.supports(QueryKind::RandomNeighbor)) out.push_back({QueryKind::RandomNeighbor, target, 0});
  }
  out.push_back({QueryKind::AllNeighbors, target, 0});
  return out;
}

std::optional<std::string> run_and_check(LocalGenerator& gen, const std::vector<FuzzQuery>& queries,
                                         std::size_t check_stride, bool directed) {
  const Vertex n = gen.vertex_count();
  std::vector<Answer> answers;
  std::unordered_map<Vertex, Vertex> last_nn;
  answers.reserve(queries.size());
  try {
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const FuzzQuery& q = queries[i];
      Answer a;
      switch (q.kind) {
        case QueryKind::NextNeighbor: {
          a.vertex = gen.next_neighbor(q.a);
          Vertex& prev = last_nn[q.a];
          if (!(a.vertex > prev || (a.vertex == n + 1 && prev == n + 1))) {
            return "next-neighbor not increasing at query " + std::to_string(i);
          }
          prev = a.vertex;
          break;
        }
        case QueryKind::RandomNeighbor: a.vertex = gen.random_neighbor(q.a).value_or(0); break;
        case QueryKind::VertexPair: a.bit = gen.vertex_pair(q.a, q.b); break;
        case QueryKind::AllNeighbors: a.list = gen.all_neighbors(q.a); break;
      }
      answers.push_back(std::move(a));
      if (i % check_stride == 0 || i + 1 == queries.size()) gen.check_invariants();
    }
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n) + 1);
    for (Vertex v = 1; v <= n; ++v) adj[v] = gen.all_neighbors(v);
    gen.check_invariants();
    auto has = [&adj](Vertex v, Vertex u) { return std::binary_search(adj[v].begin(), adj[v].end(), u); };
    for (Vertex v = 1; v <= n; ++v) {
      if (!std::is_sorted(adj[v].begin(), adj[v].end())) return "all-neighbors not sorted";
      if (directed) continue;
      for (Vertex u : adj[v]) {
        if (!has(u, v)) return "realized graph not symmetric at " + std::to_string(v) + "," + std::to_string(u);
      }
    }
    std::unordered_map<Vertex, Vertex> prev;
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const FuzzQuery& q = queries[i];
      const Answer& a = answers[i];
      const std::string where = " (query " + std::to_string(i) + ": " + format_query(q) + ")";
      switch (q.kind) {
        case QueryKind::NextNeighbor: {
          Vertex& from = prev[q.a];
          auto it = std::upper_bound(adj[q.a].begin(), adj[q.a].end(), from);
          const Vertex expect = it == adj[q.a].end() ? n + 1 : *it;
          if (a.vertex != expect) return "next-neighbor answer differs from realized graph" + where;
          from = a.vertex;
          break;
        }
        case QueryKind::RandomNeighbor:
          if (a.vertex == 0 ? !adj[q.a].empty() : !has(q.a, a.vertex)) {
            return "random-neighbor answer not a realized neighbor" + where;
          }
          break;
        case QueryKind::VertexPair:
          if (a.bit != has(q.a, q.b)) return "vertex-pair answer differs from realized graph" + where;
          break;
        case QueryKind::AllNeighbors:
          if (a.list != adj[q.a]) return "all-neighbors answer differs from realized graph" + where;
          break;
      }
    }
  } catch (const Fault& e) {
    return std::string("fault: ") + e.what();
  }
  return std::nullopt;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return RandomSource::block(seed, 0xf022, trial);
}

}  // namespace

std::optional<std::string> replay_and_check(const GeneratorFactory& factory, std::uint64_t seed,
                                            const std::vector<FuzzQuery>& queries, bool directed) {
  auto gen = factory(seed);
  return run_and_check(*gen, queries, 1, directed);
}

FuzzReport fuzz_interleavings(const GeneratorFactory& factory, std::uint64_t queries_per_trial,
                              std::uint64_t trials, std::uint64_t seed, bool directed) {
  FuzzReport report;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t gseed = trial_seed(seed, t);
    auto gen = factory(gseed);
    RandomSource script_src(seed, t);
    const bool adversarial = t % 4 == 3;
    std::vector<FuzzQuery> script =
        adversarial ? adversary_script(*gen, script_src) : random_script(*gen, queries_per_trial, script_src);
    ++report.trials;
    report.queries += script.size();
    auto failure = run_and_check(*gen, script, adversarial ? 64 : 1, directed);
    if (!failure) continue;
    ++report.violations;
    if (report.violations > 1) continue;
    report.first_message = *failure;
    report.first_seed = gseed;
    // Shortest failing prefix.
    report.reproduction = script;
    for (std::size_t len = 0; len <= script.size(); ++len) {
      std::vector<FuzzQuery> prefix(script.begin(), script.begin() + static_cast<std::ptrdiff_t>(len));
      if (auto f = replay_and_check(factory, gseed, prefix, directed)) {
        report.reproduction = std::move(prefix);
        report.first_message = *f;
        break;
      }
    }
  }
  return report;
}

}  // namespace localgraph
