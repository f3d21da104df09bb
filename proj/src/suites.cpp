#include "localgraph/suites.hpp"

#include <algorithm>
#include <bit>
#include <boost/math/distributions/normal.hpp>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <streambuf>
#include <thread>

#include "localgraph/community.hpp"
#include "localgraph/det_generator.hpp"
#include "localgraph/factory.hpp"
#include "localgraph/io.hpp"
#include "localgraph/oracle.hpp"
#include "localgraph/skip_generator.hpp"
#include "localgraph/thresholds.hpp"

namespace localgraph {

namespace th = thresholds;

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skip: return "SKIP";
  }
  return "?";
}

void Report::check(const std::string& key, bool ok) {
  lines.emplace_back(key, ok ? "PASS" : "FAIL");
  if (!ok) {
    failing.push_back(key);
    if (verdict != Verdict::Skip) verdict = Verdict::Fail;
  }
}

void Report::skip(const std::string& reason) {
  verdict = Verdict::Skip;
  lines.emplace_back("skip_reason", reason);
}

std::string Report::render() const {
  std::ostringstream os;
  os << "suite: " << suite << '\n';
  for (const auto& [k, v] : lines) os << k << ": " << v << '\n';
  for (const auto& k : failing) os << "failing_invariant: " << k << '\n';
  if (verdict == Verdict::Fail) os << "reproduction_seed: " << seed << '\n';
  os << "result: " << verdict_name(verdict) << '\n';
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  return RandomSource::block(seed, tag, index);
}

std::uint64_t pick_trials(const SuiteOptions& options, std::uint64_t fallback) {
  return options.trials == 0 ? fallback : options.trials;
}

// Smallest trial count for which a histogram comparison is meaningful.
constexpr std::uint64_t kMinHistogramTrials = 1000;

const std::vector<std::string> kUndirectedGenerators = {"naive", "skip", "bucket", "det"};

// Edge code of the graph reached by exhausting next-neighbor on every vertex.
std::uint64_t exhaust_code(LocalGenerator& gen) {
  const Vertex n = gen.vertex_count();
  std::uint64_t code = 0;
  for (Vertex v = 1; v <= n; ++v) {
    for (Vertex u = gen.next_neighbor(v); u <= n; u = gen.next_neighbor(v)) {
      code |= std::uint64_t{1} << pair_index(v, u, n);
    }
  }
  return code;
}

class NullBuffer : public std::streambuf {
 protected:
  int overflow(int c) override { return c; }
  std::streamsize xsputn(const char*, std::streamsize count) override { return count; }
};

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs fn(worker, t) for every trial t, striding trials across worker threads.
// Every trial seeds itself from t, so results do not depend on the split.
template <typename Fn>
void fan_out(std::uint64_t trials, unsigned workers, Fn&& fn) {
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&fn, trials, workers, w] {
      for (std::uint64_t t = w; t < trials; t += workers) fn(w, t);
    });
  }
}

// Per-trial outcome codes, computed in parallel and tallied in trial order.
template <typename Fn>
Histogram tally(std::uint64_t trials, Fn&& code_of) {
  std::vector<std::uint64_t> codes(trials);
  fan_out(trials, worker_count(), [&](unsigned, std::uint64_t t) { codes[t] = code_of(t); });
  Histogram h;
  for (std::uint64_t c : codes) h.add(c);
  return h;
}

std::string fixed(double x, int digits = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace

Report run_equivalence(const SuiteOptions& options) {
  Report report{"equivalence", options.seed};
  const std::uint64_t trials = pick_trials(options, th::kEquivalenceTrials);
  report.add("trials", trials);
  report.add("threshold_l1", th::kEquivalenceL1);
  if (trials < kMinHistogramTrials) {
    report.skip("fewer than " + std::to_string(kMinHistogramTrials) + " trials");
    return report;
  }
  const Vertex n = th::kEquivalenceN;
  const std::uint64_t cells = static_cast<std::uint64_t>(n * (n + 1) / 2);
  for (double p : th::kEquivalenceP) {
    Reference ref;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << cells); ++code) {
      ref[code] = gnp_code_probability(code, n, p);
    }
    const std::string leg = "p" + fixed(p, 1);
    // Calibration: the same statistic for the brute-force oracle.
    GnpModel model(n, p);
    const Histogram oracle = tally(trials, [&](std::uint64_t t) {
      RandomSource src(derive_seed(options.seed, 0xe0, t), 0);
      return graph_code(naive_generate(model, src));
    });
    report.add(leg + ".oracle_l1", fixed(l1_distance(oracle, ref)));
    ModelConfig config;
    config.kind = ModelKind::Gnp;
    config.n = n;
    config.p = p;
    for (const std::string& name : kUndirectedGenerators) {
      const auto start = Clock::now();
      const Histogram h = tally(trials, [&](std::uint64_t t) {
        auto gen = make_generator(name, config, derive_seed(options.seed, 0xe1, t));
        return exhaust_code(*gen);
      });
      const double l1 = l1_distance(h, ref);
      report.add(leg + "." + name + ".l1", fixed(l1));
      report.add(leg + "." + name + ".seconds", fixed(seconds_since(start), 2));
      report.check(leg + "." + name + ".l1_within_threshold", l1 <= th::kEquivalenceL1);
      report.check(leg + "." + name + ".runtime_within_limit",
                   seconds_since(start) * static_cast<double>(th::kEquivalenceP.size()) <=
                       th::kEquivalenceSecondsPerGenerator);
    }
  }
  return report;
}

Report run_sbm_equivalence(const SuiteOptions& options) {
  Report report{"sbm", options.seed};
  const std::uint64_t trials = pick_trials(options, th::kSbmTrials);
  report.add("trials", trials);
  report.add("threshold_l1", th::kSbmL1);
  if (trials < kMinHistogramTrials) {
    report.skip("fewer than " + std::to_string(kMinHistogramTrials) + " trials");
    return report;
  }
  const auto start = Clock::now();
  const Vertex n = th::kSbmN;
  const std::uint64_t cells = static_cast<std::uint64_t>(n * (n + 1) / 2);
  ModelConfig config;
  config.kind = ModelKind::Sbm;
  config.n = n;
  config.sbm.weights = {0.5, 0.5};
  config.sbm.prob = {{0.8, 0.1}, {0.1, 0.5}};
  auto label_code = [](const std::vector<int>& labels) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) code |= static_cast<std::uint64_t>(labels[i]) << i;
    return code;
  };
  const std::uint64_t edge_mask = (std::uint64_t{1} << cells) - 1;
  // Label marginal and mean edge count of a joint histogram.
  auto summarize = [&](const Histogram& joint) {
    Histogram labels;
    double edges = 0.0;
    for (const auto& [code, times] : joint.counts) {
      labels.add(code >> cells, times);
      edges += static_cast<double>(std::popcount(code & edge_mask) * times);
    }
    return std::pair{labels, edges / static_cast<double>(joint.total)};
  };
  const Histogram oracle = tally(trials, [&](std::uint64_t t) {
    RandomSource src(derive_seed(options.seed, 0x5b0, t), 0);
    const RealizedGraph g = naive_generate_sbm(n, config.sbm, src);
    return (label_code(*g.communities) << cells) | graph_code(g);
  });
  const auto [oracle_labels, oracle_edges] = summarize(oracle);
  Reference uniform_labels;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) uniform_labels[code] = 1.0 / 64.0;
  report.add("oracle.label_l1", fixed(l1_distance(oracle_labels, uniform_labels)));
  report.add("oracle.mean_edges", fixed(oracle_edges));
  report.add("oracle.distinct_outcomes", oracle.counts.size());
  for (const std::string& name : kUndirectedGenerators) {
    const Histogram h = tally(trials, [&](std::uint64_t t) {
      EdgeModel* model = nullptr;
      auto gen = make_generator(name, config, derive_seed(options.seed, 0x5b1, t), &model);
      const std::uint64_t code = exhaust_code(*gen);
      auto* sbm = static_cast<SbmModel*>(model);
      std::vector<int> labels;
      for (Vertex v = 1; v <= n; ++v) labels.push_back(sbm->community_of(v));
      return (label_code(labels) << cells) | code;
    });
    const auto [labels_only, edges] = summarize(h);
    const double l1 = l1_distance(h, oracle);
    report.add(name + ".joint_l1", fixed(l1));
    report.add(name + ".label_l1", fixed(l1_distance(labels_only, uniform_labels)));
    report.add(name + ".mean_edges", fixed(edges));
    report.check(name + ".joint_l1_within_threshold", l1 <= th::kSbmL1);
  }
  const double elapsed = seconds_since(start);
  report.add("seconds", fixed(elapsed, 2));
  report.check("runtime_within_limit", elapsed <= th::kSbmSeconds);
  return report;
}

Report run_uniformity(const SuiteOptions& options) {
  Report report{"uniformity", options.seed};
  const std::uint64_t queries = pick_trials(options, th::kUniformityQueries);
  report.add("queries_per_repetition", queries);
  report.add("repetitions", th::kUniformityRepetitions);
  ModelConfig config;
  config.kind = ModelKind::Gnp;
  config.n = th::kUniformityN;
  config.p = th::kUniformityP;
  int failures = 0;
  int tested = 0;
  double min_p = 1.0;
  for (int rep = 0; rep < th::kUniformityRepetitions; ++rep) {
    auto gen = make_generator("bucket", config, derive_seed(options.seed, 0x0f, static_cast<std::uint64_t>(rep)));
    const Vertex v = 1;
    Histogram h;
    for (std::uint64_t q = 0; q < queries; ++q) {
      const auto u = gen->random_neighbor(v);
      h.add(u ? static_cast<std::uint64_t>(*u) : 0);
    }
    const std::vector<Vertex> neighbors = gen->all_neighbors(v);
    if (neighbors.empty()) {
      report.check("rep" + std::to_string(rep) + ".isolated_answers_none", h.counts.size() == 1 && h.counts.count(0) == 1);
      continue;
    }
    if (static_cast<double>(queries) / static_cast<double>(neighbors.size()) < th::kMinExpectedPerBin) {
      report.skip("fewer than " + fixed(th::kMinExpectedPerBin, 0) + " expected answers per neighbor");
      return report;
    }
    Reference ref;
    for (Vertex u : neighbors) ref[static_cast<std::uint64_t>(u)] = 1.0 / static_cast<double>(neighbors.size());
    const double p = chi_square_p(h, ref);
    min_p = std::min(min_p, p);
    ++tested;
    if (p <= th::kChiSquareAlpha) ++failures;
    report.add("rep" + std::to_string(rep) + ".degree", neighbors.size());
    report.add("rep" + std::to_string(rep) + ".chi_square_p", fixed(p, 6));
  }
  report.add("failures", failures);
  report.add("min_p", fixed(min_p, 6));
  report.check("failures_within_allowance", failures <= th::kUniformityMaxFailures);
  return report;
}

Report run_iterations(const SuiteOptions& options) {
  Report report{"iterations", options.seed};
  const std::uint64_t calls = pick_trials(options, th::kSkipIterationsCalls);
  const Vertex n = th::kSkipIterationsN;
  const double log2n = std::log2(static_cast<double>(n));
  const double skip_cap = th::kSkipIterationsLogFactor * log2n + th::kSkipIterationsSlack;
  {
    std::uint64_t measured = 0;
    std::int64_t worst = 0;
    std::int64_t total = 0;
    std::uint64_t trial = 0;
    while (measured < calls) {
      RandomSource order_src(options.seed, 0xa0 + trial);
      SkipGenerator gen(std::make_unique<GnpModel>(n, th::kSkipIterationsP),
                        RandomSource(derive_seed(options.seed, 0xa1, trial), 0));
      ++trial;
      std::vector<Vertex> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), Vertex{1});
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[order_src.next_below(i)]);
      const auto split = order.end() - th::kSkipIterationsTargets;
      for (auto it = order.begin(); it != split; ++it) {
        while (gen.next_neighbor(*it) <= n) {
        }
      }
      for (auto it = split; it != order.end() && measured < calls; ++it) {
        for (;;) {
          const Vertex u = gen.next_neighbor(*it);
          ++measured;
          worst = std::max(worst, gen.last_iterations());
          total += gen.last_iterations();
          if (u > n || measured >= calls) break;
        }
      }
    }
    report.add("skip.calls", measured);
    report.add("skip.trials", trial);
    report.add("skip.mean_iterations", fixed(static_cast<double>(total) / static_cast<double>(measured)));
    report.add("skip.max_iterations", worst);
    report.add("skip.cap", fixed(skip_cap, 1));
    report.check("skip.max_within_cap", static_cast<double>(worst) <= skip_cap);
  }
  {
    ModelConfig config;
    config.kind = ModelKind::Gnp;
    config.n = th::kFillN;
    config.p = th::kFillExpectedDegree / static_cast<double>(th::kFillN);
    auto gen = make_generator("bucket", config, derive_seed(options.seed, 0xa2, 0));
    auto* bucket = static_cast<BucketGenerator*>(gen.get());
    for (Vertex v = 1; v <= config.n; ++v) bucket->all_neighbors(v);
    const double mean = static_cast<double>(bucket->fill_iterations()) / static_cast<double>(bucket->fills());
    report.add("fill.fills", bucket->fills());
    report.add("fill.mean_iterations", fixed(mean));
    report.add("fill.cap", fixed(bucket->L() + th::kFillMeanSlack, 1));
    report.check("fill.mean_within_cap", mean <= bucket->L() + th::kFillMeanSlack);
  }
  {
    ModelConfig config;
    config.kind = ModelKind::Gnp;
    config.n = th::kRejectionN;
    config.p = th::kRejectionExpectedDegree / static_cast<double>(th::kRejectionN);
    auto gen = make_generator("bucket", config, derive_seed(options.seed, 0xa3, 0));
    auto* bucket = static_cast<BucketGenerator*>(gen.get());
    RandomSource pick(options.seed, 0xa4);
    for (std::uint64_t q = 0; q < th::kRejectionQueries; ++q) {
      bucket->random_neighbor(1 + static_cast<Vertex>(pick.next_below(static_cast<std::uint64_t>(config.n))));
    }
    const double l2 = std::log2(static_cast<double>(config.n));
    const double cap = th::kRejectionCapFactor * l2 * l2;
    report.add("rejection.queries", bucket->rejection_queries());
    report.add("rejection.buckets_per_vertex", bucket->bucket_count(1));
    report.add("rejection.mean_iterations",
               fixed(static_cast<double>(bucket->total_rejection_iterations()) /
                     static_cast<double>(bucket->rejection_queries())));
    report.add("rejection.max_iterations", bucket->max_rejection_iterations());
    report.add("rejection.cap", fixed(cap, 1));
    report.check("rejection.max_within_cap", static_cast<double>(bucket->max_rejection_iterations()) <= cap);
  }
  return report;
}

Report run_mvh(const SuiteOptions& options) {
  Report report{"mvh", options.seed};
  const std::uint64_t draws = pick_trials(options, th::kMvhTrials);
  report.add("draws_per_case", draws);
  report.add("threshold_l1", th::kMvhL1);
  if (draws < kMinHistogramTrials) {
    report.skip("fewer than " + std::to_string(kMinHistogramTrials) + " draws");
    return report;
  }
  const auto start = Clock::now();
  std::vector<std::vector<Count>> urns;
  for (Count a = 1; a <= th::kMvhMaxTotal; ++a) {
    urns.push_back({a});
    for (Count b = 1; a + b <= th::kMvhMaxTotal; ++b) {
      if (th::kMvhMaxColors >= 2) urns.push_back({a, b});
      for (Count c = 1; a + b + c <= th::kMvhMaxTotal && th::kMvhMaxColors >= 3; ++c) urns.push_back({a, b, c});
    }
  }
  auto encode = [](const std::vector<Count>& s) {
    std::uint64_t code = 0;
    for (Count x : s) code = code * 16 + static_cast<std::uint64_t>(x);
    return code;
  };
  std::uint64_t cases = 0;
  double worst = 0.0;
  std::string worst_case;
  std::uint64_t over = 0;
  for (const auto& urn : urns) {
    const Count total = std::accumulate(urn.begin(), urn.end(), Count{0});
    for (Count ell = 0; ell <= total; ++ell) {
      Reference ref;
      for (const auto& [s, q] : mvh_exact_pmf(urn, ell)) ref[encode(s)] = q;
      RandomSource src(options.seed, derive_seed(0x3b, encode(urn), static_cast<std::uint64_t>(ell)));
      Histogram h;
      for (std::uint64_t t = 0; t < draws; ++t) h.add(encode(sample_mvh(urn, ell, src)));
      const double l1 = l1_distance(h, ref);
      ++cases;
      if (l1 > th::kMvhL1) ++over;
      if (l1 > worst) {
        worst = l1;
        std::ostringstream os;
        os << '(';
        for (std::size_t k = 0; k < urn.size(); ++k) os << (k ? "," : "") << urn[k];
        os << ") ell=" << ell;
        worst_case = os.str();
      }
    }
  }
  const double elapsed = seconds_since(start);
  report.add("cases", cases);
  report.add("cases_over_threshold", over);
  report.add("worst_l1", fixed(worst));
  report.add("worst_case", worst_case);
  report.add("seconds", fixed(elapsed, 2));
  report.check("all_cases_within_threshold", over == 0);
  report.check("runtime_within_limit", elapsed <= th::kMvhSeconds);
  return report;
}

Report run_small_world(const SuiteOptions& options) {
  Report report{"smallworld", options.seed};
  const std::uint64_t trials = pick_trials(options, th::kSmallWorldTrials);
  report.add("trials", trials);
  if (trials < kMinHistogramTrials) {
    report.skip("fewer than " + std::to_string(kMinHistogramTrials) + " trials");
    return report;
  }
  const std::int64_t side = th::kSmallWorldSide;
  const Vertex n = side * side;
  const double pairs = static_cast<double>(n * (n - 1));
  // Family-wise diagnostic band: the same per-pair z test at alpha / pairs.
  const boost::math::normal normal;
  const double z_family = boost::math::quantile(boost::math::complement(normal, th::kChiSquareAlpha / (2.0 * pairs)));
  report.add("family_z", fixed(z_family, 3));
  for (double c : th::kSmallWorldC) {
    const std::string leg = "c" + fixed(c, 1);
    const auto cells = static_cast<std::size_t>(n * n);
    const SmallWorldParams params{side, c, 2, 0};
    const unsigned workers = worker_count();
    std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(cells, 0));
    fan_out(trials, workers, [&](unsigned w, std::uint64_t t) {
      SmallWorldParams mine = params;
      mine.seed = derive_seed(options.seed, 0x5a, t);
      SmallWorldGenerator gen(mine);
      for (Vertex v = 1; v <= n; ++v) {
        for (const OutEdge& e : gen.out_edges(v)) ++partial[w][static_cast<std::size_t>((v - 1) * n + e.target - 1)];
      }
    });
    std::vector<std::uint64_t> hits(cells, 0);
    for (const auto& part : partial) {
      for (std::size_t k = 0; k < cells; ++k) hits[k] += part[k];
    }
    SmallWorldGenerator geometry(params);
    std::uint64_t outside = 0;
    std::uint64_t outside_family = 0;
    double worst_z = 0.0;
    const auto T = static_cast<double>(trials);
    for (Vertex v = 1; v <= n; ++v) {
      for (Vertex u = 1; u <= n; ++u) {
        if (u == v) continue;
        const auto d = static_cast<double>(manhattan(geometry.coords(v), geometry.coords(u)));
        const double p = std::min(c / (d * d), 1.0);
        const double observed = static_cast<double>(hits[static_cast<std::size_t>((v - 1) * n + u - 1)]);
        const double sigma = std::sqrt(T * p * (1.0 - p));
        const double dev = std::abs(observed - T * p);
        const double z = sigma > 0.0 ? dev / sigma : (dev > 0.0 ? INFINITY : 0.0);
        worst_z = std::max(worst_z, z);
        if (z > th::kSigmaBand) ++outside;
        if (z > z_family) ++outside_family;
      }
    }
    report.add(leg + ".pairs_outside_3sigma", outside);
    report.add(leg + ".expected_outside_3sigma_if_exact", fixed(pairs * 0.0027, 1));
    report.add(leg + ".pairs_outside_family_band", outside_family);
    report.add(leg + ".worst_z", fixed(worst_z, 3));
    report.check(leg + ".every_pair_within_3sigma", outside == 0);
  }
  {
    double worst = 0.0;
    for (std::int64_t a = 1; a <= th::kTelescopeMax; ++a) {
      double log_direct = 0.0;
      for (std::int64_t d = a; d <= th::kTelescopeMax; ++d) {
        const auto i = static_cast<double>(d);
        log_direct += 4.0 * i * std::log1p(-1.0 / (i * i));
        const double direct = -std::expm1(log_direct);
        const double closed = next_distance_cdf(a, d);
        const double rel = direct == 0.0 ? std::abs(closed) : std::abs(closed - direct) / std::abs(direct);
        worst = std::max(worst, rel);
      }
    }
    report.add("telescope.worst_relative_error", worst);
    report.check("telescope.within_tolerance", worst <= th::kTelescopeRelTol);
  }
  const std::int64_t big = th::kDegreeSide;
  const Vertex big_n = big * big;
  for (double c : th::kSmallWorldC) {
    const std::string leg = "degree.c" + fixed(c, 1);
    // Brute force over all ordered pairs, grouped by coordinate offsets.
    double expected = 0.0;
    for (std::int64_t dx = -(big - 1); dx <= big - 1; ++dx) {
      for (std::int64_t dy = -(big - 1); dy <= big - 1; ++dy) {
        if (dx == 0 && dy == 0) continue;
        const auto d = static_cast<double>(std::abs(dx) + std::abs(dy));
        const auto placements = static_cast<double>((big - std::abs(dx)) * (big - std::abs(dy)));
        expected += placements * std::min(c / (d * d), 1.0);
      }
    }
    expected /= static_cast<double>(big_n);
    double total = 0.0;
    for (int rep = 0; rep < th::kDegreeRealizations; ++rep) {
      SmallWorldGenerator gen({big, c, 2, derive_seed(options.seed, 0x5d, static_cast<std::uint64_t>(rep))});
      for (Vertex v = 1; v <= big_n; ++v) total += static_cast<double>(gen.out_edges(v).size());
    }
    const double mean = total / static_cast<double>(big_n * th::kDegreeRealizations);
    const double rel = std::abs(mean - expected) / expected;
    report.add(leg + ".mean", fixed(mean));
    report.add(leg + ".expected", fixed(expected));
    report.check(leg + ".within_tolerance", rel <= th::kDegreeRelTol);
  }
  return report;
}

Report run_scaling(const SuiteOptions& options) {
  Report report{"scaling", options.seed};
  double prev_seconds = 0.0;
  double prev_words = 0.0;
  std::int64_t prev_n = 0;
  for (std::int64_t n : th::kScalingN) {
    ModelConfig config;
    config.kind = ModelKind::Gnp;
    config.n = n;
    config.p = th::kScalingExpectedDegree / static_cast<double>(n);
    double best = INFINITY;
    std::uint64_t words = 0;
    std::size_t stored = 0;
    std::uint64_t edges = 0;
    for (int run = 0; run < th::kScalingTimingRuns; ++run) {
      NullBuffer sink_buffer;
      std::ostream sink(&sink_buffer);
      const auto start = Clock::now();
      auto gen = make_generator("bucket", config, options.seed);
      edges = write_full_graph(*gen, sink, {});
      best = std::min(best, seconds_since(start));
      words = gen->words_consumed();
      stored = gen->stored_entries();
    }
    const std::string leg = "n" + std::to_string(n);
    report.add(leg + ".seconds", fixed(best, 3));
    report.add(leg + ".words", words);
    report.add(leg + ".edges", edges);
    report.add(leg + ".stored_entries", stored);
    report.check(leg + ".stored_within_bound",
                 static_cast<double>(stored) <= th::kStoredEntriesFactor * static_cast<double>(n + static_cast<std::int64_t>(edges)));
    if (prev_n != 0) {
      const double time_growth = best / prev_seconds;
      const double word_growth = static_cast<double>(words) / prev_words;
      report.add(leg + ".time_growth", fixed(time_growth, 2));
      report.add(leg + ".word_growth", fixed(word_growth, 2));
      report.check(leg + ".time_growth_within_bound", time_growth <= th::kScalingMaxGrowth);
      report.check(leg + ".word_growth_within_bound", word_growth <= th::kScalingMaxGrowth);
    }
    prev_n = n;
    prev_seconds = best;
    prev_words = static_cast<double>(words);
  }
  return report;
}

Report run_accounting(const SuiteOptions& options) {
  Report report{"accounting", options.seed};
  const std::uint64_t queries = pick_trials(options, th::kAccountingQueries);
  const Vertex n = th::kAccountingN;
  std::uint64_t asked = 0;
  std::uint64_t mismatches = 0;
  RandomSource pick(options.seed, 0xac);
  std::unique_ptr<DetGenerator> gen;
  for (std::uint64_t q = 0; q < queries; ++q) {
    if (q % 10000 == 0) {
      gen = std::make_unique<DetGenerator>(std::make_unique<GnpModel>(n, th::kAccountingP),
                                           RandomSource(derive_seed(options.seed, 0xad, q), 0));
    }
    const Vertex v = 1 + static_cast<Vertex>(pick.next_below(static_cast<std::uint64_t>(n)));
    if (pick.next_below(2) == 0) {
      gen->vertex_pair(v, 1 + static_cast<Vertex>(pick.next_below(static_cast<std::uint64_t>(n))));
    }
    const std::uint64_t before = gen->words_consumed();
    gen->next_neighbor(v);
    ++asked;
    if (gen->words_consumed() - before != 1) ++mismatches;
  }
  report.add("next_neighbor_queries", asked);
  report.add("queries_not_using_one_word", mismatches);
  report.check("one_word_per_next_neighbor", mismatches == 0);
  return report;
}

Report run_fuzz(const SuiteOptions& options) {
  Report report{"fuzz", options.seed};
  const std::uint64_t trials = pick_trials(options, th::kFuzzTrials);
  report.add("trials_per_generator", trials);
  ModelConfig gnp;
  gnp.kind = ModelKind::Gnp;
  gnp.n = th::kFuzzN;
  gnp.p = th::kFuzzP;
  ModelConfig sw;
  sw.kind = ModelKind::SmallWorld;
  sw.small_world = {8, 1.0, 2, 0};
  std::vector<std::pair<std::string, ModelConfig>> runs;
  for (const auto& name : kUndirectedGenerators) runs.emplace_back(name, gnp);
  runs.emplace_back("smallworld", sw);
  for (const auto& [name, config] : runs) {
    const auto start = Clock::now();
    GeneratorFactory factory = [&name = name, &config = config](std::uint64_t seed) {
      return make_generator(name, config, seed);
    };
    const FuzzReport fr =
        fuzz_interleavings(factory, th::kFuzzQueriesPerTrial, trials, options.seed, name == "smallworld");
    report.add(name + ".queries", fr.queries);
    report.add(name + ".violations", fr.violations);
    report.add(name + ".seconds", fixed(seconds_since(start), 2));
    if (fr.violations > 0) {
      report.add(name + ".first_violation", fr.first_message);
      report.add(name + ".reproduction_seed", fr.first_seed);
      std::string script;
      for (const auto& q : fr.reproduction) script += format_query(q) + "; ";
      report.add(name + ".reproduction_queries", script);
    }
    report.check(name + ".no_violations", fr.violations == 0);
  }
  return report;
}

Report run_edge_count(const SuiteOptions& options) {
  Report report{"edgecount", options.seed};
  const std::uint64_t trials = pick_trials(options, th::kEdgeCountTrials);
  report.add("trials_per_generator", trials);
  if (trials < 100) {
    report.skip("fewer than 100 trials");
    return report;
  }
  ModelConfig config;
  config.kind = ModelKind::Gnp;
  config.n = th::kEdgeCountN;
  config.p = th::kEdgeCountP;
  const double cells = static_cast<double>(config.n * (config.n + 1) / 2);
  const double exact_mean = cells * config.p;
  struct Moments {
    double mean;
    double var;
  };
  std::vector<std::pair<std::string, Moments>> all;
  for (const auto& name : kUndirectedGenerators) {
    double sum = 0.0;
    double sq = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      auto gen = make_generator(name, config, derive_seed(options.seed, 0xec, t));
      NullBuffer sink_buffer;
      std::ostream sink(&sink_buffer);
      const auto edges = static_cast<double>(write_full_graph(*gen, sink, {}));
      sum += edges;
      sq += edges * edges;
    }
    const double T = static_cast<double>(trials);
    const double mean = sum / T;
    all.emplace_back(name, Moments{mean, (sq - T * mean * mean) / (T - 1.0)});
    report.add(name + ".mean_edges", fixed(mean));
  }
  report.add("exact_mean_edges", fixed(exact_mean));
  const double T = static_cast<double>(trials);
  const Moments ref = all.front().second;
  for (std::size_t k = 1; k < all.size(); ++k) {
    const auto& [name, m] = all[k];
    const double z = (m.mean - ref.mean) / std::sqrt(m.var / T + ref.var / T);
    report.add(name + ".z_vs_" + all.front().first, fixed(z, 3));
    report.check(name + ".agrees_with_" + all.front().first, std::abs(z) <= th::kEdgeCountMaxZ);
  }
  return report;
}

std::vector<std::string> suite_names() {
  return {"equivalence", "sbm", "uniformity", "iterations", "mvh", "smallworld",
          "scaling", "accounting", "fuzz", "edgecount"};
}

Report run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "equivalence") return run_equivalence(options);
  if (name == "sbm") return run_sbm_equivalence(options);
  if (name == "uniformity") return run_uniformity(options);
  if (name == "iterations") return run_iterations(options);
  if (name == "mvh") return run_mvh(options);
  if (name == "smallworld") return run_small_world(options);
  if (name == "scaling") return run_scaling(options);
  if (name == "accounting") return run_accounting(options);
  if (name == "fuzz") return run_fuzz(options);
  if (name == "edgecount") return run_edge_count(options);
  throw Unsupported("unknown suite: " + name);
}

}  // namespace localgraph
