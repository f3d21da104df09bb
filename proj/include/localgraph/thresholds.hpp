#pragma once

#include <array>
#include <cstdint>

// Trial counts and pass thresholds for every statistical check, in one place.
namespace localgraph::thresholds {

// Shared significance level for chi-square goodness-of-fit checks.
inline constexpr double kChiSquareAlpha = 1e-3;
// Width of per-quantity binomial confidence bands, in standard deviations.
inline constexpr double kSigmaBand = 3.0;

// Exhaustion distribution of G(4, p) against the exact product law.
inline constexpr std::int64_t kEquivalenceN = 4;
inline constexpr std::array<double, 3> kEquivalenceP = {0.2, 0.5, 0.8};
inline constexpr std::uint64_t kEquivalenceTrials = 200000;
inline constexpr double kEquivalenceL1 = 0.05;
inline constexpr double kEquivalenceSecondsPerGenerator = 120.0;

// Joint (labels, edges) law of a 6-vertex, 2-block model.
inline constexpr std::int64_t kSbmN = 6;
inline constexpr std::uint64_t kSbmTrials = 200000;
inline constexpr double kSbmL1 = 0.08;
inline constexpr double kSbmSeconds = 300.0;

// Random-neighbor uniformity on G(64, 0.3).
inline constexpr std::int64_t kUniformityN = 64;
inline constexpr double kUniformityP = 0.3;
inline constexpr std::uint64_t kUniformityQueries = 10000;
inline constexpr int kUniformityRepetitions = 20;
inline constexpr int kUniformityMaxFailures = 1;
// Smallest expected count per neighbor for the chi-square test to be run.
inline constexpr double kMinExpectedPerBin = 5.0;

// Skip-sampling repeat loop under the exhaust-everyone-else adversary.
inline constexpr std::int64_t kSkipIterationsN = 1024;
inline constexpr double kSkipIterationsP = 0.05;
inline constexpr std::int64_t kSkipIterationsTargets = 64;
inline constexpr std::uint64_t kSkipIterationsCalls = 100000;
inline constexpr double kSkipIterationsLogFactor = 3.0;
inline constexpr double kSkipIterationsSlack = 10.0;
// Mean fill iterations at most L + this.
inline constexpr double kFillMeanSlack = 2.0;
inline constexpr std::int64_t kFillN = 4096;
inline constexpr double kFillExpectedDegree = 64.0;
// Random-neighbor rejection loop at most this times log2(n)^2.
inline constexpr double kRejectionCapFactor = 10.0;
inline constexpr std::int64_t kRejectionN = 65536;
inline constexpr double kRejectionExpectedDegree = 400.0;
inline constexpr std::uint64_t kRejectionQueries = 10000;

// Multivariate hypergeometric sampler against the exact law.
inline constexpr std::int64_t kMvhMaxTotal = 8;
inline constexpr int kMvhMaxColors = 3;
inline constexpr std::uint64_t kMvhTrials = 100000;
inline constexpr double kMvhL1 = 0.02;
inline constexpr double kMvhSeconds = 180.0;

// Small-world marginals, closed-form CDF and mean degree.
inline constexpr std::int64_t kSmallWorldSide = 8;
inline constexpr std::array<double, 3> kSmallWorldC = {0.5, 1.0, 4.0};
inline constexpr std::uint64_t kSmallWorldTrials = 100000;
inline constexpr std::int64_t kTelescopeMax = 100;
inline constexpr double kTelescopeRelTol = 1e-10;
inline constexpr std::int64_t kDegreeSide = 64;
inline constexpr int kDegreeRealizations = 4;
inline constexpr double kDegreeRelTol = 0.02;

// Full generation of G(n, 4/n) with the bucket generator.
inline constexpr std::array<std::int64_t, 3> kScalingN = {10000, 100000, 1000000};
inline constexpr double kScalingExpectedDegree = 4.0;
inline constexpr double kScalingMaxGrowth = 15.0;
inline constexpr double kStoredEntriesFactor = 32.0;
inline constexpr int kScalingTimingRuns = 3;

// One word per next-neighbor on the deterministic generator.
inline constexpr std::uint64_t kAccountingQueries = 100000;
inline constexpr std::int64_t kAccountingN = 1024;
inline constexpr double kAccountingP = 0.01;

// Interleaving fuzz.
inline constexpr std::int64_t kFuzzN = 64;
inline constexpr double kFuzzP = 0.3;
inline constexpr std::uint64_t kFuzzTrials = 10000;
inline constexpr std::uint64_t kFuzzQueriesPerTrial = 48;

// Edge-count agreement across generators.
inline constexpr std::int64_t kEdgeCountN = 32;
inline constexpr double kEdgeCountP = 0.1;
inline constexpr std::uint64_t kEdgeCountTrials = 2000;
inline constexpr double kEdgeCountMaxZ = 3.29;  // two-sided p > 1e-3

}  // namespace localgraph::thresholds
