#include "localgraph/edge_model.hpp"

#include <cmath>
#include <string>

namespace localgraph {

EdgeModel::EdgeModel(Vertex n) : n_(n) {
  if (n < 1) throw Fault("edge model: need at least one vertex");
}

void EdgeModel::check_vertex(Vertex v) const {
  if (v < 1 || v > n_) throw Fault("vertex " + std::to_string(v) + " outside [1, " + std::to_string(n_) + "]");
}

DiscreteCdf EdgeModel::skip_cdf(Vertex v, Vertex a, Vertex b) {
  if (a >= b) throw Fault("skip_cdf: need a < b");
  return DiscreteCdf{a + 1, b, [this, v, a, b](std::int64_t f) {
                       if (f >= b) return 1.0;
                       return -std::expm1(log_survival(v, a + 1, f));
                     }};
}

Vertex EdgeModel::sample_skip(Vertex v, Vertex a, Vertex b, RandomSource& src) {
  if (a >= b) throw Fault("skip_cdf: need a < b");
  const double u = src.next_unit();
  return invert_monotone(
      a + 1, b,
      [this, v, a, b](std::int64_t f) {
        if (f >= b) return 1.0;
        return -std::expm1(log_survival(v, a + 1, f));
      },
      u, skip_hint(v, a, u));
}

GnpModel::GnpModel(Vertex n, double p) : EdgeModel(n), p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Fault("G(n,p): p outside [0,1]");
  log1m_p_ = p >= 1.0 ? -INFINITY : std::log1p(-p);
}

std::optional<Vertex> GnpModel::skip_hint(Vertex, Vertex a, double u) const {
  if (p_ <= 0.0 || p_ >= 1.0) return std::nullopt;
  const double k = std::floor(std::log1p(-u) / log1m_p_) + 1.0;
  if (!(k < 0x1.0p62)) return std::nullopt;
  return a + static_cast<Vertex>(k);
}

double GnpModel::edge_prob(Vertex v, Vertex u) {
  check_vertex(v);
  check_vertex(u);
  return p_;
}

double GnpModel::log_survival(Vertex, Vertex a, Vertex b) {
  if (a > b || p_ == 0.0) return 0.0;
  return static_cast<double>(b - a + 1) * log1m_p_;
}

double GnpModel::expected_degree_range(Vertex, Vertex a, Vertex b) {
  if (a > b) return 0.0;
  return static_cast<double>(b - a + 1) * p_;
}

std::unique_ptr<EdgeModel> GnpModel::clone_fresh(RandomSource) const {
  return std::make_unique<GnpModel>(n(), p_);
}

void SbmSpec::validate() const {
  const std::size_t r = weights.size();
  if (r == 0) throw Fault("SBM: need at least one community");
  double mass = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Fault("SBM: negative community weight");
    mass += w;
  }
  if (!fixed_sizes && std::abs(mass - 1.0) > kMassTolerance) throw Fault("SBM: weights do not sum to 1");
  if (prob.size() != r) throw Fault("SBM: probability matrix has wrong size");
  for (std::size_t i = 0; i < r; ++i) {
    if (prob[i].size() != r) throw Fault("SBM: probability matrix has wrong size");
    for (std::size_t j = 0; j < r; ++j) {
      if (!(prob[i][j] >= 0.0 && prob[i][j] <= 1.0)) throw Fault("SBM: probability outside [0,1]");
      if (prob[i][j] != prob[j][i]) throw Fault("SBM: probability matrix is not symmetric");
    }
  }
}

SbmModel::SbmModel(Vertex n, SbmSpec spec, RandomSource rng)
    : EdgeModel(n),
      spec_((spec.validate(), std::move(spec))),
      tree_(n, spec_.weights, rng, spec_.fixed_sizes),
      scratch_(spec_.weights.size()) {}

double SbmModel::edge_prob(Vertex v, Vertex u) {
  check_vertex(v);
  check_vertex(u);
  return spec_.prob[tree_.community_of(v)][tree_.community_of(u)];
}

double SbmModel::log_survival(Vertex v, Vertex a, Vertex b) {
  if (a > b) return 0.0;
  const auto& row = spec_.prob[tree_.community_of(v)];
  std::fill(scratch_.begin(), scratch_.end(), 0);
  tree_.accumulate_range(a, b, scratch_);
  double acc = 0.0;
  for (std::size_t j = 0; j < scratch_.size(); ++j) acc += log_pow1m(row[j], scratch_[j]);
  return acc;
}

double SbmModel::expected_degree_range(Vertex v, Vertex a, Vertex b) {
  if (a > b) return 0.0;
  const auto& row = spec_.prob[tree_.community_of(v)];
  std::fill(scratch_.begin(), scratch_.end(), 0);
  tree_.accumulate_range(a, b, scratch_);
  double acc = 0.0;
  for (std::size_t j = 0; j < scratch_.size(); ++j) acc += static_cast<double>(scratch_[j]) * row[j];
  return acc;
}

std::unique_ptr<EdgeModel> SbmModel::clone_fresh(RandomSource rng) const {
  return std::make_unique<SbmModel>(n(), spec_, rng);
}

}  // namespace localgraph
