#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include "localgraph/community.hpp"
#include "localgraph/distributions.hpp"
#include "localgraph/types.hpp"

namespace localgraph {

// Source of independent edge probabilities p_{v,u} on vertices 1..n, with
// range survival products and range probability sums. Ranges include u = v.
class EdgeModel {
 public:
  virtual ~EdgeModel() = default;

  Vertex n() const { return n_; }

  virtual double edge_prob(Vertex v, Vertex u) = 0;
  // log of prod_{u=a}^{b} (1 - p_{v,u}); 0 for a > b, may be -inf.
  virtual double log_survival(Vertex v, Vertex a, Vertex b) = 0;
  // sum_{u=a}^{b} p_{v,u}; 0 for a > b.
  virtual double expected_degree_range(Vertex v, Vertex a, Vertex b) = 0;
  virtual std::unique_ptr<EdgeModel> clone_fresh(RandomSource rng) const = 0;

  double survival(Vertex v, Vertex a, Vertex b) { return std::exp(log_survival(v, a, b)); }

  // Law of the first u in (a, b) with an edge to v, or b if none.
  DiscreteCdf skip_cdf(Vertex v, Vertex a, Vertex b);
  // One-word draw from skip_cdf without the std::function indirection.
  Vertex sample_skip(Vertex v, Vertex a, Vertex b, RandomSource& src);

 protected:
  explicit EdgeModel(Vertex n);
  void check_vertex(Vertex v) const;
  // Cheap estimate of the skip_cdf inverse at u, used only to seed the search.
  virtual std::optional<Vertex> skip_hint(Vertex, Vertex, double) const { return std::nullopt; }

 private:
  Vertex n_;
};

class GnpModel final : public EdgeModel {
 public:
  GnpModel(Vertex n, double p);

  double p() const { return p_; }
  double edge_prob(Vertex v, Vertex u) override;
  double log_survival(Vertex v, Vertex a, Vertex b) override;
  double expected_degree_range(Vertex v, Vertex a, Vertex b) override;
  std::unique_ptr<EdgeModel> clone_fresh(RandomSource rng) const override;

 protected:
  std::optional<Vertex> skip_hint(Vertex v, Vertex a, double u) const override;

 private:
  double p_;
  double log1m_p_;
};

struct SbmSpec {
  std::vector<double> weights;
  std::vector<std::vector<double>> prob;  // symmetric r x r
  std::optional<std::vector<Count>> fixed_sizes;

  int r() const { return static_cast<int>(weights.size()); }
  void validate() const;
};

class SbmModel final : public EdgeModel {
 public:
  // `rng` drives the community tree only.
  SbmModel(Vertex n, SbmSpec spec, RandomSource rng);

  const SbmSpec& spec() const { return spec_; }
  int r() const { return spec_.r(); }
  double block_prob(int i, int j) const { return spec_.prob[i][j]; }
  CommunityTree& communities() { return tree_; }
  int community_of(Vertex v) { return tree_.community_of(v); }

  double edge_prob(Vertex v, Vertex u) override;
  double log_survival(Vertex v, Vertex a, Vertex b) override;
  double expected_degree_range(Vertex v, Vertex a, Vertex b) override;
  std::unique_ptr<EdgeModel> clone_fresh(RandomSource rng) const override;

 private:
  SbmSpec spec_;
  CommunityTree tree_;
  std::vector<Count> scratch_;
};

}  // namespace localgraph
