#pragma once

#include <memory>
#include <unordered_map>

#include "localgraph/edge_model.hpp"
#include "localgraph/generator.hpp"

namespace localgraph {

// Reference generator: every queried cell of the adjacency matrix is decided
// by its own Bernoulli flip and remembered. Next-neighbor scans cells one by
// one, so queries cost O(n).
class NaiveGenerator final : public LocalGenerator {
 public:
  NaiveGenerator(std::unique_ptr<EdgeModel> model, RandomSource rng);

  std::string name() const override { return "naive"; }
  Vertex vertex_count() const override { return model_->n(); }
  bool supports(QueryKind) const override { return true; }
  Vertex next_neighbor(Vertex v) override;
  std::optional<Vertex> random_neighbor(Vertex v) override;
  bool vertex_pair(Vertex u, Vertex v) override;
  std::vector<Vertex> all_neighbors(Vertex v) override;
  std::uint64_t words_consumed() const override { return rng_.words_consumed(); }
  std::size_t stored_entries() const override { return cells_.size() + last_.size(); }

  EdgeModel& model() { return *model_; }

 private:
  bool cell(Vertex u, Vertex v);

  std::unique_ptr<EdgeModel> model_;
  RandomSource rng_;
  std::unordered_map<std::uint64_t, bool> cells_;
  std::unordered_map<Vertex, Vertex> last_;
};

}  // namespace localgraph
