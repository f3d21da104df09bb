#include "localgraph/naive_generator.hpp"

#include "localgraph/distributions.hpp"

namespace localgraph {

NaiveGenerator::NaiveGenerator(std::unique_ptr<EdgeModel> model, RandomSource rng)
    : model_(std::move(model)), rng_(rng) {}

bool NaiveGenerator::cell(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  const std::uint64_t k = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
  auto it = cells_.find(k);
  if (it != cells_.end()) return it->second;
  const bool bit = sample_bernoulli(model_->edge_prob(u, v), rng_);
  cells_.emplace(k, bit);
  return bit;
}

Vertex NaiveGenerator::next_neighbor(Vertex v) {
  check_vertex(v);
  const Vertex n = model_->n();
  Vertex& last = last_[v];
  for (Vertex u = last + 1; u <= n; ++u) {
    if (cell(v, u)) return last = u;
  }
  return last = n + 1;
}

std::optional<Vertex> NaiveGenerator::random_neighbor(Vertex v) {
  const std::vector<Vertex> all = all_neighbors(v);
  if (all.empty()) return std::nullopt;
  return all[rng_.next_below(all.size())];
}

bool NaiveGenerator::vertex_pair(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  return cell(u, v);
}

std::vector<Vertex> NaiveGenerator::all_neighbors(Vertex v) {
  check_vertex(v);
  std::vector<Vertex> out;
  for (Vertex u = 1; u <= model_->n(); ++u) {
    if (cell(v, u)) out.push_back(u);
  }
  return out;
}

}  // namespace localgraph
