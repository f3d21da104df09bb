#include "localgraph/skip_generator.hpp"

#include <algorithm>

#include "localgraph/distributions.hpp"

namespace localgraph {

SkipGenerator::SkipGenerator(std::unique_ptr<EdgeModel> model, RandomSource rng)
    : model_(std::move(model)), rng_(rng) {}

std::uint64_t SkipGenerator::pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

Vertex SkipGenerator::last(Vertex v) const {
  auto it = last_.find(v);
  return it == last_.end() ? 0 : it->second;
}

bool SkipGenerator::known_edge(Vertex v, Vertex u) const {
  auto it = known_.find(v);
  return it != known_.end() && it->second.count(u) != 0;
}

void SkipGenerator::add_edge(Vertex v, Vertex u) {
  known_[v].insert(u);
  known_[u].insert(v);
}

Vertex SkipGenerator::advance(Vertex v) {
  const Vertex n = model_->n();
  const Vertex from = last(v);
  if (from > n) return n + 1;
  Vertex w = n + 1;
  if (auto it = known_.find(v); it != known_.end()) {
    auto nx = it->second.upper_bound(from);
    if (nx != it->second.end()) w = *nx;
  }
  std::int64_t iterations = 0;
  Vertex u = from;
  for (;;) {
    ++iterations;
    u = model_->sample_skip(v, u, w, rng_);
    if (u == w) break;
    if (last(u) < v && zeros_.count(pair_key(v, u)) == 0) break;
  }
  if (u < w) add_edge(v, u);
  last_[v] = u;
  last_iterations_ = iterations;
  max_iterations_ = std::max(max_iterations_, iterations);
  total_iterations_ += iterations;
  ++advances_;
  return u;
}

Vertex SkipGenerator::next_neighbor(Vertex v) {
  check_vertex(v);
  Vertex& cursor = reported_[v];
  if (cursor < last(v)) {
    // Cells up to the frontier are decided; answer from the known set.
    const auto& known = known_[v];
    auto it = known.upper_bound(cursor);
    if (it != known.end() && *it <= last(v)) return cursor = *it;
    cursor = last(v);
  }
  return cursor = advance(v);
}

bool SkipGenerator::vertex_pair(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (known_edge(v, u)) return true;
  if (u < last(v) || v < last(u)) return false;
  if (zeros_.count(pair_key(u, v)) != 0) return false;
  const bool bit = sample_bernoulli(model_->edge_prob(v, u), rng_);
  if (bit) {
    add_edge(v, u);
  } else {
    zeros_.insert(pair_key(u, v));
  }
  return bit;
}

std::vector<Vertex> SkipGenerator::all_neighbors(Vertex v) {
  check_vertex(v);
  while (last(v) <= model_->n()) advance(v);
  const auto& known = known_[v];
  return {known.begin(), known.end()};
}

void SkipGenerator::check_invariants() {
  const Vertex n = model_->n();
  for (const auto& [v, set] : known_) {
    for (Vertex u : set) {
      if (u < 1 || u > n) throw Fault("skip: known neighbor out of range");
      if (!known_edge(u, v)) throw Fault("skip: known-neighbor sets are not symmetric");
      if (zeros_.count(pair_key(u, v)) != 0) throw Fault("skip: pair recorded both as edge and as zero");
    }
  }
  for (const auto& [v, l] : last_) {
    if (l < 0 || l > n + 1) throw Fault("skip: frontier out of range");
    if (l >= 1 && l <= n && !known_edge(v, l)) throw Fault("skip: frontier is not a known neighbor");
  }
  for (const auto& [v, c] : reported_) {
    if (c > last(v)) throw Fault("skip: reported cursor ahead of frontier");
  }
}

std::size_t SkipGenerator::stored_entries() const {
  std::size_t total = last_.size() + reported_.size() + zeros_.size();
  for (const auto& [v, set] : known_) total += 1 + set.size();
  return total;
}

}  // namespace localgraph
