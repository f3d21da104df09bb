#include "localgraph/small_world.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "localgraph/distributions.hpp"

namespace localgraph {

std::int64_t manhattan(GridVertex a, GridVertex b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

GridVertex ring_position(GridVertex v, std::int64_t d, std::int64_t label) {
  const std::int64_t seg = (label - 1) / d;
  const std::int64_t t = (label - 1) % d;
  switch (seg) {
    case 0: return {v.x + t, v.y + d - t};
    case 1: return {v.x + d - t, v.y - t};
    case 2: return {v.x - t, v.y - d + t};
    default: return {v.x - d + t, v.y + t};
  }
}

std::vector<RingMember> ring_members(GridVertex v, std::int64_t d, std::int64_t side) {
  std::vector<RingMember> out;
  if (d < 1) return out;
  for (std::int64_t label = 1; label <= 4 * d; ++label) {
    const GridVertex g = ring_position(v, d, label);
    if (g.x >= 1 && g.x <= side && g.y >= 1 && g.y <= side) out.push_back({label, g});
  }
  return out;
}

double next_distance_cdf(std::int64_t a, std::int64_t d) {
  if (a <= 1) return 1.0;
  if (d < a) return 0.0;
  const auto ad = static_cast<double>(a);
  const auto dd = static_cast<double>(d);
  const double log_g = std::log(ad / dd) + ad * std::log1p(-1.0 / ad) + dd * std::log1p(1.0 / dd);
  return -std::expm1(4.0 * log_g);
}

SmallWorldGenerator::SmallWorldGenerator(SmallWorldParams params)
    : params_(params), query_rng_(params.seed, kQueryStream) {
  if (params_.side < 1) throw Fault("small world: side must be positive");
  if (params_.side > (std::int64_t{1} << 20)) throw Fault("small world: side too large");
  if (!(params_.c > 0.0) || !std::isfinite(params_.c)) throw Fault("small world: c must be positive");
  if (params_.c > 1.0) {
    if (params_.boost_k < 2) throw Fault("small world: boost k must be at least 2");
    const double cap = 1.0 - 1.0 / params_.boost_k;
    boost_start_ = 1;
    while (params_.c / (static_cast<double>(boost_start_) * static_cast<double>(boost_start_)) > cap) ++boost_start_;
    boost_copies_ = static_cast<std::int64_t>(std::ceil(params_.boost_k * params_.c));
  }
}

GridVertex SmallWorldGenerator::coords(Vertex v) const {
  check_vertex(v);
  return {(v - 1) / params_.side + 1, (v - 1) % params_.side + 1};
}

std::optional<std::int64_t> SmallWorldGenerator::sample_next_distance(std::int64_t a,
                                                                      RandomSource& src) const {
  const std::int64_t dmax = max_distance();
  if (a > dmax) return std::nullopt;
  const double u = src.next_unit();
  // The cdf is close to 1 - (a/d)^4.
  const double guess = std::floor(static_cast<double>(a) / std::pow(1.0 - u, 0.25));
  const auto hint = static_cast<std::int64_t>(std::min(guess, static_cast<double>(dmax + 1)));
  const std::int64_t d = invert_monotone(
      a, dmax + 1, [a, dmax](std::int64_t f) { return f > dmax ? 1.0 : next_distance_cdf(a, f); }, u, hint);
  if (d > dmax) return std::nullopt;
  return d;
}

std::vector<std::int64_t> SmallWorldGenerator::sample_ring_neighbors(std::int64_t D, double p,
                                                                     RandomSource& src) {
  const std::int64_t block = 4 * D;
  std::vector<std::int64_t> labels;
  std::int64_t x = (sample_geometric(p, src) - 1) % block + 1;
  while (x <= block) {
    labels.push_back(x);
    x += sample_geometric(p, src);
  }
  return labels;
}

std::vector<std::pair<std::int64_t, std::int64_t>> SmallWorldGenerator::base_process(
    std::int64_t a, RandomSource& src) const {
  std::vector<std::pair<std::int64_t, std::int64_t>> hits;
  while (auto d = sample_next_distance(a, src)) {
    const double p = 1.0 / (static_cast<double>(*d) * static_cast<double>(*d));
    for (std::int64_t label : sample_ring_neighbors(*d, p, src)) hits.emplace_back(*d, label);
    a = *d + 1;
  }
  return hits;
}

std::vector<OutEdge> SmallWorldGenerator::generate(Vertex v, RandomSource& src) {
  const GridVertex g = coords(v);
  const double c = params_.c;
  std::vector<OutEdge> out;
  auto emit = [&](std::int64_t d, std::int64_t label) {
    const GridVertex at = ring_position(g, d, label);
    if (at.x >= 1 && at.x <= params_.side && at.y >= 1 && at.y <= params_.side) {
      out.push_back({d, label, id(at)});
    }
  };
  if (c <= 1.0) {
    for (auto [d, label] : base_process(1, src)) {
      if (c == 1.0 || sample_bernoulli(c, src)) emit(d, label);
    }
    return out;
  }
  const std::int64_t d0 = std::min(boost_start_, max_distance() + 1);
  for (std::int64_t d = 1; d < d0; ++d) {
    ++direct_flip_rings_;
    const double p = std::min(c / (static_cast<double>(d) * static_cast<double>(d)), 1.0);
    for (const RingMember& m : ring_members(g, d, params_.side)) {
      if (sample_bernoulli(p, src)) out.push_back({d, m.label, id(m.at)});
    }
  }
  std::set<std::pair<std::int64_t, std::int64_t>> hits;
  for (std::int64_t copy = 0; copy < boost_copies_; ++copy) {
    for (auto hit : base_process(d0, src)) hits.insert(hit);
  }
  for (auto [d, label] : hits) {
    const double p = 1.0 / (static_cast<double>(d) * static_cast<double>(d));
    const double ratio = c * p / -std::expm1(log_pow1m(p, boost_copies_));
    if (ratio > 1.0) throw Fault("small world: boost acceptance ratio exceeds 1; raise boost k");
    if (sample_bernoulli(ratio, src)) emit(d, label);
  }
  return out;
}

const std::vector<OutEdge>& SmallWorldGenerator::out_edges(Vertex v) {
  check_vertex(v);
  auto it = memo_.find(v);
  if (it != memo_.end()) return it->second;
  RandomSource src(params_.seed, static_cast<std::uint64_t>(v));
  std::vector<OutEdge> edges = generate(v, src);
  words_ += src.words_consumed();
  return memo_.emplace(v, std::move(edges)).first->second;
}

std::vector<Vertex> SmallWorldGenerator::all_neighbors(Vertex v) {
  std::vector<Vertex> out;
  for (const OutEdge& e : out_edges(v)) out.push_back(e.target);
  std::sort(out.begin(), out.end());
  return out;
}

Vertex SmallWorldGenerator::next_neighbor(Vertex v) {
  const std::vector<Vertex> all = all_neighbors(v);
  std::size_t& cursor = reported_[v];
  if (cursor >= all.size()) {
    cursor = all.size();
    return vertex_count() + 1;
  }
  return all[cursor++];
}

std::optional<Vertex> SmallWorldGenerator::random_neighbor(Vertex v) {
  const std::vector<OutEdge>& edges = out_edges(v);
  if (edges.empty()) return std::nullopt;
  ++words_;
  return edges[query_rng_.next_below(edges.size())].target;
}

bool SmallWorldGenerator::vertex_pair(Vertex u, Vertex v) {
  check_vertex(v);
  for (const OutEdge& e : out_edges(u)) {
    if (e.target == v) return true;
  }
  return false;
}

void SmallWorldGenerator::check_invariants() {
  for (const auto& [v, edges] : memo_) {
    const GridVertex g = coords(v);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (manhattan(g, coords(edges[i].target)) != edges[i].distance) throw Fault("small world: wrong distance");
      if (i > 0 && std::pair(edges[i - 1].distance, edges[i - 1].label) >= std::pair(edges[i].distance, edges[i].label)) {
        throw Fault("small world: out-edges not in (distance, label) order");
      }
    }
  }
}

std::size_t SmallWorldGenerator::stored_entries() const {
  std::size_t total = reported_.size();
  for (const auto& [v, edges] : memo_) total += 1 + edges.size();
  return total;
}

}  // namespace localgraph
