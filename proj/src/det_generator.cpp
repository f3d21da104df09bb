#include "localgraph/det_generator.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "localgraph/distributions.hpp"

namespace localgraph {

namespace {

constexpr std::int64_t kMinTag = std::numeric_limits<std::int64_t>::min();

}  // namespace

DetGenerator::DetGenerator(std::unique_ptr<EdgeModel> model, RandomSource rng)
    : model_(std::move(model)), rng_(rng), n_(model_->n()) {
  gnp_ = dynamic_cast<GnpModel*>(model_.get());
  sbm_ = dynamic_cast<SbmModel*>(model_.get());
  if (gnp_ == nullptr && sbm_ == nullptr) throw Fault("det: unsupported edge model");
  if (n_ >= (Vertex{1} << 40)) throw Fault("det: too many vertices");
  while ((Vertex{1} << depth_) < n_) ++depth_;
  r_ = sbm_ != nullptr ? sbm_->r() : 1;
  scratch_.assign(static_cast<std::size_t>(r_), 0);
}

Vertex DetGenerator::last(Vertex v) const {
  auto it = last_.find(v);
  return it == last_.end() ? 0 : it->second;
}

int DetGenerator::community(Vertex u) { return sbm_ != nullptr ? sbm_->community_of(u) : 0; }

Vertex DetGenerator::first_known_above(Vertex v, Vertex x) const {
  auto it = known_.find(v);
  if (it == known_.end()) return n_ + 1;
  auto nx = it->second.upper_bound(x);
  return nx == it->second.end() ? n_ + 1 : *nx;
}

void DetGenerator::add_edge(Vertex v, Vertex u) {
  known_[v].insert(u);
  known_[u].insert(v);
}

Vertex DetGenerator::node_lo(Node x) const {
  return static_cast<Vertex>(x.index << (depth_ - x.level)) + 1;
}

Vertex DetGenerator::node_hi(Node x) const {
  return std::min<Vertex>(node_lo(x) + (Vertex{1} << (depth_ - x.level)) - 1, n_);
}

std::vector<DetGenerator::Node> DetGenerator::decompose(Vertex a, Vertex b) const {
  std::vector<Node> left;
  std::vector<Node> right;
  if (a > b) return left;
  std::uint64_t lo = static_cast<std::uint64_t>(a - 1);
  std::uint64_t hi = static_cast<std::uint64_t>(b);
  int level = depth_;
  while (lo < hi) {
    if (lo & 1) left.push_back({level, lo++});
    if (hi & 1) right.push_back({level, --hi});
    lo >>= 1;
    hi >>= 1;
    --level;
  }
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

std::uint32_t* DetGenerator::index_root(int level, std::uint64_t index, int j, bool create) {
  const std::uint64_t key = (static_cast<std::uint64_t>(j) << 46) |
                            (static_cast<std::uint64_t>(level) << 40) | index;
  if (create) return &index_roots_[key];
  auto it = index_roots_.find(key);
  return it == index_roots_.end() ? nullptr : &it->second;
}

std::uint32_t* DetGenerator::zero_root(Vertex v, int j, bool create) {
  const std::uint64_t key = (static_cast<std::uint64_t>(j) << 40) | static_cast<std::uint64_t>(v);
  if (create) return &zero_roots_[key];
  auto it = zero_roots_.find(key);
  return it == zero_roots_.end() ? nullptr : &it->second;
}

Count DetGenerator::community_width(Node x, int j) {
  const Vertex lo = node_lo(x);
  const Vertex hi = node_hi(x);
  if (lo > hi) return 0;
  if (sbm_ == nullptr) return hi - lo + 1;
  std::fill(scratch_.begin(), scratch_.end(), 0);
  sbm_->communities().accumulate_range(lo, hi, scratch_);
  return scratch_[static_cast<std::size_t>(j)];
}

Count DetGenerator::zeros_in(Vertex v, int j, Vertex lo, Vertex hi) const {
  const std::uint64_t key = (static_cast<std::uint64_t>(j) << 40) | static_cast<std::uint64_t>(v);
  auto it = zero_roots_.find(key);
  if (it == zero_roots_.end()) return 0;
  return forest_.count_less(it->second, {hi + 1, kMinTag}) - forest_.count_less(it->second, {lo, kMinTag});
}

Count DetGenerator::undecided_in(Vertex v, Node x, int j) {
  const Count width = community_width(x, j);
  if (width == 0) return 0;
  Count decided = 0;
  if (const std::uint32_t* root = index_root(x.level, x.index, j, false)) {
    decided = forest_.count_ge(*root, {v, kMinTag});
  }
  return width - decided - zeros_in(v, j, node_lo(x), node_hi(x));
}

Count DetGenerator::count(Vertex v) {
  check_vertex(v);
  forest_.reset_visits();
  const Vertex from = last(v);
  const Vertex w = first_known_above(v, from);
  Count total = 0;
  for (Node x : decompose(from + 1, std::min(w - 1, n_))) {
    for (int j = 0; j < r_; ++j) total += undecided_in(v, x, j);
  }
  max_count_visits_ = std::max(max_count_visits_, forest_.visits());
  return total;
}

Vertex DetGenerator::pick(Vertex v, Count rank) {
  check_vertex(v);
  forest_.reset_visits();
  const Vertex from = last(v);
  const Vertex w = first_known_above(v, from);
  if (rank < 1) throw Fault("det pick: rank must be positive");
  auto undecided = [&](Node x) {
    Count c = 0;
    for (int j = 0; j < r_; ++j) c += undecided_in(v, x, j);
    return c;
  };
  for (Node x : decompose(from + 1, std::min(w - 1, n_))) {
    const Count here = undecided(x);
    if (rank > here) {
      rank -= here;
      continue;
    }
    while (x.level < depth_) {
      const Node left{x.level + 1, 2 * x.index};
      const Count in_left = undecided(left);
      if (rank <= in_left) {
        x = left;
      } else {
        rank -= in_left;
        x = Node{x.level + 1, 2 * x.index + 1};
      }
    }
    max_pick_visits_ = std::max(max_pick_visits_, forest_.visits());
    return node_lo(x);
  }
  throw Fault("det pick: rank exceeds candidate count");
}

void DetGenerator::update(Vertex v, Vertex u) {
  const Vertex old = last(v);
  if (u <= old) throw Fault("det update: frontier must increase");
  if (u > n_ + 1) throw Fault("det update: frontier beyond sentinel");
  forest_.reset_visits();
  const int j = community(v);
  const auto leaf = static_cast<std::uint64_t>(v - 1);
  for (int level = 0; level <= depth_; ++level) {
    std::uint32_t* root = index_root(level, leaf >> (depth_ - level), j, true);
    if (old != 0 && !forest_.erase(*root, {old, v})) throw Fault("det update: stale frontier missing from index");
    forest_.insert(*root, {u, v});
  }
  max_update_visits_ = std::max(max_update_visits_, forest_.visits());
  last_[v] = u;
  const int own = community(v);
  for (int c = 0; c < r_; ++c) {
    std::uint32_t* root = zero_root(v, c, false);
    while (root != nullptr && forest_.size(*root) > 0) {
      const Vertex x = forest_.select(*root, 0).first;
      if (x >= u) break;
      forest_.erase(*root, {x, x});
      if (x != v) {
        std::uint32_t* mirror = zero_root(x, own, false);
        if (mirror == nullptr || !forest_.erase(*mirror, {v, v})) throw Fault("det update: zero-set mirror missing");
        ++zero_removals_;
      }
      ++zero_removals_;
      root = zero_root(v, c, false);
    }
  }
}

Vertex DetGenerator::advance_block(Vertex v, Vertex from, Vertex w, double u) {
  const auto& row = sbm_->spec().prob[static_cast<std::size_t>(community(v))];
  std::vector<Count> t(static_cast<std::size_t>(r_));
  auto eval = [&](std::int64_t f) {
    if (f >= w) return 1.0;
    std::fill(t.begin(), t.end(), 0);
    for (Node x : decompose(from + 1, f)) {
      for (int j = 0; j < r_; ++j) t[static_cast<std::size_t>(j)] += undecided_in(v, x, j);
    }
    double acc = 0.0;
    for (int j = 0; j < r_; ++j) acc += log_pow1m(row[static_cast<std::size_t>(j)], t[static_cast<std::size_t>(j)]);
    return -std::expm1(acc);
  };
  return invert_monotone(from + 1, w, eval, u);
}

Vertex DetGenerator::advance(Vertex v) {
  const Vertex from = last(v);
  if (from > n_) {
    rng_.next_word();
    return n_ + 1;
  }
  const Vertex w = first_known_above(v, from);
  Vertex u;
  if (gnp_ != nullptr) {
    const Count t = count(v);
    const std::int64_t f = sample_exactf(gnp_->p(), t, rng_);
    u = f <= t ? pick(v, f) : w;
  } else {
    u = advance_block(v, from, w, rng_.next_unit());
  }
  if (u < w) add_edge(v, u);
  update(v, u);
  return u;
}

Vertex DetGenerator::next_neighbor(Vertex v) {
  check_vertex(v);
  Vertex& cursor = reported_[v];
  const Vertex frontier = last(v);
  if (cursor < frontier) {
    // Already decided up to the frontier; keep the one-word-per-query accounting.
    rng_.next_word();
    const Vertex nx = first_known_above(v, cursor);
    cursor = std::min(nx, frontier);
    return cursor;
  }
  cursor = advance(v);
  return cursor;
}

bool DetGenerator::zero_contains(Vertex v, Vertex u) {
  const std::uint32_t* root = zero_root(v, community(u), false);
  return root != nullptr && forest_.contains(*root, {u, u});
}

void DetGenerator::zero_insert(Vertex v, Vertex u) {
  forest_.insert(*zero_root(v, community(u), true), {u, u});
  ++zero_insertions_;
}

bool DetGenerator::vertex_pair(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (auto it = known_.find(v); it != known_.end() && it->second.count(u) != 0) return true;
  if (u < last(v) || v < last(u)) return false;
  if (zero_contains(v, u)) return false;
  const bool bit = sample_bernoulli(model_->edge_prob(v, u), rng_);
  if (bit) {
    add_edge(v, u);
  } else {
    zero_insert(v, u);
    if (u != v) zero_insert(u, v);
  }
  return bit;
}

std::vector<Vertex> DetGenerator::all_neighbors(Vertex v) {
  check_vertex(v);
  while (last(v) <= n_) advance(v);
  const auto& known = known_[v];
  return {known.begin(), known.end()};
}

std::vector<Vertex> DetGenerator::candidates(Vertex v) {
  const Count t = count(v);
  std::vector<Vertex> out;
  for (Count k = 1; k <= t; ++k) out.push_back(pick(v, k));
  return out;
}

void DetGenerator::check_invariants() {
  std::map<std::uint64_t, std::vector<OrderStatForest::Key>> expected;
  for (const auto& [u, l] : last_) {
    if (l < 1 || l > n_ + 1) throw Fault("det audit: frontier out of range");
    const int j = community(u);
    const auto leaf = static_cast<std::uint64_t>(u - 1);
    for (int level = 0; level <= depth_; ++level) {
      const std::uint64_t key = (static_cast<std::uint64_t>(j) << 46) |
                                (static_cast<std::uint64_t>(level) << 40) | (leaf >> (depth_ - level));
      expected[key].push_back({l, u});
    }
  }
  for (auto& [key, keys] : expected) {
    std::sort(keys.begin(), keys.end());
    auto it = index_roots_.find(key);
    if (it == index_roots_.end() || forest_.audit(it->second) != keys) {
      throw Fault("det audit: index contents differ from frontier values");
    }
  }
  for (const auto& [key, root] : index_roots_) {
    if (forest_.size(root) != 0 && expected.count(key) == 0) throw Fault("det audit: index holds unknown entries");
  }
  for (const auto& [v, set] : known_) {
    for (Vertex u : set) {
      if (known_.count(u) == 0 || known_.at(u).count(v) == 0) throw Fault("det audit: known sets not symmetric");
    }
  }
  for (const auto& [key, root] : zero_roots_) {
    const auto v = static_cast<Vertex>(key & ((std::uint64_t{1} << 40) - 1));
    const int j = static_cast<int>(key >> 40);
    for (const auto& entry : forest_.audit(root)) {
      const Vertex u = entry.first;
      if (community(u) != j) throw Fault("det audit: zero entry filed under wrong community");
      if (!(u > last(v) && v > last(u))) throw Fault("det audit: stale zero entry");
      if (!zero_contains(u, v)) throw Fault("det audit: zero sets not mirrored");
      if (known_.count(v) != 0 && known_.at(v).count(u) != 0) throw Fault("det audit: zero entry is a known edge");
    }
  }
  if (zero_removals_ > zero_insertions_) throw Fault("det audit: more zero removals than insertions");
}

std::size_t DetGenerator::stored_entries() const {
  std::size_t total = last_.size() + reported_.size() + forest_.live_nodes() + index_roots_.size() +
                      zero_roots_.size();
  for (const auto& [v, set] : known_) total += 1 + set.size();
  return total;
}

}  // namespace localgraph
