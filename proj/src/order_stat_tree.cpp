#include "localgraph/order_stat_tree.hpp"

#include <algorithm>

#include "localgraph/types.hpp"

namespace localgraph {

OrderStatForest::OrderStatForest() { nodes_.emplace_back(); }

std::uint32_t OrderStatForest::make(Key key) {
  std::uint32_t x;
  if (!free_.empty()) {
    x = free_.back();
    free_.pop_back();
  } else {
    x = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
  }
  nodes_[x] = Node{key, kNil, kNil, 1, 1};
  return x;
}

void OrderStatForest::pull(std::uint32_t x) {
  Node& n = nodes_[x];
  n.height = 1 + std::max(nodes_[n.left].height, nodes_[n.right].height);
  n.size = 1 + nodes_[n.left].size + nodes_[n.right].size;
}

std::uint32_t OrderStatForest::rotate_left(std::uint32_t x) {
  const std::uint32_t y = nodes_[x].right;
  nodes_[x].right = nodes_[y].left;
  nodes_[y].left = x;
  pull(x);
  pull(y);
  return y;
}

std::uint32_t OrderStatForest::rotate_right(std::uint32_t x) {
  const std::uint32_t y = nodes_[x].left;
  nodes_[x].left = nodes_[y].right;
  nodes_[y].right = x;
  pull(x);
  pull(y);
  return y;
}

std::uint32_t OrderStatForest::balance(std::uint32_t x) {
  pull(x);
  const auto skew = [this](std::uint32_t t) {
    return nodes_[nodes_[t].left].height - nodes_[nodes_[t].right].height;
  };
  const int b = skew(x);
  if (b > 1) {
    if (skew(nodes_[x].left) < 0) nodes_[x].left = rotate_left(nodes_[x].left);
    return rotate_right(x);
  }
  if (b < -1) {
    if (skew(nodes_[x].right) > 0) nodes_[x].right = rotate_right(nodes_[x].right);
    return rotate_left(x);
  }
  return x;
}

std::uint32_t OrderStatForest::insert_at(std::uint32_t x, Key key) {
  ++visits_;
  if (x == kNil) return make(key);
  if (key == nodes_[x].key) throw Fault("order-statistic tree: duplicate key");
  if (key < nodes_[x].key) {
    const std::uint32_t c = insert_at(nodes_[x].left, key);
    nodes_[x].left = c;
  } else {
    const std::uint32_t c = insert_at(nodes_[x].right, key);
    nodes_[x].right = c;
  }
  return balance(x);
}

void OrderStatForest::insert(std::uint32_t& root, Key key) { root = insert_at(root, key); }

std::uint32_t OrderStatForest::erase_min(std::uint32_t x, std::uint32_t& min_node) {
  ++visits_;
  if (nodes_[x].left == kNil) {
    min_node = x;
    return nodes_[x].right;
  }
  const std::uint32_t c = erase_min(nodes_[x].left, min_node);
  nodes_[x].left = c;
  return balance(x);
}

std::uint32_t OrderStatForest::erase_at(std::uint32_t x, Key key, bool& found) {
  ++visits_;
  if (x == kNil) return kNil;
  if (key < nodes_[x].key) {
    const std::uint32_t c = erase_at(nodes_[x].left, key, found);
    nodes_[x].left = c;
  } else if (nodes_[x].key < key) {
    const std::uint32_t c = erase_at(nodes_[x].right, key, found);
    nodes_[x].right = c;
  } else {
    found = true;
    const std::uint32_t l = nodes_[x].left;
    const std::uint32_t r = nodes_[x].right;
    free_.push_back(x);
    if (r == kNil) return l;
    std::uint32_t m = kNil;
    const std::uint32_t rest = erase_min(r, m);
    nodes_[m].left = l;
    nodes_[m].right = rest;
    return balance(m);
  }
  return balance(x);
}

bool OrderStatForest::erase(std::uint32_t& root, Key key) {
  bool found = false;
  root = erase_at(root, key, found);
  return found;
}

std::int64_t OrderStatForest::count_less(std::uint32_t x, Key key) const {
  std::int64_t below = 0;
  while (x != kNil) {
    ++visits_;
    const Node& n = nodes_[x];
    if (n.key < key) {
      below += nodes_[n.left].size + 1;
      x = n.right;
    } else {
      x = n.left;
    }
  }
  return below;
}

bool OrderStatForest::contains(std::uint32_t x, Key key) const {
  while (x != kNil) {
    ++visits_;
    const Node& n = nodes_[x];
    if (n.key == key) return true;
    x = key < n.key ? n.left : n.right;
  }
  return false;
}

OrderStatForest::Key OrderStatForest::select(std::uint32_t x, std::int64_t rank) const {
  if (rank < 0 || rank >= size(x)) throw Fault("order-statistic tree: rank out of range");
  for (;;) {
    ++visits_;
    const Node& n = nodes_[x];
    const std::int64_t left = nodes_[n.left].size;
    if (rank < left) {
      x = n.left;
    } else if (rank == left) {
      return n.key;
    } else {
      rank -= left + 1;
      x = n.right;
    }
  }
}

std::int32_t OrderStatForest::audit_at(std::uint32_t x, std::vector<Key>& out) const {
  if (x == kNil) return 0;
  const Node& n = nodes_[x];
  const std::int32_t hl = audit_at(n.left, out);
  out.push_back(n.key);
  const std::int32_t hr = audit_at(n.right, out);
  if (std::abs(hl - hr) > 1) throw Fault("order-statistic tree: unbalanced node");
  if (n.height != 1 + std::max(hl, hr)) throw Fault("order-statistic tree: stale height");
  if (n.size != 1 + nodes_[n.left].size + nodes_[n.right].size) {
    throw Fault("order-statistic tree: stale subtree size");
  }
  return n.height;
}

std::vector<OrderStatForest::Key> OrderStatForest::audit(std::uint32_t root) const {
  std::vector<Key> out;
  audit_at(root, out);
  if (!std::is_sorted(out.begin(), out.end()) ||
      std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw Fault("order-statistic tree: keys out of order");
  }
  return out;
}

}  // namespace localgraph
