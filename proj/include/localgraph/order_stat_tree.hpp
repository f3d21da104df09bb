#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace localgraph {

// AVL trees with subtree sizes, all allocated from one shared arena. A tree is
// identified by its root index (kNil for the empty tree). Keys are pairs
// ordered lexicographically and must be distinct within a tree.
class OrderStatForest {
 public:
  using Key = std::pair<std::int64_t, std::int64_t>;
  static constexpr std::uint32_t kNil = 0;

  OrderStatForest();

  void insert(std::uint32_t& root, Key key);
  // Returns false when the key is absent.
  bool erase(std::uint32_t& root, Key key);

  std::int64_t size(std::uint32_t root) const { return nodes_[root].size; }
  // Number of keys strictly below `key`.
  std::int64_t count_less(std::uint32_t root, Key key) const;
  std::int64_t count_ge(std::uint32_t root, Key key) const { return size(root) - count_less(root, key); }
  bool contains(std::uint32_t root, Key key) const;
  // Key of 0-based rank `rank` in sorted order.
  Key select(std::uint32_t root, std::int64_t rank) const;
  // In-order keys; throws Fault if heights, sizes or ordering are inconsistent.
  std::vector<Key> audit(std::uint32_t root) const;

  // Nodes touched by searches and updates since the last reset.
  std::uint64_t visits() const { return visits_; }
  void reset_visits() { visits_ = 0; }
  std::size_t live_nodes() const { return nodes_.size() - 1 - free_.size(); }

 private:
  struct Node {
    Key key{};
    std::uint32_t left = kNil;
    std::uint32_t right = kNil;
    std::int32_t height = 0;
    std::int64_t size = 0;
  };

  std::uint32_t make(Key key);
  void pull(std::uint32_t x);
  std::uint32_t rotate_left(std::uint32_t x);
  std::uint32_t rotate_right(std::uint32_t x);
  std::uint32_t balance(std::uint32_t x);
  std::uint32_t insert_at(std::uint32_t x, Key key);
  std::uint32_t erase_at(std::uint32_t x, Key key, bool& found);
  std::uint32_t erase_min(std::uint32_t x, std::uint32_t& min_node);
  std::int32_t audit_at(std::uint32_t x, std::vector<Key>& out) const;

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> free_;
  mutable std::uint64_t visits_ = 0;
};

}  // namespace localgraph
