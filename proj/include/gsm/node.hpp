#ifndef GSM_NODE_HPP
#define GSM_NODE_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace gsm {

enum class Side { A, B };

constexpr Side other(Side s) { return s == Side::A ? Side::B : Side::A; }

// A node of the bipartite network: a side plus a 0-based index on that side.
struct NodeId {
  Side side = Side::A;
  int index = 0;

  static constexpr NodeId a(int i) { return {Side::A, i}; }
  static constexpr NodeId b(int j) { return {Side::B, j}; }

  constexpr bool is_a() const { return side == Side::A; }
  constexpr bool is_b() const { return side == Side::B; }

  // A nodes order before B nodes; within a side by index.
  friend constexpr auto operator<=>(const NodeId&, const NodeId&) = default;
};

// "a1", "b3", ...: side letter plus 1-based index.
std::string node_label(NodeId n);

// Dense per-node storage, one vector per side.
template <typename T>
struct NodeMap {
  std::vector<T> a;
  std::vector<T> b;

  NodeMap() = default;
  NodeMap(int a_count, int b_count, const T& init = T{})
      : a(static_cast<std::size_t>(a_count), init),
        b(static_cast<std::size_t>(b_count), init) {}

  T& operator[](NodeId n) {
    return n.is_a() ? a[static_cast<std::size_t>(n.index)]
                    : b[static_cast<std::size_t>(n.index)];
  }
  const T& operator[](NodeId n) const {
    return n.is_a() ? a[static_cast<std::size_t>(n.index)]
                    : b[static_cast<std::size_t>(n.index)];
  }

  friend bool operator==(const NodeMap&, const NodeMap&) = default;
};

// Subset of the nodes of an instance. Subinstances are node subsets of the
// full instance carrying every instance edge with both endpoints inside.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(int a_count, int b_count, bool full = false)
      : a_(static_cast<std::size_t>(a_count), full ? 1 : 0),
        b_(static_cast<std::size_t>(b_count), full ? 1 : 0),
        na_(full ? a_count : 0),
        nb_(full ? b_count : 0) {}

  bool contains(NodeId n) const {
    const auto& v = n.is_a() ? a_ : b_;
    return n.index >= 0 && static_cast<std::size_t>(n.index) < v.size() &&
           v[static_cast<std::size_t>(n.index)] != 0;
  }
  void insert(NodeId n);
  void erase(NodeId n);

  int count_a() const { return na_; }
  int count_b() const { return nb_; }
  int size() const { return na_ + nb_; }

  // Members in canonical order: A by index, then B by index.
  std::vector<NodeId> members() const;
  std::vector<int> a_members() const;
  std::vector<int> b_members() const;

  friend auto operator<=>(const NodeSet&, const NodeSet&) = default;
  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<char> a_;
  std::vector<char> b_;
  int na_ = 0;
  int nb_ = 0;
};

}  // namespace gsm

#endif  // GSM_NODE_HPP
