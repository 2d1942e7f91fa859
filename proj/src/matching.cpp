#include "gsm/matching.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "gsm/error.hpp"

namespace gsm {

namespace {

bool inside(const NodeSet& nodes, const Edge& e) {
  return nodes.contains(NodeId::a(e.a)) && nodes.contains(NodeId::b(e.b));
}

std::pair<int, int> as_pair(NodeId x, NodeId y) {
  return x.is_a() ? std::pair{x.index, y.index} : std::pair{y.index, x.index};
}

Path trace_back(const NodeMap<int>& parent, NodeId end) {
  Path p;
  NodeId n = end;
  while (true) {
    p.nodes.push_back(n);
    const int up = parent[n];
    if (up < 0) break;
    n = NodeId{other(n.side), up};
  }
  std::reverse(p.nodes.begin(), p.nodes.end());
  return p;
}

// Alternating BFS from an unmatched A root. `on_b(b)` is called when an
// unmatched B node is reached and `on_a(a)` when a matched A node is
// reached; either returning true stops the search at that node.
template <typename OnB, typename OnA>
std::optional<NodeId> alternating_bfs(const Instance& inst,
                                      const EqualitySubgraph& eq,
                                      const Matching& m, int root,
                                      NodeMap<int>& parent,
                                      std::vector<NodeId>* order, OnB on_b,
                                      OnA on_a) {
  parent = NodeMap<int>(inst.a_count(), inst.b_count(), -1);
  NodeSet seen(inst.a_count(), inst.b_count());
  seen.insert(NodeId::a(root));
  if (order != nullptr) order->push_back(NodeId::a(root));
  std::deque<int> queue{root};
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (int id : inst.incident(NodeId::a(a))) {
      if (!eq.contains(id)) continue;
      const int b = inst.edge(id).b;
      const NodeId nb = NodeId::b(b);
      if (seen.contains(nb) || m.mate_of_a(a) == b) continue;
      const int mate = m.mate_of_b(b);
      if (mate < 0) {
        if (on_b(b)) {
          parent[nb] = a;
          return nb;
        }
        continue;
      }
      seen.insert(nb);
      parent[nb] = a;
      const NodeId na = NodeId::a(mate);
      seen.insert(na);
      parent[na] = b;
      if (order != nullptr) {
        order->push_back(nb);
        order->push_back(na);
      }
      if (on_a(mate)) return na;
      queue.push_back(mate);
    }
  }
  return std::nullopt;
}

}  // namespace

EqualitySubgraph build_equality_subgraph(const Instance& inst,
                                         const OfferProfile& profile,
                                         const NodeSet& nodes, double eps_eq,
                                         double eps_inv) {
  EqualitySubgraph eq;
  eq.tolerance = eps_eq;
  eq.member.assign(inst.edges().size(), 0);
  for (std::size_t id = 0; id < inst.edges().size(); ++id) {
    if (!inside(nodes, inst.edges()[id])) continue;
    const double slack =
        relative_slack(inst, static_cast<int>(id), profile, eps_inv);
    if (std::abs(slack) <= eps_eq) {
      eq.member[id] = 1;
      eq.edges.push_back(static_cast<int>(id));
    }
  }
  return eq;
}

EqualitySubgraph build_equality_subgraph(const Instance& inst,
                                         const OfferProfile& profile,
                                         double eps_eq, double eps_inv) {
  return build_equality_subgraph(inst, profile, inst.all_nodes(), eps_eq,
                                 eps_inv);
}

void augment_to_maximum(const Instance& inst, const EqualitySubgraph& eq,
                        Matching& m) {
  for (int a = 0; a < inst.a_count(); ++a) {
    if (m.mate_of_a(a) >= 0) continue;
    if (auto path = find_augmenting_path(inst, eq, m, a)) {
      m = augment_along(m, *path);
    }
  }
}

Matching maximum_matching(const Instance& inst, const EqualitySubgraph& eq) {
  Matching m(inst);
  augment_to_maximum(inst, eq, m);
  return m;
}

Matching augment_along(const Matching& m, const Path& path) {
  const auto& ns = path.nodes;
  if (ns.size() < 2) return m;
  auto fail = [](const std::string& why) {
    throw Error(ErrorKind::kNotAlternating, why);
  };
  if (m.is_matched(ns.front())) fail("path starts at a matched node");
  std::vector<std::pair<int, int>> add;
  std::vector<std::pair<int, int>> drop;
  for (std::size_t k = 0; k + 1 < ns.size(); ++k) {
    if (ns[k].side == ns[k + 1].side) fail("consecutive nodes on one side");
    const auto [a, b] = as_pair(ns[k], ns[k + 1]);
    const bool matched = m.contains(a, b);
    if ((k % 2 == 0) == matched) {
      fail("edge " + std::to_string(k) + " breaks the alternation");
    }
    (matched ? drop : add).emplace_back(a, b);
  }
  if (ns.size() % 2 == 0 && m.is_matched(ns.back())) {
    fail("odd-length path ends at a matched node");
  }
  Matching out = m;
  for (auto [a, b] : drop) out.remove(a, b);
  for (auto [a, b] : add) out.add(a, b);
  return out;
}

Path AlternatingTree::path_from_root(NodeId n) const {
  if (!contains(n)) return {};
  return trace_back(parent, n);
}

AlternatingTree grow_alternating_tree(const Instance& inst,
                                      const EqualitySubgraph& eq,
                                      const Matching& m, int root) {
  if (m.mate_of_a(root) >= 0) {
    throw Error(ErrorKind::kRootMatched,
                node_label(NodeId::a(root)) + " is matched");
  }
  AlternatingTree tree;
  tree.root = NodeId::a(root);
  alternating_bfs(
      inst, eq, m, root, tree.parent, &tree.order, [](int) { return false; },
      [](int) { return false; });
  tree.depth = NodeMap<int>(inst.a_count(), inst.b_count(), -1);
  tree.members = NodeSet(inst.a_count(), inst.b_count());
  for (NodeId n : tree.order) {
    const int up = tree.parent[n];
    tree.depth[n] = up < 0 ? 0 : tree.depth[NodeId{other(n.side), up}] + 1;
    tree.members.insert(n);
  }
  return tree;
}

std::optional<Path> find_augmenting_path(const Instance& inst,
                                         const EqualitySubgraph& eq,
                                         const Matching& m, int root) {
  if (m.mate_of_a(root) >= 0) return std::nullopt;
  NodeMap<int> parent;
  const auto end = alternating_bfs(
      inst, eq, m, root, parent, nullptr, [](int) { return true; },
      [](int) { return false; });
  if (!end) return std::nullopt;
  return trace_back(parent, *end);
}

std::optional<Path> find_alternating_path_to(
    const Instance& inst, const EqualitySubgraph& eq, const Matching& m,
    int root, const std::function<bool(int)>& target) {
  if (m.mate_of_a(root) >= 0) return std::nullopt;
  NodeMap<int> parent;
  const auto end = alternating_bfs(
      inst, eq, m, root, parent, nullptr, [](int) { return false; }, target);
  if (!end) return std::nullopt;
  return trace_back(parent, *end);
}

std::optional<Matching> near_perfect_matching(const Instance& inst,
                                              const EqualitySubgraph& eq,
                                              const NodeSet& nodes,
                                              NodeId excluded) {
  NodeSet rest = nodes;
  rest.erase(excluded);
  EqualitySubgraph sub;
  sub.tolerance = eq.tolerance;
  sub.member.assign(eq.member.size(), 0);
  for (int id : eq.edges) {
    if (inside(rest, inst.edge(id))) {
      sub.member[static_cast<std::size_t>(id)] = 1;
      sub.edges.push_back(id);
    }
  }
  Matching m(inst);
  for (int a : rest.a_members()) {
    if (auto path = find_augmenting_path(inst, sub, m, a)) {
      m = augment_along(m, *path);
    }
  }
  for (NodeId n : rest.members()) {
    if (!m.is_matched(n)) return std::nullopt;
  }
  return m;
}

HungarianForest build_hungarian_forest(const Instance& inst,
                                       const EqualitySubgraph& eq,
                                       const Matching& m,
                                       const std::vector<int>& roots) {
  HungarianForest forest;
  forest.members = NodeSet(inst.a_count(), inst.b_count());
  for (int r : roots) {
    if (forest.members.contains(NodeId::a(r))) continue;
    // Hide eq edges into claimed B nodes so the tree stays disjoint.
    EqualitySubgraph free = eq;
    for (int id : eq.edges) {
      if (forest.members.contains(NodeId::b(inst.edge(id).b))) {
        free.member[static_cast<std::size_t>(id)] = 0;
      }
    }
    AlternatingTree tree = grow_alternating_tree(inst, free, m, r);
    for (NodeId n : tree.order) forest.members.insert(n);
    forest.trees.push_back(std::move(tree));
  }
  return forest;
}

bool check_forest_character(const Instance& inst, const EqualitySubgraph& eq,
                            const Matching& m, const HungarianForest& forest,
                            const NodeSet& nodes) {
  for (int id : eq.edges) {
    const Edge& e = inst.edge(id);
    if (!inside(nodes, e)) continue;
    if (forest.members.contains(NodeId::a(e.a)) &&
        !forest.members.contains(NodeId::b(e.b))) {
      return false;
    }
  }
  int unmatched = 0;
  for (int a : nodes.a_members()) {
    if (m.mate_of_a(a) < 0) ++unmatched;
  }
  return static_cast<int>(forest.trees.size()) == unmatched;
}

std::map<int, double> expanding_nodes(const Instance& inst,
                                      const AlternatingTree& tree,
                                      const OfferProfile& profile,
                                      const NodeSet& nodes, double eps_inv) {
  std::map<int, double> out;
  for (int a : tree.a_nodes()) {
    for (int id : inst.incident(NodeId::a(a))) {
      const NodeId b = NodeId::b(inst.edge(id).b);
      if (!nodes.contains(b) || tree.contains(b)) continue;
      const double v = pareto_payoff(inst, id, Side::A, profile[b], eps_inv);
      auto [it, fresh] = out.emplace(a, v);
      if (!fresh) it->second = std::max(it->second, v);
    }
  }
  return out;
}

std::map<int, double> expanding_nodes(const Instance& inst,
                                      const AlternatingTree& tree,
                                      const OfferProfile& profile,
                                      double eps_inv) {
  return expanding_nodes(inst, tree, profile, inst.all_nodes(), eps_inv);
}

std::vector<int> joining_nodes(const Instance& inst,
                               const AlternatingTree& tree,
                               const NodeSet& nodes) {
  std::vector<int> out;
  for (int b : nodes.b_members()) {
    if (tree.contains(NodeId::b(b))) continue;
    for (int id : inst.incident(NodeId::b(b))) {
      if (tree.contains(NodeId::a(inst.edge(id).a))) {
        out.push_back(b);
        break;
      }
    }
  }
  return out;
}

std::vector<int> joining_nodes(const Instance& inst,
                               const AlternatingTree& tree) {
  return joining_nodes(inst, tree, inst.all_nodes());
}

double min_slack(const Instance& inst, const OfferProfile& profile,
                 const NodeSet& nodes, double eps_inv) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t id = 0; id < inst.edges().size(); ++id) {
    if (!inside(nodes, inst.edges()[id])) continue;
    lo = std::min(lo,
                  relative_slack(inst, static_cast<int>(id), profile, eps_inv));
  }
  return lo;
}

bool check_spanning_tree_profile(const Instance& inst,
                                 const OfferProfile& profile,
                                 const NodeSet& nodes, double eps_eq,
                                 double eps_inv) {
  if (nodes.count_a() - nodes.count_b() != 1) {
    throw Error(ErrorKind::kSideSizeMismatch,
                "|A| = " + std::to_string(nodes.count_a()) +
                    ", |B| = " + std::to_string(nodes.count_b()));
  }
  if (min_slack(inst, profile, nodes, eps_inv) < -eps_eq) return false;
  const auto eq = build_equality_subgraph(inst, profile, nodes, eps_eq, eps_inv);
  Matching m(inst);
  for (int a : nodes.a_members()) {
    if (auto path = find_augmenting_path(inst, eq, m, a)) {
      m = augment_along(m, *path);
    }
  }
  if (m.size() != nodes.count_b()) return false;
  // With |B| matched the single unmatched A node is the only possible root;
  // whether its tree spans does not depend on which maximum matching we hold.
  for (int a : nodes.a_members()) {
    if (m.mate_of_a(a) >= 0) continue;
    return grow_alternating_tree(inst, eq, m, a).size() == nodes.size();
  }
  return false;
}

bool check_spanning_tree_profile(const Instance& inst,
                                 const OfferProfile& profile, double eps_eq,
                                 double eps_inv) {
  return check_spanning_tree_profile(inst, profile, inst.all_nodes(), eps_eq,
                                     eps_inv);
}

}  // namespace gsm
