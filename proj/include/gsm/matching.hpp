#ifndef GSM_MATCHING_HPP
#define GSM_MATCHING_HPP

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "gsm/instance.hpp"
#include "gsm/paths.hpp"

namespace gsm {

// Edges of an instance (or subinstance) that are tight under an offer
// profile: |relative_slack| <= tolerance.
struct EqualitySubgraph {
  std::vector<char> member;  // by edge id
  std::vector<int> edges;    // ascending edge ids
  double tolerance = 0.0;

  bool contains(int edge) const {
    return member[static_cast<std::size_t>(edge)] != 0;
  }
  int size() const { return static_cast<int>(edges.size()); }
};

EqualitySubgraph build_equality_subgraph(
    const Instance& inst, const OfferProfile& profile, double eps_eq,
    double eps_inv = kDefaultInversionTolerance);
// Only edges with both endpoints in `nodes`; offers outside are ignored.
EqualitySubgraph build_equality_subgraph(
    const Instance& inst, const OfferProfile& profile, const NodeSet& nodes,
    double eps_eq, double eps_inv = kDefaultInversionTolerance);

// Extends `m` to a maximum matching of eq by augmenting from each unmatched
// A node in index order. Edges of `m` outside eq are left alone.
void augment_to_maximum(const Instance& inst, const EqualitySubgraph& eq,
                        Matching& m);
Matching maximum_matching(const Instance& inst, const EqualitySubgraph& eq);

// Swaps matched and unmatched edges along `path`. The first node must be
// unmatched, edges must alternate unmatched/matched starting with unmatched,
// and an odd-length path must end at an unmatched node. Throws
// Error(kNotAlternating) otherwise. Paths with fewer than two nodes are a
// no-op.
Matching augment_along(const Matching& m, const Path& path);

// Alternating tree grown by BFS from an unmatched A root inside eq: A -> B
// over non-matching eq edges, B -> A over the matching edge. Unmatched B
// nodes are not added.
struct AlternatingTree {
  NodeId root;
  std::vector<NodeId> order;  // BFS order, root first
  NodeMap<int> parent;        // parent index (other side), -1 for root/outside
  NodeMap<int> depth;         // -1 outside the tree
  NodeSet members;

  bool contains(NodeId n) const { return members.contains(n); }
  int size() const { return members.size(); }
  std::vector<int> a_nodes() const { return members.a_members(); }
  std::vector<int> b_nodes() const { return members.b_members(); }
  Path path_from_root(NodeId n) const;
};

// Throws Error(kRootMatched) when the root is matched.
AlternatingTree grow_alternating_tree(const Instance& inst,
                                      const EqualitySubgraph& eq,
                                      const Matching& m, int root);

// BFS-shortest alternating path from the unmatched root to an unmatched B
// node; neighbours are scanned in index order.
std::optional<Path> find_augmenting_path(const Instance& inst,
                                         const EqualitySubgraph& eq,
                                         const Matching& m, int root);

// BFS-shortest alternating path from the unmatched root to a matched A node
// (other than the root) accepted by `target`.
std::optional<Path> find_alternating_path_to(
    const Instance& inst, const EqualitySubgraph& eq, const Matching& m,
    int root, const std::function<bool(int)>& target);

// Maximum matching of eq restricted to nodes \ {excluded}; returned only if
// it covers every node there.
std::optional<Matching> near_perfect_matching(const Instance& inst,
                                              const EqualitySubgraph& eq,
                                              const NodeSet& nodes,
                                              NodeId excluded);

// One alternating tree per root, grown in order; a tree never takes nodes
// already claimed by an earlier one.
struct HungarianForest {
  std::vector<AlternatingTree> trees;
  NodeSet members;
};

HungarianForest build_hungarian_forest(const Instance& inst,
                                       const EqualitySubgraph& eq,
                                       const Matching& m,
                                       const std::vector<int>& roots);

// No eq edge joins a forest A node to a B node outside the forest, and the
// forest has one tree per unmatched A node in `nodes`.
bool check_forest_character(const Instance& inst, const EqualitySubgraph& eq,
                            const Matching& m, const HungarianForest& forest,
                            const NodeSet& nodes);

// Expanding offers eo_i = max over outside neighbours j of v_i(j, O_j), for
// every tree A node with an edge to a B node in `nodes` outside the tree.
// Unclamped.
std::map<int, double> expanding_nodes(
    const Instance& inst, const AlternatingTree& tree,
    const OfferProfile& profile, const NodeSet& nodes,
    double eps_inv = kDefaultInversionTolerance);
std::map<int, double> expanding_nodes(
    const Instance& inst, const AlternatingTree& tree,
    const OfferProfile& profile, double eps_inv = kDefaultInversionTolerance);

// B nodes in `nodes`, outside the tree, adjacent to a tree A node.
std::vector<int> joining_nodes(const Instance& inst,
                               const AlternatingTree& tree,
                               const NodeSet& nodes);
std::vector<int> joining_nodes(const Instance& inst,
                               const AlternatingTree& tree);

// Stable on `nodes`, EQ admits a near-perfect matching and the alternating
// tree of that matching spans `nodes`. Throws Error(kSideSizeMismatch)
// unless |A| - |B| = 1 within `nodes`.
bool check_spanning_tree_profile(const Instance& inst,
                                 const OfferProfile& profile,
                                 const NodeSet& nodes, double eps_eq,
                                 double eps_inv = kDefaultInversionTolerance);
bool check_spanning_tree_profile(const Instance& inst,
                                 const OfferProfile& profile, double eps_eq,
                                 double eps_inv = kDefaultInversionTolerance);

// Smallest relative slack over edges inside `nodes`; +inf when there are
// none.
double min_slack(const Instance& inst, const OfferProfile& profile,
                 const NodeSet& nodes,
                 double eps_inv = kDefaultInversionTolerance);

}  // namespace gsm

#endif  // GSM_MATCHING_HPP
