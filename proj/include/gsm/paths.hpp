#ifndef GSM_PATHS_HPP
#define GSM_PATHS_HPP

#include <vector>

#include "gsm/config.hpp"
#include "gsm/instance.hpp"

namespace gsm {

// Simple path: consecutive nodes alternate sides and are joined by instance
// edges, no node repeats.
struct Path {
  std::vector<NodeId> nodes;

  friend auto operator<=>(const Path&, const Path&) = default;
};

bool is_simple_path(const Instance& inst, const Path& path);

// All simple paths from `from` to `to` inside `nodes`, in lexicographic order
// of the node sequence. Throws Error(kInstanceTooLarge) when `nodes` has more
// than `cap` members.
std::vector<Path> enumerate_simple_paths(const Instance& inst, NodeId from,
                                         NodeId to, const NodeSet& nodes,
                                         int cap = kDefaultEnumerationCap);
std::vector<Path> enumerate_simple_paths(const Instance& inst, NodeId from,
                                         NodeId to,
                                         int cap = kDefaultEnumerationCap);

// Offer induced on the last node of `path` when the first node offers x:
// each node takes the pareto payoff against its predecessor's offer.
double path_induced_offer(const Instance& inst, const Path& path, double x,
                          double eps_inv = kDefaultInversionTolerance);

struct MaxOfferProfile {
  // Entries for nodes outside the node set are NaN.
  OfferProfile offers;
  // Lexicographically smallest maximizing path for every A node (indexed by
  // A index; empty outside the node set). The root's path is just {root}.
  std::vector<Path> best_paths;
};

// O_a = max over simple root->a paths of the induced offer (root keeps x),
// then O_b = max over neighbours a of v_b(a, O_a). Exhaustive DFS.
MaxOfferProfile max_offer_profile(const Instance& inst, int root, double x,
                                  const NodeSet& nodes,
                                  int cap = kDefaultEnumerationCap,
                                  double eps_inv = kDefaultInversionTolerance);
MaxOfferProfile max_offer_profile(const Instance& inst, int root, double x,
                                  int cap = kDefaultEnumerationCap);

}  // namespace gsm

#endif  // GSM_PATHS_HPP
