#ifndef GSM_SPANNING_HPP
#define GSM_SPANNING_HPP

#include <map>
#include <tuple>
#include <vector>

#include "gsm/config.hpp"
#include "gsm/matching.hpp"

namespace gsm {

// Stable profile on a subinstance with |A| - |B| = 1 whose equality subgraph
// carries an alternating tree spanning the subinstance, rooted at the root.
struct SpanningProfileResult {
  OfferProfile profile;  // NaN outside the node set
  AlternatingTree tree;
  Matching near_perfect_matching;  // leaves only the root unmatched
  int iterations = 0;
};

// Tree A node competing to set the tree's offers. `binding_edge` is the edge
// to the outside B node that realizes `offer`; -1 when the offer is the
// clamp value 0.
struct Candidate {
  int node = 0;
  double offer = 0.0;
  int binding_edge = -1;
  double drop = 0.0;  // split units from the current offer down to `offer`
};

// Expanding offers of the tree A nodes as candidates. With clamp, every tree
// A node is a candidate and offers are max(eo, 0); without, only the
// expanding nodes are.
std::vector<Candidate> tree_candidates(const Instance& inst,
                                       const AlternatingTree& tree,
                                       const OfferProfile& profile,
                                       const NodeSet& nodes, bool clamp,
                                       double eps_inv);

// Recursive construction of stable spanning-tree profiles. Results are
// memoized per (node set, root, root offer) for the engine's lifetime.
class SpanningProfileEngine {
 public:
  struct Selection {
    Candidate candidate;
    SpanningProfileResult result;
  };

  explicit SpanningProfileEngine(const Instance& inst,
                                 SolverConfig config = {});

  // Throws Error(kSideSizeMismatch) unless |A| - |B| = 1 within `nodes`,
  // Error(kNoProfile) when no spanning profile with O_root = x is reached,
  // Error(kIterationCapExceeded) past 4 |A| |B| forest steps.
  SpanningProfileResult stable_spanning_profile(const NodeSet& nodes,
                                                int root, double x);
  SpanningProfileResult stable_spanning_profile(int root, double x);

  // f^S_{from,to}(x): offer of `to` in the spanning profile rooted at the A
  // node `from` with offer x.
  double offer_generating_fn(const NodeSet& nodes, NodeId from, NodeId to,
                             double x);
  double offer_generating_fn(NodeId from, NodeId to, double x);

  // Candidate whose spanning profile on `tree_nodes` meets every other
  // candidate's offer. Starts from the smallest drop and moves to the first
  // violated candidate until none is violated; each move raises all A
  // offers, so no candidate is visited twice. Among candidates tight under
  // the final profile the lowest index is reported.
  Selection select_dominant_expander(const NodeSet& tree_nodes,
                                     std::vector<Candidate> candidates);

  std::size_t cache_size() const { return cache_.size(); }
  int recursive_calls() const { return calls_; }

 private:
  using Key = std::tuple<NodeSet, int, double>;

  SpanningProfileResult compute(const NodeSet& nodes, int root, double x);
  SpanningProfileResult base_case(const NodeSet& nodes, int root, double x);
  SpanningProfileResult finalize(const NodeSet& nodes, int root, double x,
                                 OfferProfile profile, int iterations);
  // Seed with overflowed offers replaced: A offers by the largest (smallest)
  // offer at split +-split_cap on their edges, B offers refolded, and B
  // offers still infinite by the smallest offer at split -split_cap.
  OfferProfile capped_seed(const NodeSet& nodes, int root, OfferProfile offers,
                           double split_cap) const;
  SpanningProfileResult descend(const NodeSet& nodes, int root, double x,
                                OfferProfile offers);
  bool meets(const OfferProfile& profile, const Candidate& c) const;
  bool tight(const OfferProfile& profile, const Candidate& c) const;
  void check_step(const NodeSet& nodes, const OfferProfile& before,
                  const OfferProfile& after, const EqualitySubgraph& eq,
                  const Matching& m) const;

  const Instance& inst_;
  SolverConfig config_;
  std::map<Key, SpanningProfileResult> cache_;
  int calls_ = 0;
};

// Oracle: enumerates trees in which every B node joins exactly two of its A
// neighbours, folds offers from the root along each spanning one and returns
// the stable profile. Throws Error(kInstanceTooLarge) above 12 nodes and
// Error(kNoProfile) when no tree yields a stable profile.
SpanningProfileResult brute_force_spanning_profile(
    const Instance& inst, const NodeSet& nodes, int root, double x,
    double eps = 1e-9, double eps_inv = kDefaultInversionTolerance);
SpanningProfileResult brute_force_spanning_profile(const Instance& inst,
                                                   int root, double x);

// Offers of every tree node folded from the root's offer along tree edges.
void fold_tree_offers(const Instance& inst, const AlternatingTree& tree,
                      OfferProfile& profile, double eps_inv);

}  // namespace gsm

#endif  // GSM_SPANNING_HPP
