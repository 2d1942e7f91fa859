#ifndef GSM_INSTANCE_HPP
#define GSM_INSTANCE_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsm/node.hpp"
#include "gsm/payoff.hpp"

namespace gsm {

struct Edge {
  int a = 0;
  int b = 0;
  double weight = 0.0;
  PayoffFn payoff_a;  // u_a(b, .)
  PayoffFn payoff_b;  // u_b(a, .)

  int endpoint(Side s) const { return s == Side::A ? a : b; }
  const PayoffFn& payoff(Side s) const {
    return s == Side::A ? payoff_a : payoff_b;
  }
};

// Bipartite network with per-edge weights and per-(node, edge) payoffs.
// Immutable after construction. Edge ids are positions in edges().
class Instance {
 public:
  // Throws std::invalid_argument on non-positive side counts, endpoints out
  // of range or duplicate (a, b) pairs.
  Instance(int a_count, int b_count, std::vector<Edge> edges);

  int a_count() const { return a_count_; }
  int b_count() const { return b_count_; }
  int node_count() const { return a_count_ + b_count_; }
  int side_count(Side s) const { return s == Side::A ? a_count_ : b_count_; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const {
    return edges_[static_cast<std::size_t>(id)];
  }

  // Incident edge ids, ordered by the index of the other endpoint.
  std::span<const int> incident(NodeId n) const;

  std::optional<int> find_edge(int a, int b) const;

  NodeSet all_nodes() const { return NodeSet(a_count_, b_count_, true); }

 private:
  int a_count_;
  int b_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_a_;
  std::vector<std::vector<int>> adj_b_;
};

NodeId other_end(const Instance& inst, int edge, NodeId from);

// Payoff vector over all nodes (one offer per node).
using OfferProfile = NodeMap<double>;

OfferProfile make_profile(const Instance& inst, double init = 0.0);

// Set of edges, no two sharing a node. Stored as mate arrays.
class Matching {
 public:
  Matching() = default;
  Matching(int a_count, int b_count)
      : mate_a_(static_cast<std::size_t>(a_count), -1),
        mate_b_(static_cast<std::size_t>(b_count), -1) {}
  explicit Matching(const Instance& inst)
      : Matching(inst.a_count(), inst.b_count()) {}

  int mate_of_a(int a) const { return mate_a_[static_cast<std::size_t>(a)]; }
  int mate_of_b(int b) const { return mate_b_[static_cast<std::size_t>(b)]; }
  // Index of the partner on the other side, -1 when unmatched.
  int mate(NodeId n) const {
    return n.is_a() ? mate_of_a(n.index) : mate_of_b(n.index);
  }
  bool is_matched(NodeId n) const { return mate(n) >= 0; }
  bool contains(int a, int b) const { return mate_of_a(a) == b && b >= 0; }

  // Both endpoints must currently be unmatched.
  void add(int a, int b);
  void remove(int a, int b);

  int size() const;
  // (a, b) pairs ordered by a.
  std::vector<std::pair<int, int>> pairs() const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<int> mate_a_;
  std::vector<int> mate_b_;
};

// A matching plus the split and the payoff (offer) of every node.
struct StableWeightedMatching {
  Matching matching;
  NodeMap<double> splits;
  OfferProfile profile;
  int iterations = 0;
};

// v_receiver(partner, x): the receiver's payoff on `edge` when the partner's
// payoff is pinned at x. Strictly decreasing and continuous in x.
double pareto_payoff(const Instance& inst, int edge, Side receiver,
                     double partner_payoff,
                     double eps_inv = kDefaultInversionTolerance);
double pareto_payoff(const Instance& inst, std::pair<int, int> edge,
                     NodeId receiver, double partner_payoff,
                     double eps_inv = kDefaultInversionTolerance);

// Split that gives `side`'s endpoint of `edge` the payoff `offer`.
double split_for_offer(const Instance& inst, int edge, Side side, double offer,
                       double eps_inv = kDefaultInversionTolerance);

// u_a^{-1}(O_a) + u_b^{-1}(O_b) - w, in split units. The offers are stable on
// the edge iff this is >= 0 and the edge is tight iff it is 0; for linear
// identity payoffs it equals O_b - v_b(a, O_a).
double edge_slack(const Instance& inst, int edge, double offer_a,
                  double offer_b, double eps_inv = kDefaultInversionTolerance);
double edge_slack(const Instance& inst, int edge, const OfferProfile& offers,
                  double eps_inv = kDefaultInversionTolerance);

// max(1, |s| over the finite arguments): the magnitude a comparison of split
// values is measured against.
double split_scale(double s0, double s1);

// edge_slack divided by max(1, |s_a|, |s_b|), the magnitude its rounding
// error scales with. Internal tolerances compare against this, so offers
// pushed far out along the linear tails keep their tight edges.
double relative_slack(const Instance& inst, int edge, const OfferProfile& offers,
                      double eps_inv = kDefaultInversionTolerance);

// An offer counts as zero when the split it implies on every incident edge
// is at most eps (or the offer is not positive).
bool is_zero_offer(const Instance& inst, NodeId n, double offer, double eps,
                   double eps_inv = kDefaultInversionTolerance);

bool is_connected(const Instance& inst, const NodeSet& nodes);

struct ValidationReport {
  std::vector<std::string> errors;
  double max_inversion_error = 0.0;
  bool ok() const { return errors.empty(); }
};

// Connectivity, weight signs, payoff monotonicity on a sampled grid and
// inversion round-trip errors. Never throws.
ValidationReport validate_instance(const Instance& inst,
                                   double eps_inv = kDefaultInversionTolerance);

}  // namespace gsm

#endif  // GSM_INSTANCE_HPP
