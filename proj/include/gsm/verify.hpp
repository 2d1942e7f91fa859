#ifndef GSM_VERIFY_HPP
#define GSM_VERIFY_HPP

#include <string>
#include <vector>

#include "gsm/instance.hpp"

namespace gsm {

struct Violation {
  int edge = -1;
  double magnitude = 0.0;  // -slack, split units
};

// A split of `edge` under which both endpoints gain more than the search
// epsilon over their current payoffs.
struct BlockingWitness {
  int edge = -1;
  double split_a = 0.0;
  double split_b = 0.0;
  double gain_a = 0.0;
  double gain_b = 0.0;
};

struct VerificationReport {
  bool stable = true;
  bool feasible = true;
  std::vector<Violation> violations;
  std::vector<std::string> feasibility_errors;
  std::vector<BlockingWitness> blocking_pairs;
};

// Offer-form audit of a result: every edge satisfies
// u_a^{-1}(O_a) + u_b^{-1}(O_b) >= w - eps; matched pairs are instance edges
// with splits summing to the weight; splits are non-negative and match the
// offers; unmatched nodes have split and offer 0. Never throws.
VerificationReport verify(const Instance& inst,
                          const StableWeightedMatching& result,
                          double eps = 1e-6,
                          double eps_inv = kDefaultInversionTolerance);

// Current payoffs come from the matching and the splits (0 when unmatched).
// Scans s_a in {0, w/g, ..., w} on every edge. Throws std::invalid_argument
// when grid_points < 2.
std::vector<BlockingWitness> blocking_pair_search(
    const Instance& inst, const StableWeightedMatching& result,
    int grid_points = 1000, double eps = 1e-8);

// Sum of matched edge weights, added in ascending A index.
double matching_weight(const Instance& inst, const Matching& m);

struct CoreCheck {
  bool ok = true;
  std::vector<std::string> problems;
};

// Exhaustive maximum-weight matching for an all-linear-identity instance,
// plus the assignment-game core test for (matching, offers).
class LinearCoreOracle {
 public:
  // Throws Error(kNotLinear) unless every payoff is linear identity and
  // Error(kInstanceTooLarge) above 10 nodes per side.
  explicit LinearCoreOracle(const Instance& inst);

  double max_weight() const { return max_weight_; }
  const Matching& best() const { return best_; }

  // Maximum weight (exact), V_a + V_b >= w - tol on every edge, V >= -tol,
  // equality on matched edges and V = 0 on unmatched nodes, within tol.
  CoreCheck check(const Matching& m, const OfferProfile& offers,
                  double tol = 1e-6) const;

 private:
  void search(int a, double weight, double bound);

  const Instance& inst_;
  std::vector<double> best_rest_;  // upper bound on weight from A index on
  Matching current_;
  Matching best_;
  double max_weight_ = 0.0;
};

LinearCoreOracle linear_core_oracle(const Instance& inst);

}  // namespace gsm

#endif  // GSM_VERIFY_HPP
