#ifndef GSM_SOLVER_HPP
#define GSM_SOLVER_HPP

#include <functional>
#include <string>
#include <vector>

#include "gsm/config.hpp"
#include "gsm/matching.hpp"
#include "gsm/spanning.hpp"

namespace gsm {

// Snapshot of the offer iteration after initialization (t = 0) or after
// step t.
struct SolverState {
  int t = 0;
  OfferProfile profile;
  EqualitySubgraph eq;
  Matching matching;
  std::vector<int> roots;  // I^t, unmatched positive-offer A nodes, FIFO

  // What step t did; empty for the initial state.
  int root = -1;
  AlternatingTree tree;
  Candidate selected;
  std::string action;  // "augment", "reroute", "zero" or "grow"
};

int iteration_cap(const Instance& inst, const SolverConfig& config);

// O_b = 0, O_a = max_j v_a(j, 0), a maximum matching of EQ with unmatched
// positive A nodes rerouted onto matched zero-offer A nodes where an
// alternating path allows it.
SolverState initialize(const Instance& inst, const SolverConfig& config = {});

// One pass over the first root's tree. Throws std::logic_error when no root
// is left and Error(kIterationCapExceeded) when state.t reaches the cap.
SolverState step(const SolverState& state, const Instance& inst,
                 const SolverConfig& config = {});

using TraceSink = std::function<void(const SolverState&)>;

// Runs initialize/step until no root is left. `sink` sees every state,
// including the initial one.
StableWeightedMatching solve(const Instance& inst,
                             const SolverConfig& config = {},
                             const TraceSink& sink = {});

// s_i = u_i^{-1}(O_i) on matched edges, 0 elsewhere. Throws
// Error(kFeasibilityViolation) when a split is below -eps_feas or a matched
// pair misses its weight by more than eps_feas. Slightly negative splits
// are clamped to 0.
NodeMap<double> reconstruct_splits(const Instance& inst, const Matching& m,
                                   const OfferProfile& profile,
                                   double eps_feas = 1e-6,
                                   double eps_inv = kDefaultInversionTolerance);

// Per-step invariants between consecutive states: stability of `after`,
// every positive-offer B node matched, matched B nodes kept, A offers not
// raised, B offers not lowered. Offers are compared in split units with
// tolerance tol. Returns one message per failure.
std::vector<std::string> transition_problems(const Instance& inst,
                                             const SolverState& before,
                                             const SolverState& after,
                                             double tol,
                                             double eps_inv = kDefaultInversionTolerance);

}  // namespace gsm

#endif  // GSM_SOLVER_HPP
