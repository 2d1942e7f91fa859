#ifndef GSM_CONFIG_HPP
#define GSM_CONFIG_HPP

namespace gsm {

inline constexpr int kDefaultEnumerationCap = 20;

struct SolverConfig {
  double eps_eq = 1e-8;     // equality-subgraph band, split units
  double eps_inv = 1e-10;   // payoff inversion
  double eps_feas = 1e-6;   // split-sum identity on matched edges
  int max_iterations = 0;   // 0: 4 * |A| * |B| * |B|
  int enumeration_cap = kDefaultEnumerationCap;  // max nodes for path DFS
  bool trace = false;
  bool check_invariants = false;  // per-step invariant checks

  // Throws std::invalid_argument unless tolerances are positive and
  // eps_eq >= 100 * eps_inv.
  void validate() const;
};

}  // namespace gsm

#endif  // GSM_CONFIG_HPP
