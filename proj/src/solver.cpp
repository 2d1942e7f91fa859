#include "gsm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gsm/error.hpp"

namespace gsm {

void SolverConfig::validate() const {
  if (!(eps_eq > 0.0) || !(eps_inv > 0.0) || !(eps_feas > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (eps_eq < 100.0 * eps_inv) {
    throw std::invalid_argument("eps_eq must be at least 100 * eps_inv");
  }
  if (max_iterations < 0) {
    throw std::invalid_argument("max_iterations must be >= 0");
  }
  if (enumeration_cap < 1) {
    throw std::invalid_argument("enumeration_cap must be >= 1");
  }
}

namespace {

bool zero_offer(const Instance& inst, NodeId n, const OfferProfile& o,
                const SolverConfig& config) {
  return is_zero_offer(inst, n, o[n], config.eps_eq, config.eps_inv);
}

// Unmatched positive A nodes get matched in place of a matched zero-offer A
// node when an alternating path reaches one.
void reroute_to_zero_offers(const Instance& inst, const SolverState& s,
                            Matching& m, int root,
                            const SolverConfig& config, bool* moved) {
  auto path = find_alternating_path_to(
      inst, s.eq, m, root, [&](int a) {
        return zero_offer(inst, NodeId::a(a), s.profile, config);
      });
  if (path) {
    m = augment_along(m, *path);
    if (moved != nullptr) *moved = true;
  }
}

std::vector<int> unmatched_positive(const Instance& inst, const SolverState& s,
                                    const SolverConfig& config) {
  std::vector<int> out;
  for (int a = 0; a < inst.a_count(); ++a) {
    if (s.matching.mate_of_a(a) < 0 &&
        !zero_offer(inst, NodeId::a(a), s.profile, config)) {
      out.push_back(a);
    }
  }
  return out;
}

double split_units(const Instance& inst, NodeId n, double offer,
                   double eps_inv) {
  return split_for_offer(inst, inst.incident(n).front(), n.side, offer,
                         eps_inv);
}

}  // namespace

int iteration_cap(const Instance& inst, const SolverConfig& config) {
  if (config.max_iterations > 0) return config.max_iterations;
  return 4 * inst.a_count() * inst.b_count() * inst.b_count();
}

SolverState initialize(const Instance& inst, const SolverConfig& config) {
  config.validate();
  SolverState s;
  s.profile = make_profile(inst, 0.0);
  for (int a = 0; a < inst.a_count(); ++a) {
    double best = -std::numeric_limits<double>::infinity();
    for (int id : inst.incident(NodeId::a(a))) {
      best = std::max(best, pareto_payoff(inst, id, Side::A, 0.0, config.eps_inv));
    }
    s.profile.a[static_cast<std::size_t>(a)] = best;
  }
  s.eq = build_equality_subgraph(inst, s.profile, config.eps_eq, config.eps_inv);
  s.matching = maximum_matching(inst, s.eq);
  for (int a = 0; a < inst.a_count(); ++a) {
    if (s.matching.mate_of_a(a) >= 0 ||
        zero_offer(inst, NodeId::a(a), s.profile, config)) {
      continue;
    }
    reroute_to_zero_offers(inst, s, s.matching, a, config, nullptr);
  }
  s.roots = unmatched_positive(inst, s, config);
  return s;
}

SolverState step(const SolverState& state, const Instance& inst,
                 const SolverConfig& config) {
  if (state.roots.empty()) throw std::logic_error("step without a root");
  const int cap = iteration_cap(inst, config);
  if (state.t >= cap) {
    throw Error(ErrorKind::kIterationCapExceeded,
                "solver reached " + std::to_string(cap) + " iterations");
  }
  SolverState s;
  s.t = state.t + 1;
  s.profile = state.profile;
  s.root = state.roots.front();
  s.tree = grow_alternating_tree(inst, state.eq, state.matching, s.root);

  SpanningProfileEngine engine(inst, config);
  const auto candidates = tree_candidates(inst, s.tree, state.profile,
                                          inst.all_nodes(), true, config.eps_inv);
  auto pick = engine.select_dominant_expander(s.tree.members, candidates);
  s.selected = pick.candidate;
  for (NodeId n : s.tree.order) s.profile[n] = pick.result.profile[n];
  s.eq = build_equality_subgraph(inst, s.profile, config.eps_eq, config.eps_inv);

  auto inner = near_perfect_matching(inst, s.eq, s.tree.members,
                                     NodeId::a(s.root));
  if (!inner) {
    throw Error(ErrorKind::kInvariantViolation,
                "updated tree of " + node_label(NodeId::a(s.root)) +
                    " has no near-perfect matching");
  }
  for (auto [a, b] : state.matching.pairs()) {
    if (!s.tree.contains(NodeId::a(a))) inner->add(a, b);
  }
  s.matching = std::move(*inner);

  bool moved = false;
  if (auto path = find_augmenting_path(inst, s.eq, s.matching, s.root)) {
    s.matching = augment_along(s.matching, *path);
    s.action = "augment";
  } else {
    reroute_to_zero_offers(inst, s, s.matching, s.root, config, &moved);
    if (moved) {
      s.action = "reroute";
    } else if (zero_offer(inst, NodeId::a(s.root), s.profile, config)) {
      s.action = "zero";
    } else {
      s.action = "grow";
    }
  }

  s.roots = state.roots;
  if (s.matching.mate_of_a(s.root) >= 0 ||
      zero_offer(inst, NodeId::a(s.root), s.profile, config)) {
    s.roots.erase(s.roots.begin());
  }
  return s;
}

NodeMap<double> reconstruct_splits(const Instance& inst, const Matching& m,
                                   const OfferProfile& profile,
                                   double eps_feas, double eps_inv) {
  NodeMap<double> splits(inst.a_count(), inst.b_count(), 0.0);
  for (auto [a, b] : m.pairs()) {
    const int id = *inst.find_edge(a, b);
    const double sa = split_for_offer(inst, id, Side::A,
                                      profile[NodeId::a(a)], eps_inv);
    const double sb = split_for_offer(inst, id, Side::B,
                                      profile[NodeId::b(b)], eps_inv);
    const std::string where =
        "(" + node_label(NodeId::a(a)) + ", " + node_label(NodeId::b(b)) + ")";
    if (sa < -eps_feas || sb < -eps_feas) {
      throw Error(ErrorKind::kFeasibilityViolation,
                  "negative split on " + where);
    }
    if (std::abs(sa + sb - inst.edge(id).weight) > eps_feas) {
      throw Error(ErrorKind::kFeasibilityViolation,
                  "splits on " + where + " sum to " + std::to_string(sa + sb) +
                      ", weight " + std::to_string(inst.edge(id).weight));
    }
    splits.a[static_cast<std::size_t>(a)] = std::max(sa, 0.0);
    splits.b[static_cast<std::size_t>(b)] = std::max(sb, 0.0);
  }
  return splits;
}

std::vector<std::string> transition_problems(const Instance& inst,
                                             const SolverState& before,
                                             const SolverState& after,
                                             double tol, double eps_inv) {
  std::vector<std::string> out;
  const double slack = min_slack(inst, after.profile, inst.all_nodes(), eps_inv);
  if (slack < -tol) {
    out.push_back("t=" + std::to_string(after.t) + ": unstable, slack " +
                  std::to_string(slack));
  }
  for (int b = 0; b < inst.b_count(); ++b) {
    const NodeId n = NodeId::b(b);
    if (!is_zero_offer(inst, n, after.profile[n], tol, eps_inv) &&
        after.matching.mate_of_b(b) < 0) {
      out.push_back("t=" + std::to_string(after.t) + ": " + node_label(n) +
                    " has a positive offer but is unmatched");
    }
    if (before.matching.mate_of_b(b) >= 0 && after.matching.mate_of_b(b) < 0) {
      out.push_back("t=" + std::to_string(after.t) + ": " + node_label(n) +
                    " lost its match");
    }
  }
  for (NodeId n : inst.all_nodes().members()) {
    const double s0 = split_units(inst, n, before.profile[n], eps_inv);
    const double s1 = split_units(inst, n, after.profile[n], eps_inv);
    const double band = tol * split_scale(s0, s1);
    if (n.is_a() ? s1 > s0 + band : s1 < s0 - band) {
      out.push_back("t=" + std::to_string(after.t) + ": " + node_label(n) +
                    " offer moved the wrong way");
    }
  }
  return out;
}

StableWeightedMatching solve(const Instance& inst, const SolverConfig& config,
                             const TraceSink& sink) {
  SolverState s = initialize(inst, config);
  if (sink) sink(s);
  while (!s.roots.empty()) {
    SolverState next = step(s, inst, config);
    if (config.check_invariants) {
      const auto problems =
          transition_problems(inst, s, next, 10.0 * config.eps_eq, config.eps_inv);
      if (!problems.empty()) {
        throw Error(ErrorKind::kInvariantViolation, problems.front());
      }
    }
    s = std::move(next);
    if (sink) sink(s);
  }

  StableWeightedMatching out;
  out.iterations = s.t;
  out.profile = s.profile;
  out.matching = s.matching;
  for (NodeId n : inst.all_nodes().members()) {
    if (s.matching.is_matched(n)) continue;
    if (!zero_offer(inst, n, s.profile, config)) {
      throw Error(ErrorKind::kFeasibilityViolation,
                  node_label(n) + " is unmatched with a positive offer");
    }
    out.profile[n] = 0.0;
  }
  // A zero-weight edge matched at zero offers carries nothing; leaving it
  // out keeps degenerate instances at the empty matching.
  for (auto [a, b] : s.matching.pairs()) {
    const int id = *inst.find_edge(a, b);
    if (inst.edge(id).weight == 0.0 &&
        zero_offer(inst, NodeId::a(a), s.profile, config) &&
        zero_offer(inst, NodeId::b(b), s.profile, config)) {
      out.matching.remove(a, b);
      out.profile.a[static_cast<std::size_t>(a)] = 0.0;
      out.profile.b[static_cast<std::size_t>(b)] = 0.0;
    }
  }
  out.splits = reconstruct_splits(inst, out.matching, out.profile,
                                  config.eps_feas, config.eps_inv);
  return out;
}

}  // namespace gsm
