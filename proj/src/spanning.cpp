#include "gsm/spanning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gsm/error.hpp"

namespace gsm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string describe(const NodeSet& nodes, int root, double x) {
  return std::to_string(nodes.count_a()) + "x" +
         std::to_string(nodes.count_b()) + " subinstance, root " +
         node_label(NodeId::a(root)) + ", x = " + std::to_string(x);
}

// Offer of n in split units, measured on its first incident edge inside
// `nodes`. Used to compare two offers of the same node without payoff-space
// distortion near a zero split.
double split_units(const Instance& inst, NodeId n, double offer,
                   const NodeSet& nodes, double eps_inv) {
  for (int id : inst.incident(n)) {
    if (nodes.contains(other_end(inst, id, n))) {
      return split_for_offer(inst, id, n.side, offer, eps_inv);
    }
  }
  return offer;
}

}  // namespace

std::vector<Candidate> tree_candidates(const Instance& inst,
                                       const AlternatingTree& tree,
                                       const OfferProfile& profile,
                                       const NodeSet& nodes, bool clamp,
                                       double eps_inv) {
  std::vector<Candidate> out;
  for (int a : tree.a_nodes()) {
    Candidate c{a, -std::numeric_limits<double>::infinity(), -1};
    for (int id : inst.incident(NodeId::a(a))) {
      const NodeId b = NodeId::b(inst.edge(id).b);
      if (!nodes.contains(b) || tree.contains(b)) continue;
      const double v = pareto_payoff(inst, id, Side::A, profile[b], eps_inv);
      if (v > c.offer) {
        c.offer = v;
        c.binding_edge = id;
      }
    }
    if (c.binding_edge < 0 || (clamp && c.offer < 0.0)) {
      if (!clamp) continue;
      c.offer = 0.0;
      c.binding_edge = -1;
    }
    int ref = c.binding_edge;
    if (ref < 0) {
      for (int id : inst.incident(NodeId::a(a))) {
        if (tree.contains(NodeId::b(inst.edge(id).b))) ref = id;
      }
    }
    if (ref >= 0) {
      c.drop = split_for_offer(inst, ref, Side::A, profile.a[a], eps_inv) -
               split_for_offer(inst, ref, Side::A, c.offer, eps_inv);
      if (std::isnan(c.drop)) c.drop = std::numeric_limits<double>::infinity();
    }
    out.push_back(c);
  }
  return out;
}

void fold_tree_offers(const Instance& inst, const AlternatingTree& tree,
                      OfferProfile& profile, double eps_inv) {
  for (NodeId n : tree.order) {
    const int up = tree.parent[n];
    if (up < 0) continue;
    const NodeId p{other(n.side), up};
    const int id = *(n.is_a() ? inst.find_edge(n.index, up)
                              : inst.find_edge(up, n.index));
    profile[n] = pareto_payoff(inst, id, n.side, profile[p], eps_inv);
  }
}

SpanningProfileEngine::SpanningProfileEngine(const Instance& inst,
                                             SolverConfig config)
    : inst_(inst), config_(config) {
  config_.validate();
}

SpanningProfileResult SpanningProfileEngine::stable_spanning_profile(
    const NodeSet& nodes, int root, double x) {
  if (nodes.count_a() - nodes.count_b() != 1) {
    throw Error(ErrorKind::kSideSizeMismatch,
                "|A| = " + std::to_string(nodes.count_a()) +
                    ", |B| = " + std::to_string(nodes.count_b()));
  }
  if (!nodes.contains(NodeId::a(root))) {
    throw std::invalid_argument("root is not in the node set");
  }
  Key key{nodes, root, x};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  ++calls_;
  SpanningProfileResult result = nodes.count_b() <= 1
                                     ? base_case(nodes, root, x)
                                     : compute(nodes, root, x);
  for (NodeId n : nodes.members()) {
    if (!std::isfinite(result.profile[n])) {
      throw Error(ErrorKind::kNoProfile,
                  node_label(n) + " offer leaves the double range: " +
                      describe(nodes, root, x));
    }
  }
  return cache_.emplace(std::move(key), std::move(result)).first->second;
}

SpanningProfileResult SpanningProfileEngine::stable_spanning_profile(
    int root, double x) {
  return stable_spanning_profile(inst_.all_nodes(), root, x);
}

double SpanningProfileEngine::offer_generating_fn(const NodeSet& nodes,
                                                  NodeId from, NodeId to,
                                                  double x) {
  if (!from.is_a()) throw std::invalid_argument("f^S starts at an A node");
  if (!nodes.contains(to)) throw std::invalid_argument("target not in set");
  return stable_spanning_profile(nodes, from.index, x).profile[to];
}

double SpanningProfileEngine::offer_generating_fn(NodeId from, NodeId to,
                                                  double x) {
  return offer_generating_fn(inst_.all_nodes(), from, to, x);
}

SpanningProfileResult SpanningProfileEngine::base_case(const NodeSet& nodes,
                                                       int root, double x) {
  SpanningProfileResult r;
  r.profile = make_profile(inst_, kNaN);
  r.profile.a[static_cast<std::size_t>(root)] = x;
  r.near_perfect_matching = Matching(inst_);
  if (nodes.count_b() == 0) {
    r.tree.root = NodeId::a(root);
    r.tree.order = {r.tree.root};
    r.tree.parent = NodeMap<int>(inst_.a_count(), inst_.b_count(), -1);
    r.tree.depth = NodeMap<int>(inst_.a_count(), inst_.b_count(), -1);
    r.tree.depth[r.tree.root] = 0;
    r.tree.members = NodeSet(inst_.a_count(), inst_.b_count());
    r.tree.members.insert(r.tree.root);
    return r;
  }
  const int b = nodes.b_members().front();
  int leaf = -1;
  for (int a : nodes.a_members()) {
    if (a != root) leaf = a;
  }
  const auto root_edge = inst_.find_edge(root, b);
  const auto leaf_edge = inst_.find_edge(leaf, b);
  if (!root_edge || !leaf_edge) {
    throw Error(ErrorKind::kNoProfile,
                "subinstance not connected: " + describe(nodes, root, x));
  }
  const double ob = pareto_payoff(inst_, *root_edge, Side::B, x,
                                  config_.eps_inv);
  r.profile.b[static_cast<std::size_t>(b)] = ob;
  r.profile.a[static_cast<std::size_t>(leaf)] =
      pareto_payoff(inst_, *leaf_edge, Side::A, ob, config_.eps_inv);
  r.near_perfect_matching.add(leaf, b);
  const auto eq = build_equality_subgraph(inst_, r.profile, nodes,
                                          config_.eps_eq, config_.eps_inv);
  r.tree = grow_alternating_tree(inst_, eq, r.near_perfect_matching, root);
  if (r.tree.size() != nodes.size()) {
    throw Error(ErrorKind::kNoProfile,
                "base case tree does not span: " + describe(nodes, root, x));
  }
  return r;
}

OfferProfile SpanningProfileEngine::capped_seed(const NodeSet& nodes, int root,
                                               OfferProfile offers,
                                               double split_cap) const {
  // Offers at splits +-split_cap over the node's edges inside `nodes`.
  auto bounds = [&](NodeId n) {
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (int id : inst_.incident(n)) {
      const Edge& e = inst_.edge(id);
      if (!nodes.contains(n.is_a() ? NodeId::b(e.b) : NodeId::a(e.a))) continue;
      const PayoffFn& u = n.is_a() ? e.payoff_a : e.payoff_b;
      const double up = u(split_cap);
      if (std::isfinite(up)) hi = std::max(hi, up);
      lo = std::min(lo, u(-split_cap));
    }
    constexpr double kMax = std::numeric_limits<double>::max();
    return std::pair{std::max(lo, -kMax), std::isfinite(hi) ? hi : kMax};
  };
  for (int a : nodes.a_members()) {
    const NodeId n = NodeId::a(a);
    if (a == root || std::isfinite(offers[n])) continue;
    const auto [lo, hi] = bounds(n);
    offers[n] = offers[n] < 0.0 ? lo : hi;
  }
  for (int b : nodes.b_members()) {
    const NodeId n = NodeId::b(b);
    double best = -std::numeric_limits<double>::infinity();
    for (int id : inst_.incident(n)) {
      const NodeId a = NodeId::a(inst_.edge(id).a);
      if (!nodes.contains(a)) continue;
      best = std::max(best, pareto_payoff(inst_, id, Side::B, offers[a],
                                          config_.eps_inv));
    }
    offers[n] = std::isfinite(best) ? best : bounds(n).first;
  }
  return offers;
}

SpanningProfileResult SpanningProfileEngine::compute(const NodeSet& nodes,
                                                     int root, double x) {
  const OfferProfile seed =
      max_offer_profile(inst_, root, x, nodes, config_.enumeration_cap,
                        config_.eps_inv)
          .offers;
  bool finite = true;
  for (NodeId n : nodes.members()) finite = finite && std::isfinite(seed[n]);
  if (finite) return descend(nodes, root, x, seed);

  // Some max-offer path overflowed. Any finite seed above the target on A
  // and below it on B descends to the same profile, but one near the double
  // range cannot move, so widen the cap until a run closes.
  constexpr double kCaps[] = {1e12, 1e24, 1e48, 1e96, 1e192};
  for (double cap : kCaps) {
    try {
      return descend(nodes, root, x, capped_seed(nodes, root, seed, cap));
    } catch (const Error& e) {
      const bool retry = e.kind() == ErrorKind::kNoProfile ||
                         e.kind() == ErrorKind::kIterationCapExceeded;
      if (!retry || cap == kCaps[std::size(kCaps) - 1]) throw;
    }
  }
  throw Error(ErrorKind::kNoProfile, "unreachable");
}

SpanningProfileResult SpanningProfileEngine::descend(const NodeSet& nodes,
                                                     int root, double x,
                                                     OfferProfile offers) {
  const double eps_eq = config_.eps_eq;
  const double eps_inv = config_.eps_inv;
  EqualitySubgraph eq =
      build_equality_subgraph(inst_, offers, nodes, eps_eq, eps_inv);
  Matching m = maximum_matching(inst_, eq);

  const int cap = 4 * nodes.count_a() * nodes.count_b();
  int iterations = 0;
  while (true) {
    int r = -1;
    for (int a : nodes.a_members()) {
      if (m.mate_of_a(a) < 0) {
        r = a;
        break;
      }
    }
    const AlternatingTree tree = grow_alternating_tree(inst_, eq, m, r);
    if (tree.size() == nodes.size()) break;
    if (tree.contains(NodeId::a(root))) {
      throw Error(ErrorKind::kNoProfile,
                  "root offer too high, forest cannot close: " +
                      describe(nodes, root, x));
    }
    if (++iterations > cap) {
      throw Error(ErrorKind::kIterationCapExceeded,
                  std::to_string(cap) + " steps: " + describe(nodes, root, x));
    }
    auto candidates =
        tree_candidates(inst_, tree, offers, nodes, false, eps_inv);
    if (candidates.empty()) {
      throw Error(ErrorKind::kNoProfile,
                  "tree has no expanding node: " + describe(nodes, root, x));
    }
    const Selection pick = select_dominant_expander(tree.members, candidates);

    const OfferProfile before = offers;
    for (NodeId n : tree.order) offers[n] = pick.result.profile[n];
    eq = build_equality_subgraph(inst_, offers, nodes, eps_eq, eps_inv);

    auto inner = near_perfect_matching(inst_, eq, tree.members, NodeId::a(r));
    if (!inner) {
      throw Error(ErrorKind::kInvariantViolation,
                  "updated tree lost its near-perfect matching: " +
                      describe(nodes, root, x));
    }
    for (auto [a, b] : m.pairs()) {
      if (!tree.contains(NodeId::a(a))) inner->add(a, b);
    }
    m = std::move(*inner);
    if (auto path = find_augmenting_path(inst_, eq, m, r)) {
      m = augment_along(m, *path);
    }
    if (config_.check_invariants) check_step(nodes, before, offers, eq, m);
  }
  return finalize(nodes, root, x, std::move(offers), iterations);
}

SpanningProfileResult SpanningProfileEngine::finalize(const NodeSet& nodes,
                                                      int root, double x,
                                                      OfferProfile profile,
                                                      int iterations) {
  const double eps_eq = config_.eps_eq;
  const double eps_inv = config_.eps_inv;
  const auto eq = build_equality_subgraph(inst_, profile, nodes, eps_eq, eps_inv);
  auto npm = near_perfect_matching(inst_, eq, nodes, NodeId::a(root));
  if (!npm) {
    throw Error(ErrorKind::kNoProfile,
                "no near-perfect matching around the root: " +
                    describe(nodes, root, x));
  }
  SpanningProfileResult r;
  r.tree = grow_alternating_tree(inst_, eq, *npm, root);
  if (r.tree.size() != nodes.size()) {
    throw Error(ErrorKind::kNoProfile,
                "alternating tree does not span: " + describe(nodes, root, x));
  }
  // Refold along the tree so tree edges are tight to inversion accuracy
  // rather than to the drift accumulated over iterations.
  profile[NodeId::a(root)] = x;
  fold_tree_offers(inst_, r.tree, profile, eps_inv);
  if (min_slack(inst_, profile, nodes, eps_inv) < -eps_eq) {
    throw Error(ErrorKind::kNoProfile,
                "final profile not stable: " + describe(nodes, root, x));
  }
  r.profile = std::move(profile);
  r.near_perfect_matching = std::move(*npm);
  r.iterations = iterations;
  return r;
}

bool SpanningProfileEngine::meets(const OfferProfile& profile,
                                  const Candidate& c) const {
  const double o = profile.a[static_cast<std::size_t>(c.node)];
  if (c.binding_edge >= 0) {
    const double s1 =
        split_for_offer(inst_, c.binding_edge, Side::A, o, config_.eps_inv);
    const double s0 = split_for_offer(inst_, c.binding_edge, Side::A, c.offer,
                                      config_.eps_inv);
    return s1 - s0 >= -config_.eps_eq * split_scale(s0, s1);
  }
  if (o >= c.offer) return true;
  double best = -std::numeric_limits<double>::infinity();
  for (int id : inst_.incident(NodeId::a(c.node))) {
    best = std::max(best, split_for_offer(inst_, id, Side::A, o,
                                          config_.eps_inv));
  }
  return best >= -config_.eps_eq;
}

bool SpanningProfileEngine::tight(const OfferProfile& profile,
                                  const Candidate& c) const {
  const double o = profile.a[static_cast<std::size_t>(c.node)];
  if (c.binding_edge < 0) return o == c.offer;
  const double s1 =
      split_for_offer(inst_, c.binding_edge, Side::A, o, config_.eps_inv);
  const double s0 = split_for_offer(inst_, c.binding_edge, Side::A, c.offer,
                                    config_.eps_inv);
  return std::abs(s1 - s0) <= config_.eps_eq * split_scale(s0, s1);
}

SpanningProfileEngine::Selection SpanningProfileEngine::select_dominant_expander(
    const NodeSet& tree_nodes, std::vector<Candidate> candidates) {
  if (candidates.empty()) {
    throw std::invalid_argument("no expanding candidates");
  }
  // Far-off candidates can sit at offers whose profiles overflow, so the
  // chase starts next to the current profile.
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& l, const Candidate& r) {
              return l.drop != r.drop ? l.drop < r.drop : l.node < r.node;
            });
  std::vector<char> visited(candidates.size(), 0);
  std::size_t cur = 0;
  while (true) {
    visited[cur] = 1;
    SpanningProfileResult res;
    try {
      res = stable_spanning_profile(tree_nodes, candidates[cur].node,
                                    candidates[cur].offer);
    } catch (const Error& e) {
      // A profile past the double range drives some other tree A node below
      // every finite offer, so that candidate is violated anyway.
      if (e.kind() != ErrorKind::kNoProfile) throw;
      std::size_t k = 0;
      while (k < candidates.size() && visited[k] != 0) ++k;
      if (k == candidates.size()) throw;
      cur = k;
      continue;
    }
    std::size_t next = candidates.size();
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (visited[k] == 0 && !meets(res.profile, candidates[k])) {
        next = k;
        break;
      }
    }
    if (next == candidates.size()) {
      Candidate pick = candidates[cur];
      for (const Candidate& c : candidates) {
        if (c.node < pick.node && tight(res.profile, c)) pick = c;
      }
      return {pick, std::move(res)};
    }
    cur = next;
  }
}

void SpanningProfileEngine::check_step(const NodeSet& nodes,
                                       const OfferProfile& before,
                                       const OfferProfile& after,
                                       const EqualitySubgraph& eq,
                                       const Matching& m) const {
  const double tol = 10.0 * config_.eps_eq;
  const double eps_inv = config_.eps_inv;
  const double slack = min_slack(inst_, after, nodes, eps_inv);
  if (slack < -tol) {
    throw Error(ErrorKind::kInvariantViolation,
                "profile unstable, slack " + std::to_string(slack));
  }
  for (NodeId n : nodes.members()) {
    const double s0 = split_units(inst_, n, before[n], nodes, eps_inv);
    const double s1 = split_units(inst_, n, after[n], nodes, eps_inv);
    const double band = tol * split_scale(s0, s1);
    if (n.is_a() ? s1 > s0 + band : s1 < s0 - band) {
      throw Error(ErrorKind::kInvariantViolation,
                  node_label(n) + " offer moved the wrong way");
    }
  }
  std::vector<int> roots;
  for (int a : nodes.a_members()) {
    if (m.mate_of_a(a) < 0) roots.push_back(a);
  }
  const auto forest = build_hungarian_forest(inst_, eq, m, roots);
  if (!check_forest_character(inst_, eq, m, forest, nodes)) {
    throw Error(ErrorKind::kInvariantViolation,
                "equality edge leaves the Hungarian forest");
  }
}

}  // namespace gsm
