#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "gsm/error.hpp"
#include "gsm/spanning.hpp"

namespace gsm {

namespace {

constexpr int kBruteForceNodeLimit = 12;

class TreeEnumerator {
 public:
  TreeEnumerator(const Instance& inst, const NodeSet& nodes, int root,
                 double x, double eps, double eps_inv)
      : inst_(inst), nodes_(nodes), root_(root), x_(x), eps_(eps),
        eps_inv_(eps_inv), bs_(nodes.b_members()) {
    for (int a : nodes.a_members()) slot_[a] = static_cast<int>(slot_.size());
    for (int b : bs_) {
      std::vector<int> nbrs;
      for (int id : inst.incident(NodeId::b(b))) {
        if (nodes.contains(NodeId::a(inst.edge(id).a))) nbrs.push_back(id);
      }
      options_.push_back(std::move(nbrs));
    }
    uf_.resize(slot_.size());
    std::iota(uf_.begin(), uf_.end(), 0);
  }

  std::optional<SpanningProfileResult> run() {
    choose(0);
    return std::move(found_);
  }

 private:
  int find(std::vector<int>& uf, int k) const {
    while (uf[static_cast<std::size_t>(k)] != k) k = uf[static_cast<std::size_t>(k)];
    return k;
  }

  // Picks the two A neighbours of B node bs_[k]. A union-find over A nodes
  // rejects choices that would close a cycle.
  void choose(std::size_t k) {
    if (found_) return;
    if (k == bs_.size()) {
      evaluate();
      return;
    }
    const auto& opts = options_[k];
    for (std::size_t p = 0; p < opts.size(); ++p) {
      for (std::size_t q = p + 1; q < opts.size(); ++q) {
        const int ra = find(uf_, slot_.at(inst_.edge(opts[p]).a));
        const int rb = find(uf_, slot_.at(inst_.edge(opts[q]).a));
        if (ra == rb) continue;
        const auto saved = uf_;
        uf_[static_cast<std::size_t>(ra)] = rb;
        chosen_.push_back(opts[p]);
        chosen_.push_back(opts[q]);
        choose(k + 1);
        chosen_.pop_back();
        chosen_.pop_back();
        uf_ = saved;
        if (found_) return;
      }
    }
  }

  void evaluate() {
    // 2|B| edges joining |A| nodes without a cycle: a spanning tree.
    SpanningProfileResult r;
    r.profile = make_profile(inst_, std::numeric_limits<double>::quiet_NaN());
    r.near_perfect_matching = Matching(inst_);
    AlternatingTree& t = r.tree;
    t.root = NodeId::a(root_);
    t.parent = NodeMap<int>(inst_.a_count(), inst_.b_count(), -1);
    t.depth = NodeMap<int>(inst_.a_count(), inst_.b_count(), -1);
    t.members = NodeSet(inst_.a_count(), inst_.b_count());
    std::deque<NodeId> queue{t.root};
    t.members.insert(t.root);
    t.depth[t.root] = 0;
    while (!queue.empty()) {
      const NodeId n = queue.front();
      queue.pop_front();
      t.order.push_back(n);
      for (int id : chosen_) {
        const Edge& e = inst_.edge(id);
        NodeId m;
        if (n.is_a() && e.a == n.index) {
          m = NodeId::b(e.b);
        } else if (n.is_b() && e.b == n.index) {
          m = NodeId::a(e.a);
        } else {
          continue;
        }
        if (t.members.contains(m)) continue;
        t.members.insert(m);
        t.parent[m] = n.index;
        t.depth[m] = t.depth[n] + 1;
        queue.push_back(m);
      }
    }
    for (NodeId n : t.order) {
      if (n.is_a() && t.parent[n] >= 0) r.near_perfect_matching.add(n.index, t.parent[n]);
    }
    r.profile[t.root] = x_;
    fold_tree_offers(inst_, t, r.profile, eps_inv_);
    if (min_slack(inst_, r.profile, nodes_, eps_inv_) >= -eps_) {
      found_ = std::move(r);
    }
  }

  const Instance& inst_;
  const NodeSet& nodes_;
  int root_;
  double x_;
  double eps_;
  double eps_inv_;
  std::vector<int> bs_;
  std::map<int, int> slot_;
  std::vector<std::vector<int>> options_;
  std::vector<int> uf_;
  std::vector<int> chosen_;
  std::optional<SpanningProfileResult> found_;
};

}  // namespace

SpanningProfileResult brute_force_spanning_profile(const Instance& inst,
                                                   const NodeSet& nodes,
                                                   int root, double x,
                                                   double eps, double eps_inv) {
  if (nodes.size() > kBruteForceNodeLimit) {
    throw Error(ErrorKind::kInstanceTooLarge,
                std::to_string(nodes.size()) + " nodes exceed the oracle limit");
  }
  if (nodes.count_a() - nodes.count_b() != 1) {
    throw Error(ErrorKind::kSideSizeMismatch,
                "|A| = " + std::to_string(nodes.count_a()) +
                    ", |B| = " + std::to_string(nodes.count_b()));
  }
  auto found = TreeEnumerator(inst, nodes, root, x, eps, eps_inv).run();
  if (!found) {
    throw Error(ErrorKind::kNoProfile, "no spanning tree gives a stable profile");
  }
  return std::move(*found);
}

SpanningProfileResult brute_force_spanning_profile(const Instance& inst,
                                                   int root, double x) {
  return brute_force_spanning_profile(inst, inst.all_nodes(), root, x);
}

}  // namespace gsm
