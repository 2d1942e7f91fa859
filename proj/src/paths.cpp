#include "gsm/paths.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gsm/error.hpp"

namespace gsm {

namespace {

void check_cap(const NodeSet& nodes, int cap) {
  if (nodes.size() > cap) {
    throw Error(ErrorKind::kInstanceTooLarge,
                std::to_string(nodes.size()) +
                    " nodes exceed the path enumeration cap of " +
                    std::to_string(cap));
  }
}

int edge_between(const Instance& inst, NodeId x, NodeId y) {
  if (x.side == y.side) return -1;
  const NodeId a = x.is_a() ? x : y;
  const NodeId b = x.is_a() ? y : x;
  return inst.find_edge(a.index, b.index).value_or(-1);
}

class PathCollector {
 public:
  PathCollector(const Instance& inst, const NodeSet& nodes, NodeId to)
      : inst_(inst), nodes_(nodes), to_(to),
        on_path_(inst.a_count(), inst.b_count()) {}

  std::vector<Path> run(NodeId from) {
    visit(from);
    return std::move(out_);
  }

 private:
  void visit(NodeId n) {
    current_.nodes.push_back(n);
    on_path_.insert(n);
    if (n == to_) {
      out_.push_back(current_);
    } else {
      for (int id : inst_.incident(n)) {
        const NodeId m = other_end(inst_, id, n);
        if (nodes_.contains(m) && !on_path_.contains(m)) visit(m);
      }
    }
    on_path_.erase(n);
    current_.nodes.pop_back();
  }

  const Instance& inst_;
  const NodeSet& nodes_;
  NodeId to_;
  NodeSet on_path_;
  Path current_;
  std::vector<Path> out_;
};

class MaxOfferSearch {
 public:
  MaxOfferSearch(const Instance& inst, const NodeSet& nodes, int root,
                 double eps_inv)
      : inst_(inst), nodes_(nodes), root_(root), eps_inv_(eps_inv),
        on_path_(inst.a_count(), inst.b_count()),
        best_(static_cast<std::size_t>(inst.a_count()),
              -std::numeric_limits<double>::infinity()),
        best_paths_(static_cast<std::size_t>(inst.a_count())) {}

  void run(double x) {
    const NodeId r = NodeId::a(root_);
    best_[static_cast<std::size_t>(root_)] = x;
    best_paths_[static_cast<std::size_t>(root_)].nodes = {r};
    visit(r, x);
  }

  const std::vector<double>& best() const { return best_; }
  std::vector<Path>& best_paths() { return best_paths_; }

 private:
  // Depth-first over simple paths in lexicographic order; only a strictly
  // larger offer replaces the incumbent, so ties keep the smaller path.
  void visit(NodeId n, double offer) {
    current_.push_back(n);
    on_path_.insert(n);
    if (n.is_a() && n.index != root_) {
      auto& incumbent = best_[static_cast<std::size_t>(n.index)];
      if (offer > incumbent) {
        incumbent = offer;
        best_paths_[static_cast<std::size_t>(n.index)].nodes = current_;
      }
    }
    for (int id : inst_.incident(n)) {
      const NodeId m = other_end(inst_, id, n);
      if (!nodes_.contains(m) || on_path_.contains(m)) continue;
      visit(m, pareto_payoff(inst_, id, m.side, offer, eps_inv_));
    }
    on_path_.erase(n);
    current_.pop_back();
  }

  const Instance& inst_;
  const NodeSet& nodes_;
  int root_;
  double eps_inv_;
  NodeSet on_path_;
  std::vector<NodeId> current_;
  std::vector<double> best_;
  std::vector<Path> best_paths_;
};

}  // namespace

bool is_simple_path(const Instance& inst, const Path& path) {
  NodeSet seen(inst.a_count(), inst.b_count());
  for (std::size_t k = 0; k < path.nodes.size(); ++k) {
    const NodeId n = path.nodes[k];
    if (n.index < 0 || n.index >= inst.side_count(n.side)) return false;
    if (seen.contains(n)) return false;
    seen.insert(n);
    if (k > 0 && edge_between(inst, path.nodes[k - 1], n) < 0) return false;
  }
  return true;
}

std::vector<Path> enumerate_simple_paths(const Instance& inst, NodeId from,
                                         NodeId to, const NodeSet& nodes,
                                         int cap) {
  if (from == to) throw std::invalid_argument("path endpoints must differ");
  check_cap(nodes, cap);
  if (!nodes.contains(from) || !nodes.contains(to)) return {};
  return PathCollector(inst, nodes, to).run(from);
}

std::vector<Path> enumerate_simple_paths(const Instance& inst, NodeId from,
                                         NodeId to, int cap) {
  return enumerate_simple_paths(inst, from, to, inst.all_nodes(), cap);
}

double path_induced_offer(const Instance& inst, const Path& path, double x,
                          double eps_inv) {
  if (path.nodes.empty()) throw std::invalid_argument("empty path");
  double offer = x;
  for (std::size_t k = 1; k < path.nodes.size(); ++k) {
    const NodeId n = path.nodes[k];
    const int id = edge_between(inst, path.nodes[k - 1], n);
    if (id < 0) throw std::invalid_argument("path uses a missing edge");
    offer = pareto_payoff(inst, id, n.side, offer, eps_inv);
  }
  return offer;
}

MaxOfferProfile max_offer_profile(const Instance& inst, int root, double x,
                                  const NodeSet& nodes, int cap,
                                  double eps_inv) {
  check_cap(nodes, cap);
  if (!nodes.contains(NodeId::a(root))) {
    throw std::invalid_argument("root is not in the node set");
  }
  MaxOfferSearch search(inst, nodes, root, eps_inv);
  search.run(x);

  MaxOfferProfile result;
  result.offers = make_profile(inst, std::numeric_limits<double>::quiet_NaN());
  for (int a : nodes.a_members()) {
    result.offers.a[static_cast<std::size_t>(a)] =
        search.best()[static_cast<std::size_t>(a)];
  }
  for (int b : nodes.b_members()) {
    double best = -std::numeric_limits<double>::infinity();
    for (int id : inst.incident(NodeId::b(b))) {
      const int a = inst.edge(id).a;
      if (!nodes.contains(NodeId::a(a))) continue;
      best = std::max(best, pareto_payoff(inst, id, Side::B,
                                          result.offers.a[static_cast<std::size_t>(a)],
                                          eps_inv));
    }
    result.offers.b[static_cast<std::size_t>(b)] = best;
  }
  result.best_paths = std::move(search.best_paths());
  return result;
}

MaxOfferProfile max_offer_profile(const Instance& inst, int root, double x,
                                  int cap) {
  return max_offer_profile(inst, root, x, inst.all_nodes(), cap);
}

}  // namespace gsm
