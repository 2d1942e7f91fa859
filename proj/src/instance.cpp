#include "gsm/instance.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "gsm/error.hpp"

namespace gsm {

Instance::Instance(int a_count, int b_count, std::vector<Edge> edges)
    : a_count_(a_count),
      b_count_(b_count),
      edges_(std::move(edges)),
      adj_a_(static_cast<std::size_t>(std::max(a_count, 0))),
      adj_b_(static_cast<std::size_t>(std::max(b_count, 0))) {
  if (a_count < 1 || b_count < 1) {
    throw std::invalid_argument("both sides need at least one node");
  }
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (e.a < 0 || e.a >= a_count || e.b < 0 || e.b >= b_count) {
      throw std::invalid_argument("edge " + std::to_string(id) +
                                  " has an endpoint out of range");
    }
    adj_a_[static_cast<std::size_t>(e.a)].push_back(static_cast<int>(id));
    adj_b_[static_cast<std::size_t>(e.b)].push_back(static_cast<int>(id));
  }
  auto by_b = [this](int x, int y) { return edge(x).b < edge(y).b; };
  auto by_a = [this](int x, int y) { return edge(x).a < edge(y).a; };
  for (auto& list : adj_a_) {
    std::sort(list.begin(), list.end(), by_b);
    for (std::size_t k = 1; k < list.size(); ++k) {
      if (edge(list[k]).b == edge(list[k - 1]).b) {
        throw std::invalid_argument(
            "duplicate edge (" + node_label(NodeId::a(edge(list[k]).a)) +
            ", " + node_label(NodeId::b(edge(list[k]).b)) + ")");
      }
    }
  }
  for (auto& list : adj_b_) std::sort(list.begin(), list.end(), by_a);
}

std::span<const int> Instance::incident(NodeId n) const {
  const auto& list = n.is_a() ? adj_a_[static_cast<std::size_t>(n.index)]
                              : adj_b_[static_cast<std::size_t>(n.index)];
  return {list.data(), list.size()};
}

std::optional<int> Instance::find_edge(int a, int b) const {
  if (a < 0 || a >= a_count_ || b < 0 || b >= b_count_) return std::nullopt;
  const auto& list = adj_a_[static_cast<std::size_t>(a)];
  const auto it = std::lower_bound(
      list.begin(), list.end(), b,
      [this](int id, int target) { return edge(id).b < target; });
  if (it != list.end() && edge(*it).b == b) return *it;
  return std::nullopt;
}

NodeId other_end(const Instance& inst, int edge, NodeId from) {
  const Edge& e = inst.edge(edge);
  return from.is_a() ? NodeId::b(e.b) : NodeId::a(e.a);
}

OfferProfile make_profile(const Instance& inst, double init) {
  return OfferProfile(inst.a_count(), inst.b_count(), init);
}

void Matching::add(int a, int b) {
  if (mate_of_a(a) >= 0 || mate_of_b(b) >= 0) {
    throw std::logic_error("matching edge shares a node");
  }
  mate_a_[static_cast<std::size_t>(a)] = b;
  mate_b_[static_cast<std::size_t>(b)] = a;
}

void Matching::remove(int a, int b) {
  if (!contains(a, b)) throw std::logic_error("edge not in matching");
  mate_a_[static_cast<std::size_t>(a)] = -1;
  mate_b_[static_cast<std::size_t>(b)] = -1;
}

int Matching::size() const {
  return static_cast<int>(
      std::count_if(mate_a_.begin(), mate_a_.end(), [](int m) { return m >= 0; }));
}

std::vector<std::pair<int, int>> Matching::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t a = 0; a < mate_a_.size(); ++a) {
    if (mate_a_[a] >= 0) out.emplace_back(static_cast<int>(a), mate_a_[a]);
  }
  return out;
}

double split_for_offer(const Instance& inst, int edge, Side side, double offer,
                       double eps_inv) {
  return invert_payoff(inst.edge(edge).payoff(side), offer, eps_inv);
}

double pareto_payoff(const Instance& inst, int edge, Side receiver,
                     double partner_payoff, double eps_inv) {
  const Edge& e = inst.edge(edge);
  const double partner_split =
      invert_payoff(e.payoff(other(receiver)), partner_payoff, eps_inv);
  return e.payoff(receiver)(e.weight - partner_split);
}

double pareto_payoff(const Instance& inst, std::pair<int, int> edge,
                     NodeId receiver, double partner_payoff, double eps_inv) {
  const auto id = inst.find_edge(edge.first, edge.second);
  if (!id) throw std::invalid_argument("no such edge");
  const int own = receiver.is_a() ? edge.first : edge.second;
  if (own != receiver.index) {
    throw std::invalid_argument("receiver is not an endpoint of the edge");
  }
  return pareto_payoff(inst, *id, receiver.side, partner_payoff, eps_inv);
}

double edge_slack(const Instance& inst, int edge, double offer_a,
                  double offer_b, double eps_inv) {
  const Edge& e = inst.edge(edge);
  return invert_payoff(e.payoff_a, offer_a, eps_inv) +
         invert_payoff(e.payoff_b, offer_b, eps_inv) - e.weight;
}

double edge_slack(const Instance& inst, int edge, const OfferProfile& offers,
                  double eps_inv) {
  const Edge& e = inst.edge(edge);
  return edge_slack(inst, edge, offers[NodeId::a(e.a)], offers[NodeId::b(e.b)],
                    eps_inv);
}

double split_scale(double s0, double s1) {
  double m = 1.0;
  if (std::isfinite(s0)) m = std::max(m, std::abs(s0));
  if (std::isfinite(s1)) m = std::max(m, std::abs(s1));
  return m;
}

double relative_slack(const Instance& inst, int edge, const OfferProfile& offers,
                      double eps_inv) {
  const Edge& e = inst.edge(edge);
  const double sa = invert_payoff(e.payoff_a, offers[NodeId::a(e.a)], eps_inv);
  const double sb = invert_payoff(e.payoff_b, offers[NodeId::b(e.b)], eps_inv);
  return (sa + sb - e.weight) / split_scale(sa, sb);
}

bool is_zero_offer(const Instance& inst, NodeId n, double offer, double eps,
                   double eps_inv) {
  if (offer <= 0.0) return true;
  for (int id : inst.incident(n)) {
    if (split_for_offer(inst, id, n.side, offer, eps_inv) > eps) return false;
  }
  return true;
}

bool is_connected(const Instance& inst, const NodeSet& nodes) {
  const auto members = nodes.members();
  if (members.empty()) return true;
  NodeSet seen(inst.a_count(), inst.b_count());
  std::deque<NodeId> queue{members.front()};
  seen.insert(members.front());
  while (!queue.empty()) {
    const NodeId n = queue.front();
    queue.pop_front();
    for (int id : inst.incident(n)) {
      const NodeId m = other_end(inst, id, n);
      if (nodes.contains(m) && !seen.contains(m)) {
        seen.insert(m);
        queue.push_back(m);
      }
    }
  }
  return seen.size() == nodes.size();
}

namespace {

// Split grid used for the sampled monotonicity and round-trip checks. Dense
// around 0 and around every piecewise breakpoint.
std::vector<double> sample_splits(const PayoffFn& fn) {
  std::vector<double> grid;
  for (int k = -40; k <= 240; ++k) grid.push_back(0.05 * k);
  for (double b : fn.breakpoints()) {
    for (double d : {-1e-3, -1e-6, 0.0, 1e-6, 1e-3}) grid.push_back(b + d);
  }
  for (double d : {-1e-6, -1e-9, 1e-9, 1e-6}) grid.push_back(d);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

ValidationReport validate_instance(const Instance& inst, double eps_inv) {
  ValidationReport report;
  if (!is_connected(inst, inst.all_nodes())) {
    report.errors.push_back("graph not connected");
  }
  for (std::size_t id = 0; id < inst.edges().size(); ++id) {
    const Edge& e = inst.edges()[id];
    const std::string where = "edge (" + node_label(NodeId::a(e.a)) + ", " +
                              node_label(NodeId::b(e.b)) + ")";
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      report.errors.push_back(where + ": weight must be finite and >= 0");
    }
    for (Side side : {Side::A, Side::B}) {
      const PayoffFn& fn = e.payoff(side);
      const std::string owner =
          where + " payoff of " +
          node_label(side == Side::A ? NodeId::a(e.a) : NodeId::b(e.b));
      for (const auto& p : fn.problems()) report.errors.push_back(owner + ": " + p);
      if (fn(0.0) != 0.0) {
        report.errors.push_back(owner + ": not normalized, u(0) != 0");
      }
      const auto grid = sample_splits(fn);
      bool increasing = true;
      double prev = fn(grid.front());
      for (std::size_t k = 1; k < grid.size(); ++k) {
        const double cur = fn(grid[k]);
        if (!(cur > prev)) increasing = false;
        prev = cur;
      }
      if (!increasing) {
        report.errors.push_back(owner + ": not strictly increasing on sampled grid");
        continue;  // round trips are meaningless for a non-injective function
      }
      for (double s : grid) {
        const double v = fn(s);
        try {
          const double back = fn(invert_payoff(fn, v, eps_inv));
          const double err = std::abs(back - v) / std::max(1.0, std::abs(v));
          report.max_inversion_error = std::max(report.max_inversion_error, err);
          if (!(err <= eps_inv)) {
            report.errors.push_back(owner + ": inversion round-trip error " +
                                    std::to_string(err));
            break;
          }
        } catch (const Error& ex) {
          report.errors.push_back(owner + ": " + ex.what());
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace gsm
