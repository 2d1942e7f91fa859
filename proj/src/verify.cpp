#include "gsm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gsm/error.hpp"

namespace gsm {

namespace {

constexpr int kCoreOracleSideLimit = 10;

std::string edge_name(const Instance& inst, int id) {
  const Edge& e = inst.edge(id);
  return "(" + node_label(NodeId::a(e.a)) + ", " + node_label(NodeId::b(e.b)) +
         ")";
}

double current_payoff(const Instance& inst,
                      const StableWeightedMatching& result, NodeId n) {
  const int mate = result.matching.mate(n);
  if (mate < 0) return 0.0;
  const int id = *(n.is_a() ? inst.find_edge(n.index, mate)
                            : inst.find_edge(mate, n.index));
  return inst.edge(id).payoff(n.side)(result.splits[n]);
}

}  // namespace

VerificationReport verify(const Instance& inst,
                          const StableWeightedMatching& result, double eps,
                          double eps_inv) {
  VerificationReport report;
  auto infeasible = [&](std::string why) {
    report.feasible = false;
    report.feasibility_errors.push_back(std::move(why));
  };
  try {
    for (std::size_t id = 0; id < inst.edges().size(); ++id) {
      const double slack =
          edge_slack(inst, static_cast<int>(id), result.profile, eps_inv);
      if (!(slack >= -eps)) {
        report.violations.push_back({static_cast<int>(id), -slack});
      }
    }
  } catch (const std::exception& ex) {
    report.violations.push_back({-1, std::numeric_limits<double>::infinity()});
    infeasible(std::string("offer inversion failed: ") + ex.what());
  }
  report.stable = report.violations.empty();

  for (auto [a, b] : result.matching.pairs()) {
    const auto id = inst.find_edge(a, b);
    const std::string where =
        "(" + node_label(NodeId::a(a)) + ", " + node_label(NodeId::b(b)) + ")";
    if (!id) {
      infeasible("matched pair " + where + " is not an edge");
      continue;
    }
    const double sa = result.splits.a[static_cast<std::size_t>(a)];
    const double sb = result.splits.b[static_cast<std::size_t>(b)];
    if (!(std::abs(sa + sb - inst.edge(*id).weight) <= eps)) {
      infeasible("splits on " + where + " do not sum to the weight");
    }
  }
  for (NodeId n : inst.all_nodes().members()) {
    const double s = result.splits[n];
    const double o = result.profile[n];
    const int mate = result.matching.mate(n);
    if (mate < 0) {
      if (!(std::abs(s) <= eps) || !(std::abs(o) <= eps)) {
        infeasible(node_label(n) + " is unmatched with nonzero split or offer");
      }
      continue;
    }
    if (!(s >= -eps)) infeasible(node_label(n) + " has a negative split");
    const auto id = n.is_a() ? inst.find_edge(n.index, mate)
                             : inst.find_edge(mate, n.index);
    if (!id) continue;
    try {
      const double implied = split_for_offer(inst, *id, n.side, o, eps_inv);
      if (!(std::abs(implied - s) <= eps)) {
        infeasible(node_label(n) + " split disagrees with its offer");
      }
    } catch (const std::exception& ex) {
      infeasible(node_label(n) + ": " + ex.what());
    }
  }
  return report;
}

std::vector<BlockingWitness> blocking_pair_search(
    const Instance& inst, const StableWeightedMatching& result,
    int grid_points, double eps) {
  if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
  const int g = grid_points - 1;
  std::vector<BlockingWitness> out;
  for (std::size_t id = 0; id < inst.edges().size(); ++id) {
    const Edge& e = inst.edges()[id];
    const double ua = current_payoff(inst, result, NodeId::a(e.a));
    const double ub = current_payoff(inst, result, NodeId::b(e.b));
    for (int k = 0; k <= g; ++k) {
      const double sa = e.weight * k / g;
      const double sb = e.weight - sa;
      const double ga = e.payoff_a(sa) - ua;
      const double gb = e.payoff_b(sb) - ub;
      if (ga > eps && gb > eps) {
        out.push_back({static_cast<int>(id), sa, sb, ga, gb});
        break;
      }
    }
  }
  return out;
}

double matching_weight(const Instance& inst, const Matching& m) {
  double total = 0.0;
  for (auto [a, b] : m.pairs()) total += inst.edge(*inst.find_edge(a, b)).weight;
  return total;
}

LinearCoreOracle::LinearCoreOracle(const Instance& inst)
    : inst_(inst), current_(inst), best_(inst) {
  for (const Edge& e : inst.edges()) {
    if (!e.payoff_a.is_linear_identity() || !e.payoff_b.is_linear_identity()) {
      throw Error(ErrorKind::kNotLinear,
                  "edge " + node_label(NodeId::a(e.a)) + "-" +
                      node_label(NodeId::b(e.b)) + " has a nonlinear payoff");
    }
  }
  if (inst.a_count() > kCoreOracleSideLimit ||
      inst.b_count() > kCoreOracleSideLimit) {
    throw Error(ErrorKind::kInstanceTooLarge,
                "core oracle handles at most 10 nodes per side");
  }
  best_rest_.assign(static_cast<std::size_t>(inst.a_count()) + 1, 0.0);
  for (int a = inst.a_count() - 1; a >= 0; --a) {
    double top = 0.0;
    for (int id : inst.incident(NodeId::a(a))) top = std::max(top, inst.edge(id).weight);
    best_rest_[static_cast<std::size_t>(a)] =
        best_rest_[static_cast<std::size_t>(a) + 1] + top;
  }
  max_weight_ = -1.0;
  search(0, 0.0, best_rest_[0]);
  max_weight_ = matching_weight(inst_, best_);
}

void LinearCoreOracle::search(int a, double weight, double bound) {
  if (bound <= max_weight_) return;
  if (a == inst_.a_count()) {
    if (weight > max_weight_) {
      max_weight_ = weight;
      best_ = current_;
    }
    return;
  }
  const double rest = best_rest_[static_cast<std::size_t>(a) + 1];
  for (int id : inst_.incident(NodeId::a(a))) {
    const Edge& e = inst_.edge(id);
    if (current_.mate_of_b(e.b) >= 0) continue;
    current_.add(a, e.b);
    search(a + 1, weight + e.weight, weight + e.weight + rest);
    current_.remove(a, e.b);
  }
  search(a + 1, weight, weight + rest);
}

CoreCheck LinearCoreOracle::check(const Matching& m, const OfferProfile& offers,
                                  double tol) const {
  CoreCheck c;
  auto fail = [&](std::string why) {
    c.ok = false;
    c.problems.push_back(std::move(why));
  };
  for (auto [a, b] : m.pairs()) {
    if (!inst_.find_edge(a, b)) {
      fail("matched pair is not an edge");
      return c;
    }
  }
  const double w = matching_weight(inst_, m);
  if (w != max_weight_) {
    fail("matching weight " + std::to_string(w) + " below maximum " +
         std::to_string(max_weight_));
  }
  for (std::size_t id = 0; id < inst_.edges().size(); ++id) {
    const Edge& e = inst_.edges()[id];
    const double sum = offers.a[static_cast<std::size_t>(e.a)] +
                       offers.b[static_cast<std::size_t>(e.b)];
    if (sum < e.weight - tol) {
      fail("dual constraint violated on " + edge_name(inst_, static_cast<int>(id)));
    }
    if (m.contains(e.a, e.b) && std::abs(sum - e.weight) > tol) {
      fail("matched edge " + edge_name(inst_, static_cast<int>(id)) +
           " not tight");
    }
  }
  for (NodeId n : inst_.all_nodes().members()) {
    if (offers[n] < -tol) fail(node_label(n) + " has a negative offer");
    if (!m.is_matched(n) && std::abs(offers[n]) > tol) {
      fail(node_label(n) + " is unmatched with a nonzero offer");
    }
  }
  return c;
}

LinearCoreOracle linear_core_oracle(const Instance& inst) {
  return LinearCoreOracle(inst);
}

}  // namespace gsm
