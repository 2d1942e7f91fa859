#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gsm/instance.hpp"

using namespace gsm;

namespace {

Instance single_edge(double w, PayoffFn ua = {}, PayoffFn ub = {}) {
  return Instance(1, 1, {{0, 0, w, ua, ub}});
}

Instance worked() {
  return Instance(2, 2, {{0, 0, 5.0, {}, {}},
                         {0, 1, 3.0, {}, {}},
                         {1, 0, 4.0, {}, {}},
                         {1, 1, 1.0, {}, {}}});
}

}  // namespace

TEST_CASE("pareto_payoff on the documented examples") {
  const auto lin = single_edge(1.0);
  CHECK(pareto_payoff(lin, 0, Side::B, 0.3) == doctest::Approx(0.7));

  // Receiver b has sqrt, partner a is linear.
  const auto sq_b = single_edge(1.0, {}, PayoffFn::power(0.5));
  CHECK(pareto_payoff(sq_b, 0, Side::B, 0.0) == doctest::Approx(1.0));

  // Partner a has sqrt, receiver b is linear.
  const auto sq_a = single_edge(1.0, PayoffFn::power(0.5), {});
  CHECK(pareto_payoff(sq_a, 0, Side::B, 0.5) == doctest::Approx(0.75));
}

TEST_CASE("pareto_payoff is a decreasing involution") {
  const Instance inst(1, 1, {{0, 0, 2.5, PayoffFn::log1p(1.4),
                              PayoffFn::piecewise_linear({0.5}, {1.0, 3.0})}});
  double prev = std::numeric_limits<double>::infinity();
  for (double x = -4.0; x <= 4.0; x += 0.25) {
    const double y = pareto_payoff(inst, 0, Side::B, x);
    CHECK(y < prev);
    prev = y;
    CHECK(pareto_payoff(inst, 0, Side::A, y) == doctest::Approx(x).epsilon(1e-9));
  }
}

TEST_CASE("edge_slack and relative_slack") {
  const auto inst = worked();
  OfferProfile o = make_profile(inst);
  o.a = {3, 2};
  o.b = {2, 0};
  CHECK(edge_slack(inst, 0, o) == doctest::Approx(0.0));  // 3 + 2 - 5
  CHECK(edge_slack(inst, 3, o) == doctest::Approx(1.0));  // 2 + 0 - 1
  CHECK(relative_slack(inst, 3, o) == doctest::Approx(0.5));
  CHECK(split_scale(0.5, -0.25) == 1.0);
  CHECK(split_scale(-8.0, 3.0) == 8.0);
  CHECK(split_scale(std::numeric_limits<double>::infinity(), 4.0) == 4.0);
}

TEST_CASE("split_for_offer inverts the endpoint's payoff") {
  const Instance inst(1, 1, {{0, 0, 1.0, PayoffFn::power(0.5), {}}});
  CHECK(split_for_offer(inst, 0, Side::A, 0.5) == doctest::Approx(0.25));
  CHECK(split_for_offer(inst, 0, Side::B, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("validate_instance") {
  SUBCASE("connected linear instance is fine") {
    const auto report = validate_instance(worked());
    CHECK(report.ok());
  }
  SUBCASE("disconnected node") {
    const Instance inst(2, 2, {{0, 0, 1.0, {}, {}}, {1, 0, 1.0, {}, {}}});
    const auto report = validate_instance(inst);
    REQUIRE_FALSE(report.ok());
    CHECK(report.errors.front() == "graph not connected");
  }
  SUBCASE("flat piecewise segment") {
    const Instance inst(1, 1, {{0, 0, 1.0,
                                PayoffFn::piecewise_linear({1.0}, {1.0, 0.0}),
                                {}}});
    const auto report = validate_instance(inst);
    REQUIRE_FALSE(report.ok());
    CHECK(report.errors.front().find("not strictly increasing") != std::string::npos);
  }
  SUBCASE("negative weight") {
    const auto report = validate_instance(single_edge(-1.0));
    CHECK_FALSE(report.ok());
  }
}

TEST_CASE("instance construction rejects bad structure") {
  CHECK_THROWS_AS(Instance(0, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(1, 1, {{0, 1, 1.0, {}, {}}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(1, 1, {{0, 0, 1.0, {}, {}}, {0, 0, 2.0, {}, {}}}),
                  std::invalid_argument);
}

TEST_CASE("incident edges and lookups") {
  const auto inst = worked();
  const auto inc = inst.incident(NodeId::b(0));
  REQUIRE(inc.size() == 2);
  CHECK(inst.edge(inc[0]).a == 0);
  CHECK(inst.edge(inc[1]).a == 1);
  CHECK(inst.find_edge(1, 1).value() == 3);
  CHECK_FALSE(Instance(2, 1, {{0, 0, 1.0, {}, {}}, {1, 0, 1.0, {}, {}}})
                  .find_edge(1, 1)
                  .has_value());
  CHECK(other_end(inst, 2, NodeId::a(1)) == NodeId::b(0));
  CHECK(is_connected(inst, inst.all_nodes()));
}

TEST_CASE("matching bookkeeping") {
  Matching m(2, 2);
  m.add(0, 1);
  m.add(1, 0);
  CHECK(m.size() == 2);
  CHECK(m.mate(NodeId::b(1)) == 0);
  CHECK(m.contains(1, 0));
  m.remove(0, 1);
  CHECK_FALSE(m.is_matched(NodeId::a(0)));
  CHECK(m.pairs() == std::vector<std::pair<int, int>>{{1, 0}});
}

TEST_CASE("zero offers") {
  const auto inst = single_edge(1.0);
  CHECK(is_zero_offer(inst, NodeId::a(0), 0.0, 1e-8));
  CHECK(is_zero_offer(inst, NodeId::a(0), 1e-9, 1e-8));
  CHECK_FALSE(is_zero_offer(inst, NodeId::a(0), 0.1, 1e-8));
}

TEST_CASE("node labels are 1-based") {
  CHECK(node_label(NodeId::a(0)) == "a1");
  CHECK(node_label(NodeId::b(2)) == "b3");
}
