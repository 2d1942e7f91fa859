#include <doctest.h>

#include <limits>
#include <random>

#include "gsm/error.hpp"
#include "gsm/generate.hpp"
#include "gsm/matching.hpp"
#include "gsm/paths.hpp"

using namespace gsm;

namespace {

Instance worked() {
  return Instance(2, 2, {{0, 0, 5.0, {}, {}},
                         {0, 1, 3.0, {}, {}},
                         {1, 0, 4.0, {}, {}},
                         {1, 1, 1.0, {}, {}}});
}

// a1 - b1 - a2 with weights 2 and 1.
Instance star() {
  return Instance(2, 1, {{0, 0, 2.0, {}, {}}, {1, 0, 1.0, {}, {}}});
}

Path path(std::initializer_list<NodeId> nodes) { return Path{nodes}; }

}  // namespace

TEST_CASE("enumerate_simple_paths") {
  const Instance one(1, 1, {{0, 0, 1.0, {}, {}}});
  CHECK(enumerate_simple_paths(one, NodeId::a(0), NodeId::b(0)) ==
        std::vector<Path>{path({NodeId::a(0), NodeId::b(0)})});

  CHECK(enumerate_simple_paths(star(), NodeId::a(0), NodeId::a(1)) ==
        std::vector<Path>{path({NodeId::a(0), NodeId::b(0), NodeId::a(1)})});

  const auto paths = enumerate_simple_paths(worked(), NodeId::a(0), NodeId::a(1));
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].nodes[1] == NodeId::b(0));
  CHECK(paths[1].nodes[1] == NodeId::b(1));
  for (const auto& p : paths) CHECK(is_simple_path(worked(), p));
}

TEST_CASE("enumeration cap") {
  const auto inst = generate_instance(3, 6, 6, 1.0, PayoffFamily::kLinear);
  CHECK_THROWS_WITH_AS(enumerate_simple_paths(inst, NodeId::a(0), NodeId::a(1), 10),
                       doctest::Contains("InstanceTooLarge"), Error);
}

TEST_CASE("path_induced_offer") {
  const Instance one(1, 1, {{0, 0, 1.0, {}, {}}});
  CHECK(path_induced_offer(one, path({NodeId::a(0), NodeId::b(0)}), 0.4) ==
        doctest::Approx(0.6));

  const auto p = path({NodeId::a(0), NodeId::b(0), NodeId::a(1)});
  CHECK(path_induced_offer(star(), p, 0.5) == doctest::Approx(-0.5));

  const Instance sq(2, 1, {{0, 0, 1.0, {}, PayoffFn::power(0.5)},
                           {1, 0, 1.0, {}, {}}});
  CHECK(path_induced_offer(sq, p, 0.75) == doctest::Approx(0.5));
}

TEST_CASE("path_induced_offer is monotone in x") {
  const auto inst = generate_instance(11, 3, 3, 1.0, PayoffFamily::kMixed);
  for (const auto& p : enumerate_simple_paths(inst, NodeId::a(0), NodeId::a(2))) {
    const Path to_b{{p.nodes.begin(), p.nodes.end() - 1}};
    double prev_a = -std::numeric_limits<double>::infinity();
    double prev_b = std::numeric_limits<double>::infinity();
    for (double x = -1.0; x <= 3.0; x += 0.5) {
      const double oa = path_induced_offer(inst, p, x);
      const double ob = path_induced_offer(inst, to_b, x);
      CHECK(oa > prev_a);
      CHECK(ob < prev_b);
      prev_a = oa;
      prev_b = ob;
    }
  }
}

TEST_CASE("max_offer_profile on the documented examples") {
  const Instance one(1, 1, {{0, 0, 1.0, {}, {}}});
  auto o = max_offer_profile(one, 0, 1.0).offers;
  CHECK(o.a[0] == 1.0);
  CHECK(o.b[0] == doctest::Approx(0.0));

  o = max_offer_profile(worked(), 0, 3.0).offers;
  CHECK(o.a[0] == 3.0);
  CHECK(o.a[1] == doctest::Approx(2.0));
  CHECK(o.b[0] == doctest::Approx(2.0));
  CHECK(o.b[1] == doctest::Approx(0.0));

  o = max_offer_profile(star(), 0, 0.5).offers;
  CHECK(o.a[1] == doctest::Approx(-0.5));
  CHECK(o.b[0] == doctest::Approx(1.5));
}

TEST_CASE("max_offer_profile is stable and every B node is tight somewhere") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto family = seed % 2 == 0 ? PayoffFamily::kLinear : PayoffFamily::kMixed;
    const auto inst = generate_instance(seed, 3, 3, 0.8, family);
    const auto mop = max_offer_profile(inst, 0, 1.0);
    CAPTURE(seed);
    CHECK(min_slack(inst, mop.offers, inst.all_nodes()) >= -1e-8);
    const auto eq = build_equality_subgraph(inst, mop.offers, 1e-8);
    for (int b = 0; b < inst.b_count(); ++b) {
      bool tight = false;
      for (int id : inst.incident(NodeId::b(b))) tight = tight || eq.contains(id);
      CHECK(tight);
    }
    // The root reaches at least its own neighbourhood.
    for (int id : inst.incident(NodeId::a(0))) {
      const NodeId b = other_end(inst, id, NodeId::a(0));
      if (mop.offers[b] == pareto_payoff(inst, id, Side::B, 1.0)) CHECK(eq.contains(id));
    }
  }
}

TEST_CASE("max offers match an exhaustive path search") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = generate_instance(seed, 4, 3, 0.9, PayoffFamily::kLinear);
    const auto mop = max_offer_profile(inst, 0, 0.5);
    CAPTURE(seed);
    for (int a = 1; a < inst.a_count(); ++a) {
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& p : enumerate_simple_paths(inst, NodeId::a(0), NodeId::a(a))) {
        best = std::max(best, path_induced_offer(inst, p, 0.5));
      }
      CHECK(mop.offers.a[a] == doctest::Approx(best));
      const Path& p = mop.best_paths[static_cast<std::size_t>(a)];
      CHECK(path_induced_offer(inst, p, 0.5) == doctest::Approx(best));
      // Prefixes never beat the intermediate maximum. They need not attain
      // it: the best path to an earlier node may run through a later one.
      for (std::size_t k = 2; k + 1 < p.nodes.size(); k += 2) {
        const Path prefix{{p.nodes.begin(), p.nodes.begin() + static_cast<long>(k) + 1}};
        CHECK(path_induced_offer(inst, prefix, 0.5) <=
              mop.offers[p.nodes[k]] + 1e-9);
      }
    }
  }
}
