#include <doctest.h>

#include "gsm/error.hpp"
#include "gsm/generate.hpp"
#include "gsm/matching.hpp"

using namespace gsm;

namespace {

Instance worked() {
  return Instance(2, 2, {{0, 0, 5.0, {}, {}},
                         {0, 1, 3.0, {}, {}},
                         {1, 0, 4.0, {}, {}},
                         {1, 1, 1.0, {}, {}}});
}

OfferProfile offers(const Instance& inst, std::vector<double> a,
                    std::vector<double> b) {
  OfferProfile o = make_profile(inst);
  o.a = std::move(a);
  o.b = std::move(b);
  return o;
}

// Edge ids whose endpoints are given, as an equality subgraph.
EqualitySubgraph subgraph(const Instance& inst,
                          std::vector<std::pair<int, int>> pairs) {
  EqualitySubgraph eq;
  eq.member.assign(inst.edges().size(), 0);
  for (auto [a, b] : pairs) {
    const int id = *inst.find_edge(a, b);
    eq.member[static_cast<std::size_t>(id)] = 1;
  }
  for (int id = 0; id < static_cast<int>(inst.edges().size()); ++id) {
    if (eq.contains(id)) eq.edges.push_back(id);
  }
  return eq;
}

int brute_max_matching(const Instance& inst, const EqualitySubgraph& eq,
                       int a, std::vector<char>& used_b) {
  if (a == inst.a_count()) return 0;
  int best = brute_max_matching(inst, eq, a + 1, used_b);
  for (int id : inst.incident(NodeId::a(a))) {
    const int b = inst.edge(id).b;
    if (!eq.contains(id) || used_b[static_cast<std::size_t>(b)]) continue;
    used_b[static_cast<std::size_t>(b)] = 1;
    best = std::max(best, 1 + brute_max_matching(inst, eq, a + 1, used_b));
    used_b[static_cast<std::size_t>(b)] = 0;
  }
  return best;
}

}  // namespace

TEST_CASE("build_equality_subgraph on the worked instance") {
  const auto inst = worked();
  auto eq = build_equality_subgraph(inst, offers(inst, {5, 4}, {0, 0}), 1e-8);
  CHECK(eq.edges == std::vector<int>{0, 2});

  eq = build_equality_subgraph(inst, offers(inst, {3, 2}, {2, 0}), 1e-8);
  CHECK(eq.edges == std::vector<int>{0, 1, 2});

  eq = build_equality_subgraph(inst, offers(inst, {9, 9}, {9, 9}), 1e-8);
  CHECK(eq.size() == 0);
}

TEST_CASE("maximum_matching") {
  const auto inst = worked();
  CHECK(maximum_matching(inst, subgraph(inst, {})).size() == 0);
  CHECK(maximum_matching(inst, subgraph(inst, {{0, 0}, {1, 0}})).size() == 1);
  const auto m = maximum_matching(inst, subgraph(inst, {{0, 0}, {0, 1}, {1, 0}}));
  CHECK(m.size() == 2);
  CHECK(m.contains(0, 1));
  CHECK(m.contains(1, 0));
}

TEST_CASE("maximum_matching matches brute force on random subgraphs") {
  std::mt19937_64 rng(42);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto inst = generate_instance(seed, 1 + static_cast<int>(seed % 6),
                                        1 + static_cast<int>(seed % 5), 0.7,
                                        PayoffFamily::kLinear);
    EqualitySubgraph eq;
    eq.member.assign(inst.edges().size(), 0);
    for (int id = 0; id < static_cast<int>(inst.edges().size()); ++id) {
      if (uniform01(rng) < 0.6) {
        eq.member[static_cast<std::size_t>(id)] = 1;
        eq.edges.push_back(id);
      }
    }
    std::vector<char> used(static_cast<std::size_t>(inst.b_count()), 0);
    CAPTURE(seed);
    CHECK(maximum_matching(inst, eq).size() == brute_max_matching(inst, eq, 0, used));
  }
}

TEST_CASE("augment_along") {
  const auto inst = worked();
  Matching m(inst);
  m.add(0, 0);
  const Path p{{NodeId::a(1), NodeId::b(0), NodeId::a(0), NodeId::b(1)}};
  const auto out = augment_along(m, p);
  CHECK(out.size() == 2);
  CHECK(out.contains(1, 0));
  CHECK(out.contains(0, 1));

  CHECK(augment_along(m, Path{}) == m);

  // Even-length alternating path ending at a matched A node keeps the size.
  const Path alt{{NodeId::a(1), NodeId::b(0), NodeId::a(0)}};
  const auto swapped = augment_along(m, alt);
  CHECK(swapped.size() == 1);
  CHECK(swapped.contains(1, 0));

  const Path bad{{NodeId::a(0), NodeId::b(0)}};
  CHECK_THROWS_WITH_AS(augment_along(m, bad), doctest::Contains("NotAlternating"),
                       Error);
}

TEST_CASE("grow_alternating_tree") {
  const auto inst = worked();
  const auto eq = subgraph(inst, {{0, 0}, {1, 0}});
  Matching m(inst);
  m.add(0, 0);
  const auto tree = grow_alternating_tree(inst, eq, m, 1);
  CHECK(tree.order == std::vector<NodeId>{NodeId::a(1), NodeId::b(0), NodeId::a(0)});
  CHECK(tree.a_nodes().size() == tree.b_nodes().size() + 1);
  CHECK(tree.depth[NodeId::a(0)] == 2);
  CHECK(tree.path_from_root(NodeId::a(0)).nodes.size() == 3);

  const auto lone = grow_alternating_tree(inst, subgraph(inst, {}), Matching(inst), 1);
  CHECK(lone.size() == 1);

  CHECK_THROWS_WITH_AS(grow_alternating_tree(inst, eq, m, 0),
                       doctest::Contains("RootMatched"), Error);
}

TEST_CASE("expanding and joining nodes of the worked tree") {
  const auto inst = worked();
  const auto o = offers(inst, {5, 4}, {0, 0});
  const auto eq = build_equality_subgraph(inst, o, 1e-8);
  Matching m(inst);
  m.add(0, 0);
  const auto tree = grow_alternating_tree(inst, eq, m, 1);
  const auto eo = expanding_nodes(inst, tree, o);
  REQUIRE(eo.size() == 2);
  CHECK(eo.at(0) == doctest::Approx(3.0));
  CHECK(eo.at(1) == doctest::Approx(1.0));
  CHECK(joining_nodes(inst, tree) == std::vector<int>{1});

  // A tree over every node has nothing outside.
  const Instance st(2, 1, {{0, 0, 2.0, {}, {}}, {1, 0, 1.0, {}, {}}});
  OfferProfile so = make_profile(st);
  so.a = {0.5, -0.5};
  so.b = {1.5};
  Matching sm(st);
  sm.add(1, 0);
  const auto full = grow_alternating_tree(st, build_equality_subgraph(st, so, 1e-8), sm, 0);
  CHECK(full.size() == 3);
  CHECK(expanding_nodes(st, full, so).empty());
  CHECK(joining_nodes(st, full).empty());
}

TEST_CASE("find_augmenting_path prefers the shortest route") {
  const auto inst = worked();
  const auto eq = subgraph(inst, {{0, 0}, {0, 1}, {1, 0}});
  Matching m(inst);
  m.add(0, 0);
  const auto p = find_augmenting_path(inst, eq, m, 1);
  REQUIRE(p.has_value());
  CHECK(p->nodes == std::vector<NodeId>{NodeId::a(1), NodeId::b(0), NodeId::a(0),
                                        NodeId::b(1)});
  CHECK_FALSE(find_augmenting_path(inst, subgraph(inst, {{0, 0}, {1, 0}}), m, 1));
}

TEST_CASE("check_spanning_tree_profile") {
  const Instance st(2, 1, {{0, 0, 2.0, {}, {}}, {1, 0, 1.0, {}, {}}});
  for (double x : {-1.0, 0.5, 1.7}) {
    OfferProfile o = make_profile(st);
    o.a = {x, x - 1.0};
    o.b = {2.0 - x};
    CHECK(check_spanning_tree_profile(st, o, 1e-8));
  }
  OfferProfile unstable = make_profile(st);
  unstable.a = {0.5, -0.5};
  unstable.b = {1.0};
  CHECK_FALSE(check_spanning_tree_profile(st, unstable, 1e-8));

  // Stable but a2's edge is slack, so EQ does not reach it.
  OfferProfile split = make_profile(st);
  split.a = {0.5, 0.0};
  split.b = {1.5};
  CHECK_FALSE(check_spanning_tree_profile(st, split, 1e-8));

  CHECK_THROWS_WITH_AS(check_spanning_tree_profile(worked(), make_profile(worked()), 1e-8),
                       doctest::Contains("SideSizeMismatch"), Error);
}

TEST_CASE("hungarian forest trees are disjoint and closed") {
  const auto inst = worked();
  const auto o = offers(inst, {5, 4}, {0, 0});
  const auto eq = build_equality_subgraph(inst, o, 1e-8);
  Matching m(inst);
  m.add(0, 0);
  const auto forest = build_hungarian_forest(inst, eq, m, {1});
  REQUIRE(forest.trees.size() == 1);
  CHECK(forest.members.size() == 3);
  CHECK(check_forest_character(inst, eq, m, forest, inst.all_nodes()));
}
