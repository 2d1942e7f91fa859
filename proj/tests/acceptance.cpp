// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gsm/error.hpp"
#include "gsm/generate.hpp"
#include "gsm/solver.hpp"
#include "gsm/spanning.hpp"
#include "gsm/verify.hpp"

using namespace gsm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string first_failure;
  int failed = 0;

  void fail(const std::string& why) {
    if (pass) first_failure = why;
    pass = false;
    ++failed;
  }
};

// Criteria 6 and 7 are judged over runs made for 1-3.
struct Shared {
  long steps_checked = 0;
  std::vector<std::string> step_problems;
  int cap_hits = 0;
  int max_iterations = 0;
  double worst_cap_ratio = 0.0;
};

Shared shared;

int draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Sparse draws on thin shapes (1 x n) rarely connect; fall back to complete.
Instance connected_instance(std::uint64_t seed, int na, int nb, double density,
                            PayoffFamily family) {
  try {
    return generate_instance(seed, na, nb, density, family);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kGenerationFailed) throw;
    return generate_instance(seed, na, nb, 1.0, family);
  }
}

// Solves with debug assertions and records every step transition.
StableWeightedMatching traced_solve(const Instance& inst) {
  SolverConfig config;
  config.check_invariants = true;
  std::vector<SolverState> states;
  StableWeightedMatching r;
  try {
    r = solve(inst, config, [&](const SolverState& s) { states.push_back(s); });
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIterationCapExceeded) ++shared.cap_hits;
    throw;
  }
  for (std::size_t k = 1; k < states.size(); ++k) {
    ++shared.steps_checked;
    for (auto& p : transition_problems(inst, states[k - 1], states[k],
                                       10.0 * config.eps_eq, config.eps_inv)) {
      shared.step_problems.push_back(p);
    }
  }
  shared.max_iterations = std::max(shared.max_iterations, r.iterations);
  shared.worst_cap_ratio =
      std::max(shared.worst_cap_ratio,
               static_cast<double>(r.iterations) / iteration_cap(inst, config));
  return r;
}

Outcome linear_reduction() {
  Outcome out;
  const auto t0 = Clock::now();
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    std::mt19937_64 rng(seed * 7919);
    const int na = draw(rng, 1, 6);
    const int nb = draw(rng, 1, 6);
    const double density = uniform(rng, 0.4, 1.0);
    const Instance inst =
        connected_instance(seed, na, nb, density, PayoffFamily::kLinear);
    try {
      const auto r = traced_solve(inst);
      const LinearCoreOracle oracle(inst);
      const auto check = oracle.check(r.matching, r.profile, 1e-6);
      if (!check.ok) {
        out.fail("seed " + std::to_string(seed) + ": " + check.problems.front());
      }
    } catch (const std::exception& e) {
      out.fail("seed " + std::to_string(seed) + ": " + e.what());
    }
    ++checked;
  }
  const double secs = seconds_since(t0);
  if (secs >= 60.0) out.fail("runtime " + std::to_string(secs) + " s");
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d all-linear instances, exact max weight and core duals, %.2f s",
                checked, secs);
  out.detail = buf;
  return out;
}

Outcome stability_feasibility() {
  Outcome out;
  const auto t0 = Clock::now();
  int checked = 0;
  long witnesses = 0;
  for (std::uint64_t seed = 1001; seed <= 1500; ++seed) {
    std::mt19937_64 rng(seed * 104729);
    const int na = draw(rng, 1, 5);
    const int nb = draw(rng, 1, std::min(5, 10 - na));
    const double density = uniform(rng, 0.4, 1.0);
    const Instance inst =
        connected_instance(seed, na, nb, density, PayoffFamily::kMixed);
    try {
      const auto r = traced_solve(inst);
      const auto report = verify(inst, r);
      if (!report.stable) out.fail("seed " + std::to_string(seed) + ": unstable");
      if (!report.feasible) {
        out.fail("seed " + std::to_string(seed) + ": " +
                 report.feasibility_errors.front());
      }
      const auto found = blocking_pair_search(inst, r, 1000);
      witnesses += static_cast<long>(found.size());
      if (!found.empty()) {
        out.fail("seed " + std::to_string(seed) + ": blocking split found");
      }
    } catch (const std::exception& e) {
      out.fail("seed " + std::to_string(seed) + ": " + e.what());
    }
    ++checked;
  }
  const double secs = seconds_since(t0);
  if (secs >= 300.0) out.fail("runtime " + std::to_string(secs) + " s");
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d mixed nonlinear instances verified, %ld blocking splits at "
                "grid 1000, %.2f s",
                checked, witnesses, secs);
  out.detail = buf;
  return out;
}

// Subinstance with |A| = |B| + 1, a root and sorted root offers at which a
// spanning profile exists.
struct SpanningCase {
  std::uint64_t seed;
  Instance inst;
  int root;
  std::vector<double> xs;
};

std::vector<SpanningCase> spanning_cases(int want, int offers_each,
                                         int* skipped) {
  std::vector<SpanningCase> cases;
  for (std::uint64_t seed = 5001; static_cast<int>(cases.size()) < want; ++seed) {
    std::mt19937_64 rng(seed * 15485863);
    const int nb = draw(rng, 1, 4);
    const auto family = seed % 2 == 0 ? PayoffFamily::kLinear : PayoffFamily::kMixed;
    Instance inst = connected_instance(seed, nb + 1, nb, uniform(rng, 0.5, 1.0), family);
    const int root = draw(rng, 0, nb);
    double hi = 0.0;
    for (int id : inst.incident(NodeId::a(root))) {
      hi = std::max(hi, inst.edge(id).payoff_a(inst.edge(id).weight));
    }
    std::vector<double> xs;
    for (int tries = 0; tries < 60 && static_cast<int>(xs.size()) < offers_each;
         ++tries) {
      const double x = uniform(rng, -1.0, hi);
      try {
        brute_force_spanning_profile(inst, root, x);
        xs.push_back(x);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kNoProfile) throw;
      }
    }
    if (static_cast<int>(xs.size()) < offers_each) {
      ++*skipped;
      continue;
    }
    std::sort(xs.begin(), xs.end());
    cases.push_back({seed, std::move(inst), root, std::move(xs)});
  }
  return cases;
}

Outcome uniqueness(const std::vector<SpanningCase>& cases, int skipped) {
  Outcome out;
  const auto t0 = Clock::now();
  double worst = 0.0;
  int runs = 0;
  for (const auto& c : cases) {
    SpanningProfileEngine engine(c.inst);
    for (double x : c.xs) {
      try {
        const auto main = engine.stable_spanning_profile(c.root, x);
        const auto oracle = brute_force_spanning_profile(c.inst, c.root, x);
        ++runs;
        shared.max_iterations = std::max(shared.max_iterations, main.iterations);
        for (NodeId n : c.inst.all_nodes().members()) {
          const double d = std::abs(main.profile[n] - oracle.profile[n]);
          worst = std::max(worst, d);
          if (!(d <= 1e-6)) {
            out.fail("seed " + std::to_string(c.seed) + ": " + node_label(n) +
                     " differs by " + std::to_string(d));
          }
        }
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::kIterationCapExceeded) ++shared.cap_hits;
        out.fail("seed " + std::to_string(c.seed) + ": " + e.what());
      }
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu subinstances x 5 root offers (%d runs, %d seeds without "
                "enough feasible offers skipped), max deviation %.2e, %.2f s",
                cases.size(), runs, skipped, worst, seconds_since(t0));
  out.detail = buf;
  return out;
}

Outcome monotonicity_inverse(const std::vector<SpanningCase>& cases) {
  Outcome out;
  const auto t0 = Clock::now();
  int pairs = 0;
  int round_trips = 0;
  double worst_trip = 0.0;
  double smallest_move = INFINITY;
  for (const auto& c : cases) {
    SpanningProfileEngine engine(c.inst);
    const NodeId root = NodeId::a(c.root);
    try {
      for (std::size_t k = 0; k + 1 < c.xs.size(); ++k) {
        const double x1 = c.xs[k];
        const double x2 = c.xs[k + 1];
        if (x2 - x1 < 1e-3) continue;
        ++pairs;
        const auto p1 = engine.stable_spanning_profile(c.root, x1).profile;
        const auto p2 = engine.stable_spanning_profile(c.root, x2).profile;
        for (NodeId n : c.inst.all_nodes().members()) {
          const double move = n.is_a() ? p2[n] - p1[n] : p1[n] - p2[n];
          smallest_move = std::min(smallest_move, move);
          if (!(move > 1e-9)) {
            out.fail("seed " + std::to_string(c.seed) + ": " + node_label(n) +
                     " moved by " + std::to_string(move));
          }
        }
      }
      for (double x : c.xs) {
        for (int a = 0; a < c.inst.a_count(); ++a) {
          if (a == c.root) continue;
          const NodeId other = NodeId::a(a);
          const double y = engine.offer_generating_fn(root, other, x);
          const double back = engine.offer_generating_fn(other, root, y);
          ++round_trips;
          worst_trip = std::max(worst_trip, std::abs(back - x));
          if (!(std::abs(back - x) <= 1e-8)) {
            out.fail("seed " + std::to_string(c.seed) + ": round trip off by " +
                     std::to_string(std::abs(back - x)));
          }
        }
      }
    } catch (const Error& e) {
      out.fail("seed " + std::to_string(c.seed) + ": " + e.what());
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d offer pairs (smallest move %.2e), %d inverse round trips "
                "(max error %.2e), %.2f s",
                pairs, smallest_move, round_trips, worst_trip, seconds_since(t0));
  out.detail = buf;
  return out;
}

Outcome worked_golden() {
  Outcome out;
  const Instance inst(2, 2, {{0, 0, 5.0, {}, {}},
                             {0, 1, 3.0, {}, {}},
                             {1, 0, 4.0, {}, {}},
                             {1, 1, 1.0, {}, {}}});
  const auto r = solve(inst);
  Matching expect(inst);
  expect.add(0, 1);
  expect.add(1, 0);
  if (!(r.matching == expect)) out.fail("matching differs");
  const std::vector<double> offers{r.profile.a[0], r.profile.a[1],
                                   r.profile.b[0], r.profile.b[1]};
  if (offers != std::vector<double>{3, 2, 2, 0}) out.fail("offers differ");
  const std::vector<double> splits{r.splits.a[0], r.splits.b[1], r.splits.a[1],
                                   r.splits.b[0]};
  if (splits != std::vector<double>{3, 0, 2, 2}) out.fail("splits differ");
  if (matching_weight(inst, r.matching) != 7.0) out.fail("total differs");
  if (r.iterations > 3) out.fail("too many iterations");
  out.detail = "matching {(a1,b2),(a2,b1)}, offers (3,2,2,0), splits (3,0,2,2), "
               "total 7, " + std::to_string(r.iterations) + " iteration(s)";
  return out;
}

void report(int id, const char* name, const Outcome& o, int* failures) {
  std::printf("[%s] criterion %d, %s: %s\n", o.pass ? "PASS" : "FAIL", id, name,
              o.detail.c_str());
  if (!o.pass) {
    std::printf("       %d failure(s), first: %s\n", o.failed,
                o.first_failure.c_str());
    ++*failures;
  }
  std::fflush(stdout);
}

}  // namespace

int main() {
  int failures = 0;
  const Outcome c1 = linear_reduction();
  report(1, "linear reduction", c1, &failures);
  const Outcome c2 = stability_feasibility();
  report(2, "stability and feasibility", c2, &failures);

  int skipped = 0;
  const auto cases = spanning_cases(100, 5, &skipped);
  const Outcome c3 = uniqueness(cases, skipped);
  report(3, "spanning-profile uniqueness", c3, &failures);
  const Outcome c4 = monotonicity_inverse(cases);
  report(4, "monotonicity and inverse", c4, &failures);
  report(5, "worked golden", worked_golden(), &failures);

  Outcome c6;
  for (const auto& p : shared.step_problems) c6.fail(p);
  c6.detail = std::to_string(shared.steps_checked) +
              " step transitions checked for stability, matched-B retention and "
              "offer monotonicity";
  report(6, "per-step invariants", c6, &failures);

  Outcome c7;
  if (shared.cap_hits > 0) c7.fail(std::to_string(shared.cap_hits) + " cap hits");
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "no iteration cap reached (max %d iterations, worst %.1f%% of "
                "the solver cap)",
                shared.max_iterations, 100.0 * shared.worst_cap_ratio);
  c7.detail = buf;
  report(7, "termination", c7, &failures);

  std::printf("%s: %d of 7 criteria failed\n", failures == 0 ? "OK" : "FAILED",
              failures);
  return failures == 0 ? 0 : 1;
}
