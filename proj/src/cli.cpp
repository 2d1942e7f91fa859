#include "gsm/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <string>

#include "gsm/error.hpp"
#include "gsm/generate.hpp"
#include "gsm/io.hpp"
#include "gsm/solver.hpp"
#include "gsm/verify.hpp"

namespace gsm {

namespace {

struct Options {
  std::string instance;
  std::string result;
  std::string output;
  std::string trace;
  double eps_eq = SolverConfig{}.eps_eq;
  double eps = 1e-6;
  int max_iters = 0;
  int grid = 1000;
  bool check_invariants = false;

  std::uint64_t seed = 0;
  int na = 3;
  int nb = 3;
  double density = 1.0;
  std::string family = "linear";
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write " + path);
  f << text;
}

SolverConfig config_from(const Options& o) {
  SolverConfig c;
  c.eps_eq = o.eps_eq;
  c.max_iterations = o.max_iters;
  c.check_invariants = o.check_invariants;
  return c;
}

Instance checked_instance(const std::string& path, std::ostream& err) {
  Instance inst = load_instance(path);
  const auto report = validate_instance(inst);
  if (!report.ok()) {
    for (const auto& e : report.errors) err << path << ": " << e << "\n";
    throw ParseError("invalid instance");
  }
  return inst;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Instance inst = load_instance(o.instance);
  const auto report = validate_instance(inst);
  for (const auto& e : report.errors) out << e << "\n";
  out << (report.ok() ? "OK" : "INVALID") << " (max inversion error "
      << report.max_inversion_error << ")\n";
  return report.ok() ? kExitOk : kExitUnstable;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const Instance inst = checked_instance(o.instance, err);
  const SolverConfig config = config_from(o);
  std::ofstream trace;
  if (!o.trace.empty()) {
    trace.open(o.trace);
    if (!trace) throw ParseError("cannot write " + o.trace);
  }
  TraceSink sink;
  if (trace.is_open()) {
    sink = [&](const SolverState& s) { trace << trace_record(inst, s).dump() << "\n"; };
  }
  const auto result = solve(inst, config, sink);
  const auto report = verify(inst, result, config.eps_feas, config.eps_inv);
  emit(o.output, pretty(result_to_json(inst, result, report.stable, report.feasible)),
       out);
  return kExitOk;
}

int cmd_trace(const Options& o, std::ostream& out, std::ostream& err) {
  const Instance inst = checked_instance(o.instance, err);
  std::string lines;
  solve(inst, config_from(o), [&](const SolverState& s) {
    lines += trace_record(inst, s).dump() + "\n";
  });
  emit(o.output, lines, out);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Instance inst = load_instance(o.instance);
  const auto result = result_from_json(inst, read_json_file(o.result));
  const auto report = verify(inst, result, o.eps);
  const auto witnesses = blocking_pair_search(inst, result, o.grid);
  for (const auto& v : report.violations) {
    out << "unstable edge";
    if (v.edge >= 0) {
      const Edge& e = inst.edge(v.edge);
      out << " (" << node_label(NodeId::a(e.a)) << ", "
          << node_label(NodeId::b(e.b)) << ")";
    }
    out << ": violation " << v.magnitude << "\n";
  }
  for (const auto& f : report.feasibility_errors) out << "infeasible: " << f << "\n";
  for (const auto& w : witnesses) {
    const Edge& e = inst.edge(w.edge);
    out << "blocking split on (" << node_label(NodeId::a(e.a)) << ", "
        << node_label(NodeId::b(e.b)) << "): " << w.split_a << " / "
        << w.split_b << "\n";
  }
  if (!report.stable) return kExitUnstable;
  if (!report.feasible) return kExitInfeasible;
  if (!witnesses.empty()) return kExitBlocking;
  out << "PASS\n";
  return kExitOk;
}

int cmd_export_dot(const Options& o, std::ostream& out) {
  const Instance inst = load_instance(o.instance);
  const auto result = result_from_json(inst, read_json_file(o.result));
  const auto eq = build_equality_subgraph(inst, result.profile, o.eps_eq);
  emit(o.output, to_dot(inst, result.profile, eq, result.matching), out);
  return kExitOk;
}

int cmd_gen(const Options& o, std::ostream& out) {
  const Instance inst = generate_instance(o.seed, o.na, o.nb, o.density,
                                          parse_payoff_family(o.family));
  emit(o.output, pretty(instance_to_json(inst)), out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Stable weighted matchings with nonlinear split payoffs"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Check an instance file");
  validate->add_option("file", o.instance)->required();

  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("file", o.instance)->required();
  solve_cmd->add_option("--eps-eq", o.eps_eq, "Equality band, split units");
  solve_cmd->add_option("--max-iters", o.max_iters, "Iteration cap, 0 = auto");
  solve_cmd->add_option("--trace", o.trace, "Write one JSON line per step");
  solve_cmd->add_option("-o,--output", o.output, "Result file (default stdout)");
  solve_cmd->add_flag("--check-invariants", o.check_invariants);

  auto* trace_cmd = app.add_subcommand("trace", "Print the step trace");
  trace_cmd->add_option("file", o.instance)->required();
  trace_cmd->add_option("--eps-eq", o.eps_eq);
  trace_cmd->add_option("--max-iters", o.max_iters);
  trace_cmd->add_option("-o,--output", o.output);
  trace_cmd->add_flag("--check-invariants", o.check_invariants);

  auto* verify_cmd = app.add_subcommand("verify", "Audit a result");
  verify_cmd->add_option("file", o.instance)->required();
  verify_cmd->add_option("--result", o.result)->required();
  verify_cmd->add_option("--grid", o.grid, "Blocking-pair grid points per edge")
      ->check(CLI::Range(2, 100000000));
  verify_cmd->add_option("--eps", o.eps, "Audit tolerance");

  auto* dot = app.add_subcommand("export-dot", "Graphviz view of a result");
  dot->add_option("file", o.instance)->required();
  dot->add_option("--result", o.result)->required();
  dot->add_option("--eps-eq", o.eps_eq);
  dot->add_option("-o,--output", o.output);

  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--seed", o.seed)->required();
  gen->add_option("--na", o.na)->required();
  gen->add_option("--nb", o.nb)->required();
  gen->add_option("--density", o.density);
  gen->add_option("--payoff-family", o.family,
                  "linear, power, log1p, piecewise or mixed");
  gen->add_option("-o,--output", o.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (solve_cmd->parsed()) return cmd_solve(o, out, err);
    if (trace_cmd->parsed()) return cmd_trace(o, out, err);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (dot->parsed()) return cmd_export_dot(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace gsm
