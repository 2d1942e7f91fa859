#include "gsm/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace gsm {

namespace {

double param(const Json& params, const char* name, double fallback) {
  if (!params.contains(name)) return fallback;
  return params.at(name).get<double>();
}

Json profile_to_json(const Instance& inst, const NodeMap<double>& values) {
  Json out = Json::object();
  for (NodeId n : inst.all_nodes().members()) out[node_label(n)] = values[n];
  return out;
}

NodeMap<double> profile_from_json(const Instance& inst, const Json& j) {
  NodeMap<double> out(inst.a_count(), inst.b_count(), 0.0);
  for (NodeId n : inst.all_nodes().members()) {
    const std::string key = node_label(n);
    if (j.contains(key)) out[n] = j.at(key).get<double>();
  }
  return out;
}

Json matching_to_json(const Matching& m) {
  Json out = Json::array();
  for (auto [a, b] : m.pairs()) out.push_back({a, b});
  return out;
}

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& ex) {
    throw ParseError(std::string(what) + ": " + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ParseError(std::string(what) + ": " + ex.what());
  }
}

}  // namespace

PayoffFn payoff_from_json(const Json& j) {
  return guarded("payoff", [&] {
    const std::string kind = j.at("kind").get<std::string>();
    const Json params = j.value("params", Json::object());
    if (kind == "linear") {
      return PayoffFn::linear(param(params, "a", 1.0), param(params, "b", 0.0));
    }
    if (kind == "power") {
      return PayoffFn::power(param(params, "exponent", 1.0),
                             param(params, "scale", 1.0));
    }
    if (kind == "log1p") return PayoffFn::log1p(param(params, "scale", 1.0));
    if (kind == "piecewise_linear") {
      return PayoffFn::piecewise_linear(
          params.at("breakpoints").get<std::vector<double>>(),
          params.at("slopes").get<std::vector<double>>());
    }
    throw ParseError("unknown payoff kind '" + kind + "'");
  });
}

Json payoff_to_json(const PayoffFn& fn) {
  Json params;
  switch (fn.kind()) {
    case PayoffKind::kLinear:
      params = {{"a", fn.param0()}, {"b", fn.param1()}};
      break;
    case PayoffKind::kPower:
      params = {{"exponent", fn.param0()}, {"scale", fn.param1()}};
      break;
    case PayoffKind::kLog1p:
      params = {{"scale", fn.param0()}};
      break;
    case PayoffKind::kPiecewiseLinear:
      params = {{"breakpoints", fn.breakpoints()}, {"slopes", fn.slopes()}};
      break;
  }
  return {{"kind", payoff_kind_name(fn.kind())}, {"params", params}};
}

Instance instance_from_json(const Json& j) {
  return guarded("instance", [&] {
    const int a = j.at("a").get<int>();
    const int b = j.at("b").get<int>();
    std::vector<Edge> edges;
    for (const Json& e : j.at("edges")) {
      Edge edge;
      edge.a = e.at("i").get<int>();
      edge.b = e.at("j").get<int>();
      edge.weight = e.at("w").get<double>();
      if (e.contains("payoff_i")) edge.payoff_a = payoff_from_json(e.at("payoff_i"));
      if (e.contains("payoff_j")) edge.payoff_b = payoff_from_json(e.at("payoff_j"));
      edges.push_back(std::move(edge));
    }
    return Instance(a, b, std::move(edges));
  });
}

Json instance_to_json(const Instance& inst) {
  Json edges = Json::array();
  for (const Edge& e : inst.edges()) {
    edges.push_back({{"i", e.a},
                     {"j", e.b},
                     {"w", e.weight},
                     {"payoff_i", payoff_to_json(e.payoff_a)},
                     {"payoff_j", payoff_to_json(e.payoff_b)}});
  }
  return {{"a", inst.a_count()}, {"b", inst.b_count()}, {"edges", edges}};
}

Json result_to_json(const Instance& inst, const StableWeightedMatching& r,
                    bool stable, bool feasible) {
  return {{"matching", matching_to_json(r.matching)},
          {"splits", profile_to_json(inst, r.splits)},
          {"offers", profile_to_json(inst, r.profile)},
          {"iterations", r.iterations},
          {"stable", stable},
          {"feasible", feasible}};
}

StableWeightedMatching result_from_json(const Instance& inst, const Json& j) {
  return guarded("result", [&] {
    StableWeightedMatching r;
    r.matching = Matching(inst);
    for (const Json& p : j.at("matching")) {
      const int a = p.at(0).get<int>();
      const int b = p.at(1).get<int>();
      if (a < 0 || a >= inst.a_count() || b < 0 || b >= inst.b_count()) {
        throw ParseError("matched pair out of range");
      }
      if (r.matching.is_matched(NodeId::a(a)) ||
          r.matching.is_matched(NodeId::b(b))) {
        throw ParseError("matching reuses a node");
      }
      r.matching.add(a, b);
    }
    r.splits = profile_from_json(inst, j.at("splits"));
    r.profile = profile_from_json(inst, j.at("offers"));
    r.iterations = j.value("iterations", 0);
    return r;
  });
}

Json trace_record(const Instance& inst, const SolverState& s) {
  Json roots = Json::array();
  for (int a : s.roots) roots.push_back(node_label(NodeId::a(a)));
  Json rec = {{"t", s.t},
              {"offers", profile_to_json(inst, s.profile)},
              {"matching", matching_to_json(s.matching)},
              {"roots", roots}};
  if (s.root >= 0) {
    Json tree = Json::array();
    for (NodeId n : s.tree.order) tree.push_back(node_label(n));
    rec["root"] = node_label(NodeId::a(s.root));
    rec["tree"] = tree;
    rec["action"] = s.action;
    rec["selected"] = {{"node", node_label(NodeId::a(s.selected.node))},
                       {"offer", s.selected.offer}};
  } else {
    rec["action"] = "init";
  }
  return rec;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& ex) {
    throw ParseError(path + ": " + ex.what());
  }
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << pretty(j);
  if (!out) throw ParseError("write failed for " + path);
}

Instance load_instance(const std::string& path) {
  return instance_from_json(read_json_file(path));
}

std::string to_dot(const Instance& inst, const OfferProfile& offers,
                   const EqualitySubgraph& eq, const Matching& m) {
  std::ostringstream os;
  os << std::setprecision(6);
  os << "graph G {\n  rankdir=LR;\n";
  for (NodeId n : inst.all_nodes().members()) {
    os << "  " << node_label(n) << " [label=\"" << node_label(n) << "\\n"
       << offers[n] << "\"" << (n.is_a() ? ", shape=box" : "") << "];\n";
  }
  for (std::size_t id = 0; id < inst.edges().size(); ++id) {
    const Edge& e = inst.edges()[id];
    const bool matched = m.contains(e.a, e.b);
    if (!matched && !eq.contains(static_cast<int>(id))) continue;
    os << "  " << node_label(NodeId::a(e.a)) << " -- "
       << node_label(NodeId::b(e.b)) << " [label=\"" << e.weight
       << "\", style=" << (matched ? "solid" : "dashed") << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace gsm
