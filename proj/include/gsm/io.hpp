#ifndef GSM_IO_HPP
#define GSM_IO_HPP

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gsm/matching.hpp"
#include "gsm/solver.hpp"

namespace gsm {

using Json = nlohmann::json;

// Malformed or unreadable documents.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"kind": "power", "params": {"exponent": 0.5, "scale": 1}}
PayoffFn payoff_from_json(const Json& j);
Json payoff_to_json(const PayoffFn& fn);

// {"a": n, "b": m, "edges": [{"i", "j", "w", "payoff_i", "payoff_j"}]} with
// 0-based i, j. A missing payoff is linear identity.
Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& inst);

// {"matching": [[i, j], ...], "splits": {"a1": ...}, "offers": {...},
//  "iterations": n, "stable": b, "feasible": b}
Json result_to_json(const Instance& inst, const StableWeightedMatching& r,
                    bool stable, bool feasible);
StableWeightedMatching result_from_json(const Instance& inst, const Json& j);

// One line of the solver trace.
Json trace_record(const Instance& inst, const SolverState& s);

Json read_json_file(const std::string& path);
// Pretty-printed, keys sorted, trailing newline.
void write_json_file(const std::string& path, const Json& j);
std::string pretty(const Json& j);

Instance load_instance(const std::string& path);

// Graphviz view: solid = matched, dashed = tight but unmatched, node labels
// carry offers. Other edges are omitted.
std::string to_dot(const Instance& inst, const OfferProfile& offers,
                   const EqualitySubgraph& eq, const Matching& m);

}  // namespace gsm

#endif  // GSM_IO_HPP
