#include "gsm/generate.hpp"

#include <algorithm>
#include <stdexcept>

#include "gsm/error.hpp"

namespace gsm {

namespace {

constexpr int kConnectRetries = 100;
constexpr double kMaxWeight = 10.0;

PayoffFn random_piecewise(std::mt19937_64& rng) {
  const int pieces = 1 + static_cast<int>(rng() % 3);
  std::vector<double> breakpoints;
  for (int k = 0; k + 1 < pieces; ++k) breakpoints.push_back(uniform(rng, 0.5, 9.5));
  std::sort(breakpoints.begin(), breakpoints.end());
  std::vector<double> slopes;
  for (int k = 0; k < pieces; ++k) slopes.push_back(uniform(rng, 0.2, 3.0));
  return PayoffFn::piecewise_linear(std::move(breakpoints), std::move(slopes));
}

}  // namespace

const char* payoff_family_name(PayoffFamily f) {
  switch (f) {
    case PayoffFamily::kLinear: return "linear";
    case PayoffFamily::kPower: return "power";
    case PayoffFamily::kLog1p: return "log1p";
    case PayoffFamily::kPiecewise: return "piecewise";
    case PayoffFamily::kMixed: return "mixed";
  }
  return "?";
}

PayoffFamily parse_payoff_family(const std::string& name) {
  for (auto f : {PayoffFamily::kLinear, PayoffFamily::kPower,
                 PayoffFamily::kLog1p, PayoffFamily::kPiecewise,
                 PayoffFamily::kMixed}) {
    if (name == payoff_family_name(f)) return f;
  }
  throw std::invalid_argument("unknown payoff family '" + name + "'");
}

PayoffFn random_payoff(std::mt19937_64& rng, PayoffFamily family) {
  switch (family) {
    case PayoffFamily::kLinear:
      return PayoffFn::linear();
    case PayoffFamily::kPower:
      return PayoffFn::power(uniform(rng, 0.3, 3.0), uniform(rng, 0.5, 2.0));
    case PayoffFamily::kLog1p:
      return PayoffFn::log1p(uniform(rng, 0.5, 2.0));
    case PayoffFamily::kPiecewise:
      return random_piecewise(rng);
    case PayoffFamily::kMixed: {
      const PayoffFamily pick[] = {PayoffFamily::kPower, PayoffFamily::kLog1p,
                                   PayoffFamily::kPiecewise};
      return random_payoff(rng, pick[rng() % 3]);
    }
  }
  return PayoffFn::linear();
}

Instance generate_instance(std::uint64_t seed, int na, int nb, double density,
                           PayoffFamily family) {
  if (na < 1 || nb < 1) throw std::invalid_argument("counts must be >= 1");
  if (!(density > 0.0 && density <= 1.0)) {
    throw std::invalid_argument("density must be in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kConnectRetries; ++attempt) {
    std::vector<Edge> edges;
    for (int a = 0; a < na; ++a) {
      for (int b = 0; b < nb; ++b) {
        if (density < 1.0 && uniform01(rng) >= density) continue;
        Edge e;
        e.a = a;
        e.b = b;
        e.weight = uniform(rng, 0.0, kMaxWeight);
        e.payoff_a = random_payoff(rng, family);
        e.payoff_b = random_payoff(rng, family);
        edges.push_back(std::move(e));
      }
    }
    Instance inst(na, nb, std::move(edges));
    if (is_connected(inst, inst.all_nodes())) return inst;
  }
  throw Error(ErrorKind::kGenerationFailed,
              "no connected draw after " + std::to_string(kConnectRetries) +
                  " attempts");
}

}  // namespace gsm
