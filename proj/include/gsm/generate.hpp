#ifndef GSM_GENERATE_HPP
#define GSM_GENERATE_HPP

#include <cstdint>
#include <random>
#include <string>

#include "gsm/instance.hpp"

namespace gsm {

// linear: identity everywhere. mixed: power, log1p or piecewise per
// (node, edge).
enum class PayoffFamily { kLinear, kPower, kLog1p, kPiecewise, kMixed };

const char* payoff_family_name(PayoffFamily f);
// Throws std::invalid_argument for unknown names.
PayoffFamily parse_payoff_family(const std::string& name);

// Uniform [0, 1) from the top 53 bits, so draws match across standard
// libraries (std::uniform_real_distribution does not promise that).
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

PayoffFn random_payoff(std::mt19937_64& rng, PayoffFamily family);

// Each (a, b) pair is an edge with probability `density`, weights are
// uniform on [0, 10]. Redrawn until connected. Throws std::invalid_argument
// on bad arguments and Error(kGenerationFailed) after 100 disconnected
// draws.
Instance generate_instance(std::uint64_t seed, int na, int nb, double density,
                           PayoffFamily family);

}  // namespace gsm

#endif  // GSM_GENERATE_HPP
