#ifndef GSM_PAYOFF_HPP
#define GSM_PAYOFF_HPP

#include <string>
#include <vector>

namespace gsm {

enum class PayoffKind { kLinear, kPower, kLog1p, kPiecewiseLinear };

const char* payoff_kind_name(PayoffKind kind);

// Slope bounds for the linear tails that extend a payoff function below a
// zero split. The tail slope is the derivative at 0 (for power, the chord
// slope over [0, 1]), clamped to this range.
inline constexpr double kMinTailSlope = 1e-6;
inline constexpr double kMaxTailSlope = 1e6;

inline constexpr double kDefaultInversionTolerance = 1e-10;
inline constexpr int kMaxBisectionIterations = 200;

// Value a node derives from its part s of an edge split.
//
// Every kind is normalized to u(0) = 0 and is defined on all of R: the
// natural formula applies for s >= 0 and a linear tail applies for s < 0.
//
//   linear            u(s) = slope * s + intercept      (intercept must be 0)
//   power             u(s) = scale * s^exponent
//   log1p             u(s) = scale * log(1 + s)
//   piecewise_linear  slopes[k] on [breakpoints[k-1], breakpoints[k]),
//                     with an implicit first breakpoint at 0
//
// Construction only checks structure. Parameter problems that break strict
// monotonicity or normalization are reported by problems().
class PayoffFn {
 public:
  PayoffFn() = default;  // linear identity

  static PayoffFn linear(double slope = 1.0, double intercept = 0.0);
  static PayoffFn power(double exponent, double scale = 1.0);
  static PayoffFn log1p(double scale = 1.0);
  static PayoffFn piecewise_linear(std::vector<double> breakpoints,
                                   std::vector<double> slopes);

  PayoffKind kind() const { return kind_; }

  double operator()(double s) const;

  // Closed-form inverse. Non-finite when the closed form overflows.
  double inverse_closed_form(double v) const;

  // Slope of the s < 0 tail.
  double tail_slope() const;

  bool is_linear_identity() const {
    return kind_ == PayoffKind::kLinear && p0_ == 1.0 && p1_ == 0.0;
  }

  // linear: slope, intercept. power: exponent, scale. log1p: scale.
  double param0() const { return p0_; }
  double param1() const { return p1_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& slopes() const { return slopes_; }

  // Parameter-level defects: non-positive slopes, broken normalization, ...
  std::vector<std::string> problems() const;

  friend bool operator==(const PayoffFn&, const PayoffFn&) = default;

 private:
  PayoffKind kind_ = PayoffKind::kLinear;
  double p0_ = 1.0;
  double p1_ = 0.0;
  std::vector<double> breakpoints_;
  std::vector<double> slopes_;
  std::vector<double> knot_values_;  // u at each breakpoint
};

double eval_payoff(const PayoffFn& fn, double s);

// Split s with |u(s) - v| <= eps_inv. Uses the closed form and falls back to
// bracketed bisection when the closed form is not usable. Returns +-inf for
// values beyond u(+-max double). Throws Error(kNonConvergence) if no bracket
// can be found.
double invert_payoff(const PayoffFn& fn, double v,
                     double eps_inv = kDefaultInversionTolerance);

// Bracket doubling from [-1, 1] followed by bisection.
double invert_by_bisection(const PayoffFn& fn, double v,
                           double eps_inv = kDefaultInversionTolerance,
                           int max_iterations = kMaxBisectionIterations);

}  // namespace gsm

#endif  // GSM_PAYOFF_HPP
