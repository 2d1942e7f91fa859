#include "gsm/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "gsm/error.hpp"

namespace gsm {

const char* payoff_kind_name(PayoffKind kind) {
  switch (kind) {
    case PayoffKind::kLinear:
      return "linear";
    case PayoffKind::kPower:
      return "power";
    case PayoffKind::kLog1p:
      return "log1p";
    case PayoffKind::kPiecewiseLinear:
      return "piecewise_linear";
  }
  return "unknown";
}

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string("payoff parameter '") + what +
                                "' is not finite");
  }
}

double clamp_tail(double slope) {
  if (std::isnan(slope)) return kMinTailSlope;
  return std::clamp(slope, kMinTailSlope, kMaxTailSlope);
}

}  // namespace

PayoffFn PayoffFn::linear(double slope, double intercept) {
  require_finite(slope, "slope");
  require_finite(intercept, "intercept");
  PayoffFn fn;
  fn.kind_ = PayoffKind::kLinear;
  fn.p0_ = slope;
  fn.p1_ = intercept;
  return fn;
}

PayoffFn PayoffFn::power(double exponent, double scale) {
  require_finite(exponent, "exponent");
  require_finite(scale, "scale");
  PayoffFn fn;
  fn.kind_ = PayoffKind::kPower;
  fn.p0_ = exponent;
  fn.p1_ = scale;
  return fn;
}

PayoffFn PayoffFn::log1p(double scale) {
  require_finite(scale, "scale");
  PayoffFn fn;
  fn.kind_ = PayoffKind::kLog1p;
  fn.p0_ = scale;
  fn.p1_ = 0.0;
  return fn;
}

PayoffFn PayoffFn::piecewise_linear(std::vector<double> breakpoints,
                                    std::vector<double> slopes) {
  if (slopes.size() != breakpoints.size() + 1) {
    throw std::invalid_argument(
        "piecewise_linear needs exactly one more slope than breakpoints");
  }
  for (double b : breakpoints) require_finite(b, "breakpoints");
  for (double m : slopes) require_finite(m, "slopes");
  PayoffFn fn;
  fn.kind_ = PayoffKind::kPiecewiseLinear;
  fn.p0_ = 0.0;
  fn.p1_ = 0.0;
  fn.breakpoints_ = std::move(breakpoints);
  fn.slopes_ = std::move(slopes);
  fn.knot_values_.reserve(fn.breakpoints_.size());
  double prev_x = 0.0;
  double prev_u = 0.0;
  for (std::size_t k = 0; k < fn.breakpoints_.size(); ++k) {
    prev_u += fn.slopes_[k] * (fn.breakpoints_[k] - prev_x);
    prev_x = fn.breakpoints_[k];
    fn.knot_values_.push_back(prev_u);
  }
  return fn;
}

double PayoffFn::tail_slope() const {
  switch (kind_) {
    case PayoffKind::kLinear:
      return p0_;
    case PayoffKind::kPower:
      // The derivative at 0 is 0 or infinite unless the exponent is 1, so
      // use the chord over [0, 1] instead.
      return clamp_tail(p1_);
    case PayoffKind::kLog1p:
      return clamp_tail(p0_);
    case PayoffKind::kPiecewiseLinear:
      return clamp_tail(slopes_.front());
  }
  return 1.0;
}

double PayoffFn::operator()(double s) const {
  switch (kind_) {
    case PayoffKind::kLinear:
      return p0_ * s + p1_;
    case PayoffKind::kPower:
      if (s < 0.0) return tail_slope() * s;
      return p1_ * std::pow(s, p0_);
    case PayoffKind::kLog1p:
      if (s < 0.0) return tail_slope() * s;
      return p0_ * std::log1p(s);
    case PayoffKind::kPiecewiseLinear: {
      if (s < 0.0) return tail_slope() * s;
      // Segment k covers [breakpoints[k-1], breakpoints[k]).
      const auto it =
          std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s);
      const auto k = static_cast<std::size_t>(it - breakpoints_.begin());
      const double x0 = k == 0 ? 0.0 : breakpoints_[k - 1];
      const double u0 = k == 0 ? 0.0 : knot_values_[k - 1];
      return u0 + slopes_[k] * (s - x0);
    }
  }
  return s;
}

double PayoffFn::inverse_closed_form(double v) const {
  switch (kind_) {
    case PayoffKind::kLinear:
      return (v - p1_) / p0_;
    case PayoffKind::kPower:
      if (v < 0.0) return v / tail_slope();
      return std::pow(v / p1_, 1.0 / p0_);
    case PayoffKind::kLog1p:
      if (v < 0.0) return v / tail_slope();
      return std::expm1(v / p0_);
    case PayoffKind::kPiecewiseLinear: {
      if (v < 0.0) return v / tail_slope();
      const auto it =
          std::upper_bound(knot_values_.begin(), knot_values_.end(), v);
      const auto k = static_cast<std::size_t>(it - knot_values_.begin());
      const double x0 = k == 0 ? 0.0 : breakpoints_[k - 1];
      const double u0 = k == 0 ? 0.0 : knot_values_[k - 1];
      return x0 + (v - u0) / slopes_[k];
    }
  }
  return v;
}

std::vector<std::string> PayoffFn::problems() const {
  std::vector<std::string> out;
  auto add = [&out](const std::string& s) { out.push_back(s); };
  switch (kind_) {
    case PayoffKind::kLinear:
      if (!(p0_ > 0.0)) add("not strictly increasing: linear slope <= 0");
      if (p1_ != 0.0) add("not normalized: linear intercept must be 0");
      break;
    case PayoffKind::kPower:
      if (!(p0_ > 0.0)) add("not strictly increasing: power exponent <= 0");
      if (!(p1_ > 0.0)) add("not strictly increasing: power scale <= 0");
      break;
    case PayoffKind::kLog1p:
      if (!(p0_ > 0.0)) add("not strictly increasing: log1p scale <= 0");
      break;
    case PayoffKind::kPiecewiseLinear: {
      double prev = 0.0;
      for (double b : breakpoints_) {
        if (!(b > prev)) {
          add("piecewise_linear breakpoints must be positive and increasing");
          break;
        }
        prev = b;
      }
      for (double m : slopes_) {
        if (!(m > 0.0)) {
          add("not strictly increasing: piecewise_linear slope <= 0");
          break;
        }
      }
      break;
    }
  }
  return out;
}

double eval_payoff(const PayoffFn& fn, double s) { return fn(s); }

double invert_by_bisection(const PayoffFn& fn, double v, double eps_inv,
                           int max_iterations) {
  double lo = -1.0;
  double hi = 1.0;
  int expansions = 0;
  while (fn(lo) > v) {
    lo *= 2.0;
    if (++expansions > max_iterations || !std::isfinite(lo)) {
      throw Error(ErrorKind::kNonConvergence,
                  "could not bracket payoff value from below");
    }
  }
  expansions = 0;
  while (fn(hi) < v) {
    hi *= 2.0;
    if (++expansions > max_iterations || !std::isfinite(hi)) {
      throw Error(ErrorKind::kNonConvergence,
                  "could not bracket payoff value from above");
    }
  }
  for (int it = 0; it < max_iterations; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    const double u = fn(mid);
    if (std::abs(u - v) <= eps_inv) return mid;
    if (mid <= lo || mid >= hi) return mid;  // interval exhausted
    if (u < v) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

double invert_payoff(const PayoffFn& fn, double v, double eps_inv) {
  if (std::isnan(v)) return v;
  const double s = fn.inverse_closed_form(v);
  if (std::isfinite(s)) return s;
  // An overflowing closed form means the preimage is past +-max double. That
  // happens when long folds run through steep payoffs; saturating keeps order.
  if (std::isinf(s)) return s;
  return invert_by_bisection(fn, v, eps_inv);
}

}  // namespace gsm
