#pragma once

// Region selection for the order 0 and 1 seeds, and forward recursion in the
// order m:
//
//   Q~^{m+1} = (2 m x / sqrt(x^2-1)) Q~^m - ((m - 1/2)^2 + tau^2) Q~^{m-1}.
//
// Q~ is a dominant solution of this recurrence, so increasing m is the
// stable direction.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "conicalq/errors.hpp"
#include "conicalq/evaluation.hpp"
#include "conicalq/kummer.hpp"
#include "conicalq/scaled_value.hpp"
#include "conicalq/series_large_x.hpp"
#include "conicalq/series_near_one.hpp"

namespace conicalq {

struct ConicalArgs {
  int m = 0;
  double tau = 0.0;
  double x = 2.0;

  void validate() const {
    if (m < 0) throw DomainError("order m must be a non-negative integer");
    if (!std::isfinite(tau) || tau < 0.0) throw DomainError("tau must be finite and >= 0");
    if (!std::isfinite(x) || !(x > 1.0)) throw DomainError("x must be finite and > 1");
  }
};

/// Region boundaries and term budgets of the evaluation scheme.
struct RoutingConfig {
  // Near-one series and Kummer expansion below this x, large-x series at or above.
  double threshold_x = 1.1;
  // Near-one series below this tau, Kummer expansion at or above (for x < threshold_x).
  double threshold_tau = 10.0;
  // Highest term index of the Kummer expansion. K = 8 leaves truncation
  // errors near 2e-11 at tau = 10; K = 12 brings them below 1e-13.
  int kummer_terms = 12;
  SeriesControl series{};

  /// Defaults overridden by CONICALQ_THRESH_X and CONICALQ_THRESH_TAU.
  static RoutingConfig from_environment() {
    RoutingConfig cfg;
    auto read = [](const char* name, double& target) {
      const char* text = std::getenv(name);
      if (text == nullptr || *text == '\0') return;
      char* end = nullptr;
      const double v = std::strtod(text, &end);
      if (end == text || *end != '\0' || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + ": not a number: " + text);
      }
      target = v;
    };
    read("CONICALQ_THRESH_X", cfg.threshold_x);
    read("CONICALQ_THRESH_TAU", cfg.threshold_tau);
    return cfg;
  }
};

/// Method used for the order 0 and 1 values at (tau, x). Boundaries are
/// closed on the large-x side in x and on the Kummer side in tau.
inline Method select_method(double tau, double x, const RoutingConfig& cfg = {}) {
  if (x >= cfg.threshold_x) return Method::LargeXSeries;
  return tau < cfg.threshold_tau ? Method::NearOneSeries : Method::LargeTauKummer;
}

/// Q~^order evaluated directly by one expansion (no recursion). The near-one
/// series supports orders 0 and 1; the other two accept any order.
inline Evaluation evaluate_direct(int order, double tau, double x, Method method,
                                  const RoutingConfig& cfg = {}) {
  switch (method) {
    case Method::NearOneSeries:
      if (order == 0) return qtilde0_near_one(tau, x, cfg.series);
      if (order == 1) return qtilde1_near_one(tau, x, cfg.series);
      throw DomainError("near-one series: only orders 0 and 1 are available");
    case Method::LargeTauKummer:
      return qtilde_kummer(order, tau, x, cfg.kummer_terms);
    case Method::LargeXSeries: {
      LargeXControl ctl;
      ctl.series = cfg.series;
      ctl.min_x = std::min(ctl.min_x, cfg.threshold_x);
      return qtilde_large_x(order, tau, x, ctl);
    }
    case Method::ForwardRecurrence:
      break;
  }
  throw DomainError("evaluate_direct: forward recursion is not a direct method");
}

namespace detail {

// Extended-precision step; the iterates are carried in long double so the
// rounding of the recursion stays far below the seed error.
inline long double recurrence_step_ext(int m, long double tau, long double ratio, long double lower,
                                       long double upper) {
  const long double half = 0.5L;
  return (2.0L * m * ratio) * upper - ((m - half) * (m - half) + tau * tau) * lower;
}

inline long double recurrence_ratio(double x) {
  const long double xl = x;
  return xl / std::sqrt((xl - 1.0L) * (xl + 1.0L));
}

}  // namespace detail

/// One step of the order recurrence: Q~^{m+1} from Q~^{m-1} and Q~^m,
/// evaluated in long double and rounded once.
inline double recurrence_step(int m, double tau, double x, double lower, double upper) {
  return static_cast<double>(
      detail::recurrence_step_ext(m, tau, detail::recurrence_ratio(x), lower, upper));
}

namespace detail {

// upper * 2^scale, rounded once to a double mantissa.
inline ScaledValue to_scaled(long double value, std::int64_t scale) {
  int e = 0;
  const long double f = std::frexp(value, &e);
  return ScaledValue(static_cast<double>(f), scale + e);
}

}  // namespace detail

/// Evaluation whose value may lie outside the double range.
struct ScaledEvaluation {
  ScaledValue value;
  Method method = Method::NearOneSeries;
  int terms_used = 0;
  double error_estimate = 0.0;
  // First order whose value left the double range, -1 if none did.
  int overflow_order = -1;
};

/// Q~^m with an unbounded binary exponent. Identical arithmetic to
/// compute_qtilde; only the exponent bookkeeping differs.
inline ScaledEvaluation compute_qtilde_scaled(const ConicalArgs& args, const RoutingConfig& cfg = {},
                                              std::optional<Method> seed_method = std::nullopt) {
  args.validate();
  const Method method = seed_method.value_or(select_method(args.tau, args.x, cfg));
  if (method == Method::ForwardRecurrence) {
    throw DomainError("forward recursion cannot be requested as a seed method");
  }
  if (args.m <= 1) {
    const Evaluation e = evaluate_direct(args.m, args.tau, args.x, method, cfg);
    return {ScaledValue::from_double(e.value), e.method, e.terms_used, e.error_estimate, -1};
  }
  const Evaluation seed0 = evaluate_direct(0, args.tau, args.x, method, cfg);
  const Evaluation seed1 = evaluate_direct(1, args.tau, args.x, method, cfg);

  // Both iterates share the binary exponent `scale`.
  constexpr int kRescaleBits = 600;
  const long double kHigh = std::ldexp(1.0L, kRescaleBits);
  const long double kLow = std::ldexp(1.0L, -kRescaleBits);
  const long double ratio = detail::recurrence_ratio(args.x);
  std::int64_t scale = 0;
  long double lower = seed0.value;
  long double upper = seed1.value;
  int overflow_order = -1;
  for (int m = 1; m < args.m; ++m) {
    const long double next = detail::recurrence_step_ext(m, args.tau, ratio, lower, upper);
    if (!std::isfinite(next)) {
      throw OverflowError("forward recursion: non-finite iterate at m = " + std::to_string(m + 1), m + 1);
    }
    lower = upper;
    upper = next;
    if (overflow_order < 0 && !detail::to_scaled(upper, scale).fits_double()) overflow_order = m + 1;
    if (std::abs(upper) > kHigh) {
      lower = std::ldexp(lower, -kRescaleBits);
      upper = std::ldexp(upper, -kRescaleBits);
      scale += kRescaleBits;
    } else if (upper != 0.0L && std::abs(upper) < kLow && std::abs(lower) < kLow) {
      lower = std::ldexp(lower, kRescaleBits);
      upper = std::ldexp(upper, kRescaleBits);
      scale -= kRescaleBits;
    }
  }
  ScaledEvaluation result;
  result.value = detail::to_scaled(upper, scale);
  result.method = Method::ForwardRecurrence;
  result.terms_used = args.m - 1;
  result.error_estimate = std::max(seed0.error_estimate, seed1.error_estimate);
  result.overflow_order = overflow_order;
  return result;
}

/// Q~^m_{-1/2+i tau}(x). Throws OverflowError naming the first order whose
/// value leaves the double range.
inline Evaluation compute_qtilde(const ConicalArgs& args, const RoutingConfig& cfg = {},
                                 std::optional<Method> seed_method = std::nullopt) {
  const ScaledEvaluation s = compute_qtilde_scaled(args, cfg, seed_method);
  if (s.overflow_order >= 0 || !s.value.fits_double()) {
    const int order = s.overflow_order >= 0 ? s.overflow_order : args.m;
    throw OverflowError("forward recursion: Q~^m exceeds the double range from m = " +
                            std::to_string(order),
                        order);
  }
  return {s.value.to_double(), s.method, s.terms_used, s.error_estimate};
}

/// x_c = sqrt(1 + beta^2) / beta, beta = tau / m: the conical functions are
/// monotonic on (1, x_c) and oscillate beyond.
inline double transition_point(int m, double tau) {
  if (m < 1) throw DomainError("transition_point: requires m >= 1");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("transition_point: requires finite tau > 0");
  const double beta = tau / m;
  return std::hypot(1.0, beta) / beta;
}

/// |LHS - 1| with LHS = [(2mx/sqrt(x^2-1)) Q~^m - ((m-1/2)^2 + tau^2) Q~^{m-1}] / Q~^{m+1},
/// for three independently computed values.
inline double recurrence_residual(int m, double tau, double x, const Evaluation& lower,
                                  const Evaluation& mid, const Evaluation& upper) {
  if (m < 1) throw DomainError("recurrence_residual: requires m >= 1");
  if (std::abs(upper.value) < 1e-300) {
    throw DegenerateError("recurrence_residual: Q~^{m+1} vanishes, residual undefined");
  }
  const long double lhs =
      detail::recurrence_step_ext(m, tau, detail::recurrence_ratio(x), lower.value, mid.value);
  return static_cast<double>(std::abs(lhs / upper.value - 1.0L));
}

}  // namespace conicalq
