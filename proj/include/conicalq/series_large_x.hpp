#pragma once

// Hypergeometric series for moderate and large x:
//
//   e^{-i pi mu} Q^mu(x) = sqrt(pi/2) (x^2-1)^{-1/4} (x + sqrt(x^2-1))^{-i tau}
//       Gamma(1/2+mu+i tau)/Gamma(1+i tau)
//       sum_k (1/2+mu)_k (1/2-mu)_k / (1+i tau)_k (-z)^k / k!,
//   z = 1 / (2 sqrt(x^2-1) (x + sqrt(x^2-1))).

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "conicalq/errors.hpp"
#include "conicalq/evaluation.hpp"
#include "conicalq/scalar_kernels.hpp"

namespace conicalq {

struct LargeXGeometry {
  double x;
  double s;           // sqrt(x^2 - 1)
  double z;
  double phase;       // tau ln(x + s); informational, the sum reduces it in long double
  double prefactor;   // sqrt(pi/2) (x^2 - 1)^{-1/4}

  static LargeXGeometry at(double x, double tau) {
    if (!(x > 1.0) || !std::isfinite(x)) {
      throw DomainError("large-x series: requires finite x > 1");
    }
    const double s = std::sqrt((x - 1.0) * (x + 1.0));
    return {x, s, 1.0 / (2.0 * s * (x + s)), tau * std::acosh(x),
            std::sqrt(0.5 * std::numbers::pi) / std::sqrt(s)};
  }
};

/// r = 1 / (1 + i tau)_k.
struct InversePochhammerState {
  Complex r{1.0, 0.0};
  int k = 0;
};

inline InversePochhammerState inverse_pochhammer_step(const InversePochhammerState& state,
                                                      double tau) {
  return {state.r / Complex(state.k + 1.0, tau), state.k + 1};
}

struct LargeXControl {
  SeriesControl series{};
  // Smallest accepted argument; the series in -z converges only for z < 1.
  double min_x = 1.1;
};

namespace detail {

inline void check_large_x(int mu, double tau, double x, const LargeXControl& ctl) {
  if (mu < 0) throw DomainError("large-x series: requires order mu >= 0");
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw DomainError("large-x series: requires finite tau >= 0");
  }
  if (!(x >= ctl.min_x) || !std::isfinite(x)) {
    throw DomainError("large-x series: requires x >= " + std::to_string(ctl.min_x));
  }
}

// Real factor (1/2+mu+k)(1/2-mu+k)(-z)/(k+1) taking term k to term k+1.
inline double large_x_real_ratio(int mu, int k, double z) {
  return (0.5 + mu + k) * (0.5 - mu + k) * (-z) / (k + 1.0);
}

}  // namespace detail

/// First `count` summands of the hypergeometric sum (diagnostic trace).
inline std::vector<Complex> large_x_summands(int mu, double tau, double x, int count) {
  detail::check_large_x(mu, tau, x, LargeXControl{});
  const LargeXGeometry g = LargeXGeometry::at(x, tau);
  std::vector<Complex> terms;
  terms.reserve(static_cast<std::size_t>(std::max(count, 0)));
  double a = 1.0;
  InversePochhammerState state;
  for (int k = 0; k < count; ++k) {
    terms.push_back(a * state.r);
    a *= detail::large_x_real_ratio(mu, k, g.z);
    state = inverse_pochhammer_step(state, tau);
  }
  return terms;
}

/// Q~mu_{-1/2+i tau}(x) from the large-x hypergeometric series, x >= ctl.min_x.
inline Evaluation qtilde_large_x(int mu, double tau, double x, const LargeXControl& ctl = {}) {
  detail::check_large_x(mu, tau, x, ctl);
  const LargeXGeometry g = LargeXGeometry::at(x, tau);
  Complex sum = 0.0;
  double abs_sum = 0.0;
  double a = 1.0;
  InversePochhammerState state;
  for (int k = 0; k < ctl.series.max_terms; ++k) {
    const Complex term = a * state.r;
    sum += term;
    abs_sum += std::abs(term);
    const double next_a = a * detail::large_x_real_ratio(mu, k, g.z);
    const InversePochhammerState next = inverse_pochhammer_step(state, tau);
    const double ratio = std::abs(next_a * next.r) / std::abs(term);
    const bool budget_done = ctl.series.fixed_budget && k + 1 == ctl.series.max_terms;
    if (budget_done || (k > 0 && ratio < 1.0 &&
                        std::abs(term) <= ctl.series.relative_threshold * std::abs(sum))) {
      const double eps = std::numeric_limits<double>::epsilon();
      const Complex scaled = g.prefactor * gamma_ratio(mu, tau) * sum;
      Evaluation e;
      e.value = detail::real_part_with_phase(tau, x, scaled);
      e.method = Method::LargeXSeries;
      e.terms_used = k + 1;
      e.error_estimate = (std::abs(term) + eps * abs_sum) / std::abs(sum);
      if (!std::isfinite(e.value)) {
        throw OverflowError("large-x series: result is not finite", -1);
      }
      return e;
    }
    a = next_a;
    state = next;
  }
  throw NonConvergenceError("large-x series: term budget exhausted before convergence");
}

inline Evaluation qtilde_large_x(int mu, double tau, double x, int max_terms) {
  LargeXControl ctl;
  ctl.series.max_terms = max_terms;
  return qtilde_large_x(mu, tau, x, ctl);
}

}  // namespace conicalq
