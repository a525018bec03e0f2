#pragma once

// Power series in z = (1 - x)/2 for Q-tilde of orders 0 and 1 close to x = 1.
//
//   Q~0 = sum_k p_k / (k!)^2 z^k (psi(k+1) - Re psi(1/2 + i tau) - ln w),
//   p_k = (1/2 - i tau)_k (1/2 + i tau)_k,  w = sqrt((x-1)/(x+1)),
//
// and Q~1 = -sqrt(x^2-1) dQ~0/dx by termwise differentiation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "conicalq/errors.hpp"
#include "conicalq/evaluation.hpp"
#include "conicalq/scalar_kernels.hpp"

namespace conicalq {

struct NearOneGeometry {
  double x;
  double z;    // (1 - x) / 2
  double w;    // sqrt((x - 1) / (x + 1))
  double lnw;

  static NearOneGeometry at(double x) {
    if (!(x > 1.0) || !std::isfinite(x)) {
      throw DomainError("near-one series: requires finite x > 1");
    }
    if (!(x < 3.0)) {
      throw DomainError("near-one series: requires x < 3 (|z| < 1)");
    }
    const double ratio = (x - 1.0) / (x + 1.0);
    return {x, 0.5 * (1.0 - x), std::sqrt(ratio), 0.5 * std::log(ratio)};
  }
};

/// p_k = (1/2 - i tau)_k (1/2 + i tau)_k = prod_{j<k} ((j + 1/2)^2 + tau^2), k = 0..count-1.
/// The running product is kept in long double and rounded once per entry.
/// p_k passes the double range near k = 98 even at tau = 0.
inline std::vector<double> pochhammer_products(double tau, int count) {
  std::vector<double> p(static_cast<std::size_t>(std::max(count, 0)));
  long double value = 1.0L;
  const long double tau2 = static_cast<long double>(tau) * tau;
  for (int k = 0; k < count; ++k) {
    p[k] = static_cast<double>(value);
    if (!std::isfinite(p[k])) {
      throw OverflowError("pochhammer_products: p_k exceeds the double range at k = " + std::to_string(k), k);
    }
    value *= (k + 0.5L) * (k + 0.5L) + tau2;
  }
  return p;
}

namespace detail {

inline void check_near_one_tau(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw DomainError("near-one series: requires finite tau >= 0");
  }
}

// Ratio |c_{k+1} / c_k| of the coefficients p_k z^k / (k!)^2.
inline double near_one_ratio(int k, double tau, double z) {
  const double kp = k + 1.0;
  return ((k + 0.5) * (k + 0.5) + tau * tau) * std::abs(z) / (kp * kp);
}

// Both orders share the walk over k; the callable receives
// (k, c_k, A_k - ln w, |A_k| + |ln w|) and returns (term, bound).
template <typename TermFn>
Evaluation sum_near_one(double tau, const NearOneGeometry& g, const SeriesControl& ctl,
                        TermFn&& term_fn, double scale) {
  const double re_psi = digamma(Complex(0.5, tau)).real();
  double psi_k = -std::numbers::egamma;  // psi(k + 1)
  double coeff = 1.0;                    // p_k z^k / (k!)^2
  double sum = 0.0;
  double abs_sum = 0.0;
  for (int k = 0; k < ctl.max_terms; ++k) {
    const double a_k = psi_k - re_psi;
    const auto [term, bound] = term_fn(k, coeff, a_k - g.lnw, std::abs(a_k) + std::abs(g.lnw));
    sum += term;
    abs_sum += std::abs(term);
    const double ratio = near_one_ratio(k, tau, g.z);
    const bool budget_done = ctl.fixed_budget && k + 1 == ctl.max_terms;
    if (budget_done || (k > 0 && ratio < 1.0 && bound <= ctl.relative_threshold * std::abs(sum))) {
      const double eps = std::numeric_limits<double>::epsilon();
      Evaluation e;
      e.value = scale * sum;
      e.method = Method::NearOneSeries;
      e.terms_used = k + 1;
      e.error_estimate = (bound + eps * abs_sum) / std::abs(sum);
      if (!std::isfinite(e.value)) {
        throw OverflowError("near-one series: result is not finite", -1);
      }
      return e;
    }
    coeff *= ((k + 0.5) * (k + 0.5) + tau * tau) / ((k + 1.0) * (k + 1.0)) * g.z;
    psi_k += 1.0 / (k + 1.0);
  }
  throw NonConvergenceError("near-one series: term budget exhausted before convergence");
}

}  // namespace detail

/// Q~0_{-1/2+i tau}(x) for 1 < x < 3; intended for x near 1 and moderate tau.
inline Evaluation qtilde0_near_one(double tau, double x, const SeriesControl& ctl = {}) {
  detail::check_near_one_tau(tau);
  const NearOneGeometry g = NearOneGeometry::at(x);
  return detail::sum_near_one(
      tau, g, ctl,
      [](int, double c, double a, double a_bound) {
        return std::pair{c * a, std::abs(c) * a_bound};
      },
      1.0);
}

inline Evaluation qtilde0_near_one(double tau, double x, int max_terms) {
  return qtilde0_near_one(tau, x, SeriesControl{max_terms, SeriesControl{}.relative_threshold});
}

/// Q~1_{-1/2+i tau}(x) = -sqrt(x^2-1) d/dx Q~0, summed as
///   sqrt(x^2-1) sum_k (k/2) c_k z^(k-1) (A_k - ln w) + sum_k c_k z^k / sqrt(x^2-1).
inline Evaluation qtilde1_near_one(double tau, double x, const SeriesControl& ctl = {}) {
  detail::check_near_one_tau(tau);
  const NearOneGeometry g = NearOneGeometry::at(x);
  const double s2 = (x - 1.0) * (x + 1.0);
  const double s = std::sqrt(s2);
  // Everything is summed in units of 1/s; the factor s^2 restores the first part.
  return detail::sum_near_one(
      tau, g, ctl,
      [s2, z = g.z](int k, double c, double a, double a_bound) {
        const double derivative_part = s2 * (0.5 * k) * (c / z);
        const double term = derivative_part * a + c;
        const double bound = std::abs(derivative_part) * a_bound + std::abs(c);
        return std::pair{term, bound};
      },
      1.0 / s);
}

inline Evaluation qtilde1_near_one(double tau, double x, int max_terms) {
  return qtilde1_near_one(tau, x, SeriesControl{max_terms, SeriesControl{}.relative_threshold});
}

}  // namespace conicalq
