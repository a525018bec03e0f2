#pragma once

// Large-tau expansion of Q-tilde in Kummer U-functions, uniform in x > 1:
//
//   e^{-i pi mu} Q^mu(x) ~ sqrt(pi/2) alpha^{mu+1/2} (x^2-1)^{-1/4}
//                          (x + sqrt(x^2-1))^{-i tau} sum_k f_k Phi_k,
//
//   Phi_k = (1/2-mu)_k omega^{2mu-k} U(1/2+mu, 1+2mu-k, alpha omega),
//   omega = i tau,  alpha = ln((z+1)/z),
//
// with f_k the Taylor coefficients of
//   f(t) = ( (1-e^{-t})/t * (e^t-e^{-alpha})/(t+alpha) * alpha/(1-e^{-alpha}) )^{-mu-1/2}.
//
// Phi_0 and Phi_1 come from Hankel functions of argument alpha tau / 2, the
// rest from the forward recurrence
//   omega Phi_{n+1} = (n + b - a - alpha omega) Phi_n + alpha (b + n - 1) Phi_{n-1},
//   a = 1/2 + mu, b = 1/2 - mu.

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "conicalq/bessel.hpp"
#include "conicalq/errors.hpp"
#include "conicalq/evaluation.hpp"
#include "conicalq/scalar_kernels.hpp"
#include "conicalq/truncated_series.hpp"

namespace conicalq {

inline constexpr int kKummerMaxTerms = 16;
inline constexpr double kKummerMinTau = 5.0;
inline constexpr double kKummerMinAlpha = 1e-8;

struct KummerGeometry {
  double x;
  double z;       // 1 / (2 sqrt(x^2-1) (x + sqrt(x^2-1)))
  double alpha;   // ln((z + 1) / z)
  Complex omega;  // i tau
  double b;       // exponent of f(t): -mu - 1/2
  double d;       // z alpha

  static KummerGeometry at(int mu, double tau, double x) {
    if (mu < 0) throw DomainError("kummer expansion: requires order mu >= 0");
    if (!(x > 1.0) || !std::isfinite(x)) {
      throw DomainError("kummer expansion: requires finite x > 1");
    }
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
      throw DomainError("kummer expansion: requires finite tau >= 0");
    }
    const double s = std::sqrt((x - 1.0) * (x + 1.0));
    const double inv_z = 2.0 * s * (x + s);
    const double z = 1.0 / inv_z;
    const double alpha = std::log1p(inv_z);
    return {x, z, alpha, Complex(0.0, tau), -mu - 0.5, z * alpha};
  }
};

struct PhiTable {
  std::vector<Complex> phi;
  KummerGeometry geometry;
  int mu;
};

/// f_0..f_K of the expansion, built with truncated-series arithmetic.
inline TruncatedSeries<double> f_coefficients(int mu, const KummerGeometry& geometry, int K) {
  if (K < 0 || K > kKummerMaxTerms) {
    throw DomainError("f_coefficients: requires 0 <= K <= 16");
  }
  if (geometry.b != -mu - 0.5) throw DomainError("f_coefficients: geometry built for another order");
  const double alpha = geometry.alpha;
  if (!(alpha >= kKummerMinAlpha)) {
    throw DegenerateError("f_coefficients: alpha below 1e-8, x indistinguishable from 1");
  }
  const auto order = static_cast<std::size_t>(K);

  // (1 - e^{-t}) / t = sum (-1)^k t^k / (k+1)!
  TruncatedSeries<double> decay(order);
  double factorial = 1.0;
  for (std::size_t k = 0; k <= order; ++k) {
    factorial *= static_cast<double>(k + 1);
    decay[k] = (k % 2 == 0 ? 1.0 : -1.0) / factorial;
  }

  // (e^t - e^{-alpha}) / (t + alpha) * alpha / (1 - e^{-alpha})
  //   = alpha / expm1(alpha) * sum_k t^k / k! * sum_j alpha^j / (j! (j + k + 1)).
  // All terms are positive, so small alpha costs no accuracy.
  TruncatedSeries<double> shifted(order);
  const double normalizer = alpha / std::expm1(alpha);
  double k_factorial = 1.0;
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0) k_factorial *= static_cast<double>(k);
    double power = 1.0;  // alpha^j / j!
    double sum = 0.0;
    for (int j = 0; j < 2000; ++j) {
      const double term = power / (j + static_cast<double>(k) + 1.0);
      sum += term;
      if (j > alpha && term <= 1e-18 * sum) break;
      power *= alpha / (j + 1.0);
    }
    shifted[k] = normalizer * sum / k_factorial;
  }

  TruncatedSeries<double> base = decay * shifted;
  base = base * (1.0 / base[0]);
  TruncatedSeries<double> f = pow(base, geometry.b);
  f[0] = 1.0;
  return f;
}

namespace detail {

// exp(i y) H^(2)_n(y) for integer n >= -1, forward Bessel recurrence above order 1.
inline Complex hankel2_scaled_order(int n, double y) {
  if (n == -1) return -hankel2_scaled(1, y);
  Complex lower = hankel2_scaled(0, y);
  if (n == 0) return lower;
  Complex upper = hankel2_scaled(1, y);
  for (int k = 1; k < n; ++k) {
    const Complex next = (2.0 * k / y) * upper - lower;
    lower = upper;
    upper = next;
  }
  return upper;
}

}  // namespace detail

/// Phi_0..Phi_K from Hankel starting values and the forward recurrence.
inline PhiTable phi_table(int mu, double tau, const KummerGeometry& geometry, int K) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw DomainError("phi_table: requires finite tau > 0");
  }
  if (K < 0 || K > kKummerMaxTerms) throw DomainError("phi_table: requires 0 <= K <= 16");
  const double alpha = geometry.alpha;
  const double y = 0.5 * alpha * tau;
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  // (tau/alpha)^mu in log space
  const double scale = std::exp(mu * (std::log(tau) - std::log(alpha)));
  // exp(i alpha tau / 2) folds into the scaled Hankel functions.
  const Complex h_mu = detail::hankel2_scaled_order(mu, y);
  const Complex h_below = detail::hankel2_scaled_order(mu - 1, y);
  const Complex i{0.0, 1.0};

  PhiTable table{std::vector<Complex>(static_cast<std::size_t>(K) + 1), geometry, mu};
  auto& phi = table.phi;
  phi[0] = -0.5 * i * sqrt_pi * scale * h_mu;
  if (K >= 1) phi[1] = 0.25 * alpha * sqrt_pi * scale * (i * h_mu + h_below);

  const double a = 0.5 + mu;
  const double b = 0.5 - mu;
  const Complex omega = geometry.omega;
  for (int n = 1; n < K; ++n) {
    phi[n + 1] = ((n + b - a - alpha * omega) * phi[n] + alpha * (b + n - 1.0) * phi[n - 1]) / omega;
  }
  for (const Complex& v : phi) {
    if (!detail::is_finite(v)) throw OverflowError("phi_table: non-finite table entry", -1);
  }
  return table;
}

/// Q~mu_{-1/2+i tau}(x) from the Kummer-U expansion with terms k = 0..K.
inline Evaluation qtilde_kummer(int mu, double tau, double x, int K = 8) {
  if (!(tau >= kKummerMinTau)) {
    throw ValidityError("kummer expansion: requires tau >= 5");
  }
  const KummerGeometry g = KummerGeometry::at(mu, tau, x);
  const TruncatedSeries<double> f = f_coefficients(mu, g, K);
  const PhiTable table = phi_table(mu, tau, g, K);

  Complex sum = 0.0;
  double abs_sum = 0.0;
  Complex last = 0.0;
  for (int k = 0; k <= K; ++k) {
    last = f[static_cast<std::size_t>(k)] * table.phi[static_cast<std::size_t>(k)];
    sum += last;
    abs_sum += std::abs(last);
  }
  const double s = std::sqrt((x - 1.0) * (x + 1.0));
  const double prefactor = std::sqrt(0.5 * std::numbers::pi) *
                           std::pow(g.alpha, mu + 0.5) / std::sqrt(s);
  const double eps = std::numeric_limits<double>::epsilon();

  Evaluation e;
  e.value = detail::real_part_with_phase(tau, x, prefactor * sum);
  e.method = Method::LargeTauKummer;
  e.terms_used = K + 1;
  e.error_estimate = (std::abs(last) + eps * abs_sum) / std::abs(sum);
  if (!std::isfinite(e.value)) throw OverflowError("kummer expansion: result is not finite", -1);
  return e;
}

}  // namespace conicalq
