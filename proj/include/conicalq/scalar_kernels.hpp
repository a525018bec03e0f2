#pragma once

// Complex digamma, log-gamma and the gamma ratio
// Gamma(1/2 + mu + i tau) / Gamma(1 + i tau) shared by the series engines.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "conicalq/errors.hpp"

namespace conicalq {

using Complex = std::complex<double>;

namespace detail {

// B_{2n} / (2n), n = 1..8.
inline constexpr std::array<long double, 8> kDigammaCoeffs = {
    1.0L / 12.0L,  -1.0L / 120.0L,      1.0L / 252.0L, -1.0L / 240.0L,
    1.0L / 132.0L, -691.0L / 32760.0L, 1.0L / 12.0L,  -3617.0L / 8160.0L};

// B_{2n} / (2n (2n - 1)), n = 1..8.
inline constexpr std::array<long double, 8> kStirlingCoeffs = {
    1.0L / 12.0L,   -1.0L / 360.0L,       1.0L / 1260.0L, -1.0L / 1680.0L,
    1.0L / 1188.0L, -691.0L / 360360.0L, 1.0L / 156.0L,  -3617.0L / 122400.0L};

// Modulus above which the asymptotic expansions are summed directly.
inline constexpr double kAsymptoticRadius = 12.0;

// Digamma and log-gamma run in this type and round once at the end: the
// upward shift cancels several digits near the real axis (psi(1), lnGamma(1)).
using ComplexExt = std::complex<long double>;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// sum_n coeffs[n] * u^n, Horner in u.
template <typename T, std::size_t N>
std::complex<T> horner(const std::array<long double, N>& coeffs, std::complex<T> u) {
  std::complex<T> acc = static_cast<T>(coeffs[N - 1]);
  for (std::size_t n = N - 1; n-- > 0;) acc = acc * u + static_cast<T>(coeffs[n]);
  return acc;
}

// Tail of the Stirling series, sum_n B_2n / (2n(2n-1) z^(2n-1)).
template <typename T>
std::complex<T> stirling_tail(std::complex<T> z) {
  const std::complex<T> inv = static_cast<T>(1) / z;
  return inv * horner(kStirlingCoeffs, inv * inv);
}

// log(1 + u) without the cancellation of std::log(1.0 + u) for small |u|.
inline Complex log1p(Complex u) {
  const double re = u.real();
  const double im = u.imag();
  const double modulus_log = 0.5 * std::log1p(re * (2.0 + re) + im * im);
  return {modulus_log, std::atan2(im, 1.0 + re)};
}

}  // namespace detail

/// Digamma psi(alpha) for Re(alpha) >= 1/2.
///
/// For |alpha| >= 12 the asymptotic series
///   psi(a) ~ ln a - 1/(2a) - sum_{n=1}^{8} B_2n / (2n a^2n)
/// is summed directly; smaller arguments are first shifted upwards with
/// psi(a) = psi(a + 1) - 1/a.
inline Complex digamma(Complex alpha) {
  if (!detail::is_finite(alpha) || !(alpha.real() >= 0.5)) {
    throw DomainError("digamma: argument must be finite with Re(alpha) >= 1/2");
  }
  detail::ComplexExt a(alpha.real(), alpha.imag());
  // Shift terms are accumulated smallest-first.
  std::array<detail::ComplexExt, 16> shifts{};
  std::size_t count = 0;
  while (std::abs(a) < detail::kAsymptoticRadius) {
    shifts[count++] = 1.0L / a;
    a += 1.0L;
  }
  const detail::ComplexExt inv = 1.0L / a;
  const detail::ComplexExt inv2 = inv * inv;
  detail::ComplexExt result = std::log(a) - 0.5L * inv - inv2 * detail::horner(detail::kDigammaCoeffs, inv2);
  detail::ComplexExt correction = 0.0L;
  while (count > 0) correction += shifts[--count];
  result -= correction;
  return {static_cast<double>(result.real()), static_cast<double>(result.imag())};
}

/// Principal branch of log Gamma(alpha) for Re(alpha) > 0: Stirling series with
/// upward argument recurrence, the imaginary part continuous in alpha.
inline Complex log_gamma(Complex alpha) {
  if (!detail::is_finite(alpha) || !(alpha.real() > 0.0)) {
    throw DomainError("log_gamma: argument must be finite with Re(alpha) > 0");
  }
  detail::ComplexExt a(alpha.real(), alpha.imag());
  detail::ComplexExt shift = 0.0L;
  while (std::abs(a) < detail::kAsymptoticRadius) {
    shift += std::log(a);
    a += 1.0L;
  }
  const long double half_log_2pi = 0.918938533204672741780329736405617639861L;
  const detail::ComplexExt result =
      (a - 0.5L) * std::log(a) - a + half_log_2pi + detail::stirling_tail(a) - shift;
  return {static_cast<double>(result.real()), static_cast<double>(result.imag())};
}

namespace detail {

// Gamma(w + a) / Gamma(w + b) for real a, b and Re(w + min(a, b)) > 0.
//
// The log-gamma difference is formed analytically so that the large,
// nearly equal phases of the two log-gamma values never get subtracted:
//   (z1 - 1/2) log1p(d / z2) + d ln z2 - d + S(z1) - S(z2),  d = a - b.
inline Complex gamma_ratio_shifted(Complex w, double a, double b) {
  Complex product = 1.0;
  while (std::abs(w + std::min(a, b)) < kAsymptoticRadius) {
    product *= (w + b) / (w + a);
    w += 1.0;
  }
  const Complex z1 = w + a;
  const Complex z2 = w + b;
  const double d = a - b;
  const Complex log_ratio = (z1 - 0.5) * log1p(d / z2) + d * std::log(z2) - d +
                            stirling_tail(z1) - stirling_tail(z2);
  return product * std::exp(log_ratio);
}

}  // namespace detail

/// Gamma(1/2 + mu + i tau) / Gamma(1 + i tau), the prefactor ratio of the
/// large-x hypergeometric representation.
inline Complex gamma_ratio(int mu, double tau) {
  if (mu < 0 || !std::isfinite(tau)) {
    throw DomainError("gamma_ratio: requires integer mu >= 0 and finite tau");
  }
  return detail::gamma_ratio_shifted(Complex(0.0, tau), 0.5 + mu, 1.0);
}

/// Leading coefficients c_0..c_2 of the gamma-ratio expansion.
struct GammaRatioCoeffs {
  std::array<double, 3> c;
  double mu;
};

inline GammaRatioCoeffs gamma_ratio_coeffs(double mu) {
  return {{1.0, -0.25 * (2.0 * mu + 1.0), (2.0 * mu + 1.0) * (6.0 * mu + 1.0) / 96.0},
          mu};
}

/// Large-tau expansion of gamma_ratio truncated to `nterms` <= 3 terms:
///   tau^(mu-1/2) e^{i pi (mu-1/2)/2} sum_n (-i)^n (1/2-mu)_n c_n / tau^n.
/// Diagnostic only; gamma_ratio is the production route.
inline Complex gamma_ratio_asymptotic(int mu, double tau, int nterms) {
  if (!(tau >= 10.0)) {
    throw ValidityError("gamma_ratio_asymptotic: requires tau >= 10");
  }
  if (nterms < 1 || nterms > 3 || mu < 0) {
    throw DomainError("gamma_ratio_asymptotic: requires 1 <= nterms <= 3 and mu >= 0");
  }
  const auto coeffs = gamma_ratio_coeffs(mu);
  Complex sum = 0.0;
  Complex power = 1.0;  // (-i)^n (1/2-mu)_n / tau^n
  for (int n = 0; n < nterms; ++n) {
    sum += power * coeffs.c[n];
    power *= Complex(0.0, -1.0) * (0.5 - mu + n) / tau;
  }
  const double phase = 0.5 * (mu - 0.5) * std::numbers::pi;
  return std::pow(tau, mu - 0.5) * std::polar(1.0, phase) * sum;
}

namespace detail {

// Re{ exp(-i tau acosh(x)) c }. The phase tau*acosh(x) reaches 10^3 and more
// in the supported domain, so it is formed and reduced in long double.
inline double real_part_with_phase(double tau, double x, Complex c) {
  const long double phase =
      static_cast<long double>(tau) * std::acosh(static_cast<long double>(x));
  const double cos_phase = static_cast<double>(std::cos(phase));
  const double sin_phase = static_cast<double>(std::sin(phase));
  return c.real() * cos_phase + c.imag() * sin_phase;
}

}  // namespace detail

}  // namespace conicalq
