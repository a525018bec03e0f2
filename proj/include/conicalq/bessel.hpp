#pragma once

// Bessel functions J and Y of orders 0 and 1 for real positive argument, and
// the Hankel combination H^(2) = J - iY used for the Kummer starting values.

#include <cmath>
#include <complex>

#include "conicalq/errors.hpp"
#include "conicalq/scalar_kernels.hpp"

namespace conicalq {

struct BesselPair {
  double j;
  double y;
  int order;
  double arg;
};

/// J_order(x) and Y_order(x), order in {0, 1}, x > 0.
///
/// Backed by the POSIX j0/j1/y0/y1 functions (rational approximations near
/// the origin, modulus/phase forms with exact argument reduction beyond).
inline BesselPair bessel_jy(int order, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_jy: argument must be finite and positive");
  }
  switch (order) {
    case 0:
      return {::j0(x), ::y0(x), 0, x};
    case 1:
      return {::j1(x), ::y1(x), 1, x};
    default:
      throw DomainError("bessel_jy: only orders 0 and 1 are implemented");
  }
}

/// H^(2)_order(x) = J_order(x) - i Y_order(x).
inline Complex hankel2(int order, double x) {
  const BesselPair p = bessel_jy(order, x);
  return {p.j, -p.y};
}

/// exp(i x) H^(2)_order(x). The oscillation of H^(2) is removed, leaving a
/// slowly varying factor; errors stay relative to the envelope |H^(2)|.
inline Complex hankel2_scaled(int order, double x) {
  return std::polar(1.0, x) * hankel2(order, x);
}

}  // namespace conicalq
