#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace conicalq {

/// Taylor coefficients c_0..c_K of a power series, truncated at order K.
///
/// Binary operations on series of different orders truncate to the smaller
/// order, so every result is exactly the order-K prefix of the infinite
/// series operation.
template <typename T>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1, T{}) {}
  TruncatedSeries(std::initializer_list<T> coeffs) : coeffs_(coeffs) {
    if (coeffs_.empty()) throw std::invalid_argument("TruncatedSeries: empty coefficient list");
  }
  explicit TruncatedSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("TruncatedSeries: empty coefficient list");
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const T& operator[](std::size_t k) const { return coeffs_[k]; }
  T& operator[](std::size_t k) { return coeffs_[k]; }
  const std::vector<T>& coeffs() const { return coeffs_; }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries r(std::min(a.order(), b.order()));
    for (std::size_t k = 0; k <= r.order(); ++k) r[k] = a[k] + b[k];
    return r;
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries r(std::min(a.order(), b.order()));
    for (std::size_t k = 0; k <= r.order(); ++k) r[k] = a[k] - b[k];
    return r;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries r(std::min(a.order(), b.order()));
    for (std::size_t k = 0; k <= r.order(); ++k) {
      T acc{};
      for (std::size_t j = 0; j <= k; ++j) acc += a[j] * b[k - j];
      r[k] = acc;
    }
    return r;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const T& scalar) {
    TruncatedSeries r = a;
    for (auto& c : r.coeffs_) c *= scalar;
    return r;
  }

  friend TruncatedSeries operator*(const T& scalar, const TruncatedSeries& a) { return a * scalar; }

  // Requires b[0] != 0.
  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (b[0] == T{}) throw std::domain_error("TruncatedSeries: division by a series with zero constant term");
    TruncatedSeries r(std::min(a.order(), b.order()));
    for (std::size_t k = 0; k <= r.order(); ++k) {
      T acc = a[k];
      for (std::size_t j = 1; j <= k; ++j) acc -= b[j] * r[k - j];
      r[k] = acc / b[0];
    }
    return r;
  }

 private:
  std::vector<T> coeffs_;
};

/// log s for s[0] > 0.
template <typename T>
TruncatedSeries<T> log(const TruncatedSeries<T>& s) {
  using std::log;
  if (!(s[0] > T{})) throw std::domain_error("TruncatedSeries log: constant term must be positive");
  const T c0 = s[0];
  TruncatedSeries<T> r(s.order());
  r[0] = log(c0);
  for (std::size_t k = 1; k <= s.order(); ++k) {
    T acc = static_cast<T>(k) * s[k];
    for (std::size_t j = 1; j < k; ++j) acc -= static_cast<T>(j) * r[j] * s[k - j];
    r[k] = acc / (static_cast<T>(k) * c0);
  }
  return r;
}

template <typename T>
TruncatedSeries<T> exp(const TruncatedSeries<T>& s) {
  using std::exp;
  TruncatedSeries<T> r(s.order());
  r[0] = exp(s[0]);
  for (std::size_t k = 1; k <= s.order(); ++k) {
    T acc{};
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<T>(j) * s[j] * r[k - j];
    r[k] = acc / static_cast<T>(k);
  }
  return r;
}

/// s^exponent = exp(exponent * log s), s[0] > 0.
template <typename T>
TruncatedSeries<T> pow(const TruncatedSeries<T>& s, const T& exponent) {
  return exp(log(s) * exponent);
}

}  // namespace conicalq
