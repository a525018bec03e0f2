#pragma once

// A double mantissa paired with a 64-bit binary exponent. Q-tilde grows
// roughly like (m!)^2 along the order recurrence and leaves the double range
// near m = 160; this type carries such values without loss. The forward
// recursion rescales its iterates by powers of two, which is exact, so the
// extra exponent changes no digit of the mantissa.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace conicalq {

class ScaledValue {
 public:
  ScaledValue() = default;

  // value = fraction * 2^exponent
  ScaledValue(double fraction, std::int64_t exponent) {
    int e = 0;
    fraction_ = std::frexp(fraction, &e);
    exponent_ = fraction_ == 0.0 ? 0 : exponent + e;
  }

  static ScaledValue from_double(double v) { return ScaledValue(v, 0); }

  double fraction() const { return fraction_; }       // in [0.5, 1) or 0
  std::int64_t exponent() const { return exponent_; }

  bool is_zero() const { return fraction_ == 0.0; }

  // True when the value is a finite normal-or-subnormal double.
  bool fits_double() const {
    return is_zero() || (exponent_ <= std::numeric_limits<double>::max_exponent &&
                         exponent_ >= std::numeric_limits<double>::min_exponent - 52);
  }

  // Out-of-range values saturate to +-infinity or zero.
  double to_double() const {
    if (is_zero()) return 0.0;
    if (exponent_ > std::numeric_limits<double>::max_exponent) {
      return std::copysign(std::numeric_limits<double>::infinity(), fraction_);
    }
    if (exponent_ < std::numeric_limits<double>::min_exponent - 60) return std::copysign(0.0, fraction_);
    return std::ldexp(fraction_, static_cast<int>(exponent_));
  }

  // Decimal rendering with `digits` significant digits. Values inside the
  // double range print exactly like printf("%.*e"); beyond it the decimal
  // exponent is derived from a split log10(2) and the last digit can be off
  // by one unit.
  std::string to_string(int digits = 17) const;

  // Parses decimal scientific notation of any exponent magnitude.
  static std::optional<ScaledValue> parse(std::string_view text);

 private:
  double fraction_ = 0.0;
  std::int64_t exponent_ = 0;
};

namespace detail {

// log10(2) and log2(10) split as hi + lo with hi holding 32 fractional bits,
// so integer multiples of hi are exact for exponents below 2^20.
inline constexpr double kLog10Of2Hi = 0.3010299955494702;
inline constexpr double kLog10Of2Lo = 1.1451100898021838691e-10;
inline constexpr double kLog2Of10Hi = 3.321928094839677;
inline constexpr double kLog2Of10Lo = 4.7685133247821870896e-11;

inline std::string format_sci(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return buf;
}

}  // namespace detail

inline std::string ScaledValue::to_string(int digits) const {
  if (fits_double()) return detail::format_sci(to_double(), digits);
  const double exact_hi = static_cast<double>(exponent_) * detail::kLog10Of2Hi;
  double decade = std::floor(exact_hi);
  double frac = (exact_hi - decade) + static_cast<double>(exponent_) * detail::kLog10Of2Lo +
                std::log10(std::abs(fraction_));
  const double shift = std::floor(frac);
  decade += shift;
  frac -= shift;
  std::string mantissa = detail::format_sci(std::copysign(std::pow(10.0, frac), fraction_), digits);
  // format_sci renormalizes a significand that rounds up to 10.
  const auto epos = mantissa.find('e');
  const long long carry = std::strtoll(mantissa.c_str() + epos + 1, nullptr, 10);
  char tail[32];
  std::snprintf(tail, sizeof tail, "e%+lld", static_cast<long long>(decade) + carry);
  return mantissa.substr(0, epos) + tail;
}

inline std::optional<ScaledValue> ScaledValue::parse(std::string_view text) {
  std::string s(text);
  const auto epos = s.find_first_of("eE");
  std::int64_t decade = 0;
  std::string mantissa_text = s;
  if (epos != std::string::npos) {
    const char* begin = s.c_str() + epos + 1;
    char* end = nullptr;
    decade = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0') return std::nullopt;
    mantissa_text = s.substr(0, epos);
  }
  if (mantissa_text.empty()) return std::nullopt;
  char* end = nullptr;
  if (decade > -300 && decade < 300) {
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !std::isfinite(v)) return std::nullopt;
    return from_double(v);
  }
  const double mantissa = std::strtod(mantissa_text.c_str(), &end);
  if (end == mantissa_text.c_str() || *end != '\0' || !std::isfinite(mantissa)) return std::nullopt;
  const double exact_hi = static_cast<double>(decade) * detail::kLog2Of10Hi;
  const double whole = std::floor(exact_hi);
  const double frac = (exact_hi - whole) + static_cast<double>(decade) * detail::kLog2Of10Lo;
  return ScaledValue(mantissa * std::exp2(frac), static_cast<std::int64_t>(whole));
}

/// |a / b - 1|; infinity when b is zero and a is not.
inline double relative_difference(const ScaledValue& a, const ScaledValue& b) {
  if (b.is_zero()) return a.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
  const std::int64_t shift = a.exponent() - b.exponent();
  if (shift > 60) return std::numeric_limits<double>::infinity();
  if (shift < -60) return 1.0;
  const double ratio = std::ldexp(a.fraction() / b.fraction(), static_cast<int>(shift));
  return std::abs(ratio - 1.0);
}

}  // namespace conicalq
