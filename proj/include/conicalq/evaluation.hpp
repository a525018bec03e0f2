#pragma once

#include <string_view>

namespace conicalq {

enum class Method { NearOneSeries, LargeTauKummer, LargeXSeries, ForwardRecurrence };

inline constexpr std::string_view to_string(Method method) {
  switch (method) {
    case Method::NearOneSeries:
      return "NearOneSeries";
    case Method::LargeTauKummer:
      return "LargeTauKummer";
    case Method::LargeXSeries:
      return "LargeXSeries";
    case Method::ForwardRecurrence:
      return "ForwardRecurrence";
  }
  return "unknown";
}

/// Result of one evaluation. `error_estimate` is a relative truncation and
/// rounding indicator, not a certified bound.
struct Evaluation {
  double value = 0.0;
  Method method = Method::NearOneSeries;
  int terms_used = 0;
  double error_estimate = 0.0;
};

/// Stopping rule shared by the convergent power series.
struct SeriesControl {
  int max_terms = 200;
  double relative_threshold = 1e-16;
  // Return the partial sum of exactly max_terms terms instead of failing
  // when the budget runs out (fixed-budget accuracy studies).
  bool fixed_budget = false;
};

}  // namespace conicalq
