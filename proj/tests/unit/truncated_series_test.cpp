#include <gtest/gtest.h>

#include <cmath>

#include "conicalq/truncated_series.hpp"

using conicalq::TruncatedSeries;

namespace {

TruncatedSeries<double> exp_series(std::size_t order) {
  TruncatedSeries<double> s(order);
  double f = 1.0;
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0) f *= static_cast<double>(k);
    s[k] = 1.0 / f;
  }
  return s;
}

}  // namespace

TEST(TruncatedSeries, ProductIsCauchyPrefix) {
  const TruncatedSeries<double> a{1.0, 2.0, 3.0};
  const TruncatedSeries<double> b{4.0, 5.0, 6.0, 7.0};
  const auto c = a * b;
  ASSERT_EQ(c.order(), 2u);
  EXPECT_EQ(c[0], 4.0);
  EXPECT_EQ(c[1], 13.0);
  EXPECT_EQ(c[2], 28.0);
}

TEST(TruncatedSeries, QuotientInvertsProduct) {
  const TruncatedSeries<double> a{2.0, -1.0, 0.5, 0.25, 3.0};
  const TruncatedSeries<double> b{1.5, 0.3, -0.7, 0.1, 0.9};
  const auto q = (a * b) / b;
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_NEAR(q[k], a[k], 1e-14);
  EXPECT_THROW((a / TruncatedSeries<double>{0.0, 1.0}), std::domain_error);
}

TEST(TruncatedSeries, ExpOfLinearIsExponential) {
  const auto e = exp(TruncatedSeries<double>{0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  const auto want = exp_series(6);
  for (std::size_t k = 0; k <= 6; ++k) EXPECT_NEAR(e[k], want[k], 1e-16);
}

TEST(TruncatedSeries, LogExpRoundTrip) {
  const TruncatedSeries<double> s{1.7, 0.2, -0.4, 0.05, 0.3, -0.1};
  const auto back = exp(log(s));
  for (std::size_t k = 0; k <= 5; ++k) EXPECT_NEAR(back[k], s[k], 1e-14);
  EXPECT_THROW(log(TruncatedSeries<double>{-1.0, 1.0}), std::domain_error);
}

// (1 + t)^b: binomial coefficients
TEST(TruncatedSeries, PowerMatchesBinomial) {
  const double b = -1.5;
  const auto p = pow(TruncatedSeries<double>{1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}, b);
  double binom = 1.0;
  for (std::size_t k = 0; k <= 7; ++k) {
    EXPECT_NEAR(p[k], binom, 1e-14 * std::abs(binom));
    binom *= (b - static_cast<double>(k)) / (static_cast<double>(k) + 1.0);
  }
}

TEST(TruncatedSeries, MixedOrdersTruncate) {
  const TruncatedSeries<double> a{1.0, 1.0};
  const TruncatedSeries<double> b{1.0, 1.0, 1.0};
  EXPECT_EQ((a + b).order(), 1u);
  EXPECT_EQ((a - b).order(), 1u);
  EXPECT_EQ((2.0 * b)[2], 2.0);
}
