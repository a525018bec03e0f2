#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "conicalq/kummer.hpp"
#include "conicalq/series_near_one.hpp"
#include "../test_support.hpp"

namespace cq = conicalq;
using cq::testing::rel_err;
using cq::testing::spot;

TEST(NearOneGeometry, Invariants) {
  for (double x : {1.000001, 1.05, 1.5, 2.9}) {
    const auto g = cq::NearOneGeometry::at(x);
    EXPECT_LT(g.z, 0.0);
    EXPECT_GT(g.w, 0.0);
    EXPECT_LT(g.w, 1.0);
    EXPECT_LT(g.lnw, 0.0);
  }
  EXPECT_THROW(cq::NearOneGeometry::at(1.0), cq::DomainError);
  EXPECT_THROW(cq::NearOneGeometry::at(3.0), cq::DomainError);
}

// Compared up to the last index inside the double range.
TEST(PochhammerProducts, RecursionMatchesDirectProduct) {
  for (double tau : {0.0, 0.1, 5.0, 9.9, 50.0, 200.0}) {
    long double direct = 1.0L;
    int kmax = 0;
    for (int k = 1; k <= 100; ++k) {
      direct *= (k - 0.5L) * (k - 0.5L) + static_cast<long double>(tau) * tau;
      if (direct > std::numeric_limits<double>::max()) break;
      kmax = k;
    }
    const auto p = cq::pochhammer_products(tau, kmax + 1);
    EXPECT_EQ(p[0], 1.0);
    direct = 1.0L;
    for (int k = 1; k <= kmax; ++k) {
      direct *= (k - 0.5L) * (k - 0.5L) + static_cast<long double>(tau) * tau;
      EXPECT_GT(p[k], 0.0);
      EXPECT_LE(std::abs(p[k] / static_cast<double>(direct) - 1.0), 1e-15) << "tau=" << tau << " k=" << k;
    }
  }
}

TEST(PochhammerProducts, OverflowIsReported) {
  try {
    cq::pochhammer_products(0.0, 101);
    FAIL() << "expected overflow";
  } catch (const cq::OverflowError& e) {
    EXPECT_GT(e.order(), 90);
    EXPECT_LE(e.order(), 100);
  }
}

TEST(NearOne, ReferenceValues) {
  EXPECT_LE(rel_err(cq::qtilde0_near_one(0.1, 1.01).value, spot(0, 0.1, 1.01)), 1e-14);
  EXPECT_LE(rel_err(cq::qtilde1_near_one(0.1, 1.01).value, spot(1, 0.1, 1.01)), 1e-14);
}

TEST(NearOne, LeadingBehaviourAtOne) {
  const double tau = 3.0;
  const double limit = -std::numbers::egamma - cq::digamma(cq::Complex(0.5, tau)).real();
  double prev_gap = 1.0;
  for (double x : {1e-3, 1e-5, 1e-7, 1e-9}) {
    const double xx = 1.0 + x;
    const double log_part = -0.5 * std::log((xx - 1.0) / (xx + 1.0));
    const double gap = std::abs(cq::qtilde0_near_one(tau, xx).value - log_part - limit);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
    const double s = std::sqrt((xx - 1.0) * (xx + 1.0));
    // Correction is O(s^2 ln s) with coefficient (1/4 + tau^2) / 2.
    const double bound = s * s * (0.25 + tau * tau) * (1.0 + std::abs(std::log(s)));
    EXPECT_NEAR(cq::qtilde1_near_one(tau, xx).value * s, 1.0, bound) << x;
  }
  EXPECT_LT(prev_gap, 1e-7);
}

// At tau = 5 the 16-term expansion itself is only good to about 2e-12.
TEST(NearOne, AgreesWithKummerAtOverlap) {
  EXPECT_LE(rel_err(cq::qtilde0_near_one(5.0, 1.05).value, cq::qtilde_kummer(0, 5.0, 1.05, 16).value), 5e-12);
  EXPECT_LE(rel_err(cq::qtilde1_near_one(5.0, 1.05).value, cq::qtilde_kummer(1, 5.0, 1.05, 16).value), 5e-12);
  EXPECT_LE(rel_err(cq::qtilde0_near_one(12.0, 1.05).value, cq::qtilde_kummer(0, 12.0, 1.05, 16).value), 1e-12);
}

// Halving the stop threshold moves the value by less than the reported estimate.
TEST(NearOne, TruncationEstimateIsHonest) {
  for (double tau : {0.0, 1.0, 5.0, 9.9}) {
    for (double x : {1.0001, 1.03, 1.09}) {
      const auto coarse = cq::qtilde0_near_one(tau, x, cq::SeriesControl{200, 1e-10});
      const auto fine = cq::qtilde0_near_one(tau, x, cq::SeriesControl{200, 5e-11});
      EXPECT_LE(std::abs(fine.value - coarse.value), coarse.error_estimate * std::abs(coarse.value))
          << tau << " " << x;
    }
  }
}

// Fixed budget of 8 terms: harder at larger tau.
TEST(NearOne, FixedBudgetErrorGrowsWithTau) {
  cq::SeriesControl ctl{8, 1e-16, true};
  const double low = rel_err(cq::qtilde0_near_one(0.1, 1.05, ctl).value, cq::testing::reference("region_a.csv", 0, 0.1, 1.05));
  const double high = rel_err(cq::qtilde0_near_one(20.0, 1.05, ctl).value, spot(0, 20.0, 1.05));
  EXPECT_GE(high, low);
  EXPECT_EQ(cq::qtilde0_near_one(20.0, 1.05, ctl).terms_used, 8);
}

TEST(NearOne, BudgetExhaustionIsAnError) {
  EXPECT_THROW(cq::qtilde0_near_one(200.0, 2.0), cq::NonConvergenceError);
  EXPECT_THROW(cq::qtilde0_near_one(200.0, 1.05, cq::SeriesControl{50, 1e-17}), cq::NonConvergenceError);
  EXPECT_THROW(cq::qtilde1_near_one(5.0, 1.05, 3), cq::NonConvergenceError);
}

TEST(NearOne, Guards) {
  EXPECT_THROW(cq::qtilde0_near_one(1.0, 1.0), cq::DomainError);
  EXPECT_THROW(cq::qtilde0_near_one(-1.0, 1.05), cq::DomainError);
  EXPECT_THROW(cq::qtilde1_near_one(1.0, 3.5), cq::DomainError);
}
