#include <gtest/gtest.h>

#include "conicalq/dispatcher.hpp"
#include "../test_support.hpp"

namespace cq = conicalq;

namespace {

double worst_error(const std::string& file, double tau_min, double tau_max) {
  double worst = 0.0;
  for (const auto& row : cq::testing::fixtures(file).rows) {
    if (row.tau < tau_min || row.tau > tau_max) continue;
    const auto e = cq::compute_qtilde({row.m, row.tau, row.x});
    worst = std::max(worst, cq::relative_difference(cq::ScaledValue::from_double(e.value), row.reference));
  }
  return worst;
}

}  // namespace

TEST(FixtureRegions, NearOneRegion) { EXPECT_LE(worst_error("region_a.csv", 0.0, 10.0), 5e-13); }

TEST(FixtureRegions, LargeTauRegion) { EXPECT_LE(worst_error("region_b.csv", 10.0, 200.0), 5e-13); }

TEST(FixtureRegions, LargeXRegion) { EXPECT_LE(worst_error("region_c.csv", 0.0, 200.0), 5e-13); }

TEST(FixtureRegions, SpotValues) { EXPECT_LE(worst_error("spot.csv", 0.0, 200.0), 1e-12); }
