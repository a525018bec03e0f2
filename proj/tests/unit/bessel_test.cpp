#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "conicalq/bessel.hpp"

namespace cq = conicalq;

namespace {

struct BesselCase {
  double x, j0, y0, j1, y1;
};

const BesselCase kCases[] = {
    {1.0, 0.76519768655796655145, 0.088256964215676957983, 0.44005058574493351596, -0.78121282130028871655},
    {0.001, 0.999999750000015625, -4.4714166113759232557, 0.00049999993750000261457, -636.62216723113941482},
    {5.0, -0.17759677131433830435, -0.30851762524903378007, -0.32757913759146522204, 0.1478631433912268448},
    {8.0, 0.17165080713755390609, 0.22352148938756622053, 0.23463634685391462438, -0.15806046173124749426},
    {12.5, 0.14688405470042110231, -0.17121430684466928735, -0.16548380461475971846, -0.15383825653750118008},
    {100.0, 0.019985850304223122424, -0.077244313365083152254, -0.077145352014112158033, -0.020372312002759793305},
    {10000.0, -0.0070961603533888014773, 0.0036478055589866058867, 0.0036474507555295803441, 0.007096342752536495135},
};

}  // namespace

TEST(Bessel, ReferenceValues) {
  for (const auto& c : kCases) {
    const auto p0 = cq::bessel_jy(0, c.x);
    const auto p1 = cq::bessel_jy(1, c.x);
    EXPECT_LE(std::abs(p0.j / c.j0 - 1.0), 1e-14) << "J0 " << c.x;
    EXPECT_LE(std::abs(p0.y / c.y0 - 1.0), 1e-14) << "Y0 " << c.x;
    EXPECT_LE(std::abs(p1.j / c.j1 - 1.0), 1e-14) << "J1 " << c.x;
    EXPECT_LE(std::abs(p1.y / c.y1 - 1.0), 1e-14) << "Y1 " << c.x;
  }
}

TEST(Bessel, SmallArgumentLimits) {
  EXPECT_NEAR(cq::bessel_jy(0, 1e-12).j, 1.0, 1e-16);
  EXPECT_NEAR(cq::bessel_jy(1, 1e-12).j, 0.0, 1e-12);
}

TEST(Bessel, FirstZeroOfJ0) {
  EXPECT_LT(std::abs(cq::bessel_jy(0, 2.404825557695773).j), 1e-14);
}

TEST(Bessel, WronskianOnLogGrid) {
  for (int i = 0; i <= 400; ++i) {
    const double x = std::pow(10.0, -3.0 + 8.0 * i / 400.0);
    const auto p0 = cq::bessel_jy(0, x);
    const auto p1 = cq::bessel_jy(1, x);
    const double w = p0.j * p1.y - p1.j * p0.y;
    const double want = -2.0 / (std::numbers::pi * x);
    EXPECT_LE(std::abs(w / want - 1.0), 5e-15) << "x=" << x;
  }
}

// d/dx Y0 = -Y1 and d/dx J0 = -J1; central differences in long double steps.
TEST(Bessel, DerivativeConsistency) {
  for (double x : {0.7, 3.1, 9.4, 27.0}) {
    const double h = 1e-5 * x;
    const double dy0 = (cq::bessel_jy(0, x + h).y - cq::bessel_jy(0, x - h).y) / (2 * h);
    const double dj0 = (cq::bessel_jy(0, x + h).j - cq::bessel_jy(0, x - h).j) / (2 * h);
    EXPECT_NEAR(-dy0, cq::bessel_jy(1, x).y, 1e-8) << x;
    EXPECT_NEAR(-dj0, cq::bessel_jy(1, x).j, 1e-8) << x;
  }
}

TEST(Hankel, ComponentsAndEnvelope) {
  const cq::Complex h = cq::hankel2(0, 1.0);
  EXPECT_EQ(h.real(), cq::bessel_jy(0, 1.0).j);
  EXPECT_EQ(h.imag(), -cq::bessel_jy(0, 1.0).y);
  const double x = 1e4;
  EXPECT_NEAR(std::abs(cq::hankel2(0, x)) * std::sqrt(std::numbers::pi * x / 2), 1.0, 1e-4);
}

TEST(Hankel, ModulusDecreasesBeyondOrigin) {
  for (int order : {0, 1}) {
    double prev = std::norm(cq::hankel2(order, 0.5));
    for (double x = 0.6; x < 200.0; x *= 1.1) {
      const double cur = std::norm(cq::hankel2(order, x));
      EXPECT_LT(cur, prev) << "order " << order << " x=" << x;
      prev = cur;
    }
  }
}

// exp(ix) H0(x) -> sqrt(2/(pi x)) exp(i pi/4)
TEST(Hankel, ScaledFormApproachesConstantPhase) {
  for (double x : {1e3, 1e4, 1e5}) {
    const cq::Complex v = cq::hankel2_scaled(0, x) * std::sqrt(std::numbers::pi * x / 2);
    EXPECT_NEAR(std::arg(v), std::numbers::pi / 4, 1.0 / x) << x;
    EXPECT_NEAR(std::abs(v), 1.0, 1.0 / x) << x;
  }
}

TEST(Bessel, Guards) {
  EXPECT_THROW(cq::bessel_jy(0, 0.0), cq::DomainError);
  EXPECT_THROW(cq::bessel_jy(0, -1.0), cq::DomainError);
  EXPECT_THROW(cq::bessel_jy(2, 1.0), cq::DomainError);
}
