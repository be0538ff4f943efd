#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/quadrature.hpp"

using namespace orlicz;

TEST(Quadrature, Polynomial) {
  EXPECT_NEAR(quad::integrate([](double x) { return x * x; }, 0.0, 1.0), 1.0 / 3.0, 1e-14);
}

TEST(Quadrature, KinkedIntegrandWithBreakpoint) {
  const std::vector<double> br{0.3};
  const double v = quad::integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, br);
  EXPECT_NEAR(v, 0.5 * (0.09 + 0.49), 1e-14);
}

TEST(Quadrature, EndpointSingularity) {
  // x^0.2 has an unbounded derivative at 0.
  EXPECT_NEAR(quad::integrate([](double x) { return std::pow(x, 0.2); }, 0.0, 1.0), 1.0 / 1.2, 1e-10);
}

TEST(Quadrature, ToInfinity) {
  EXPECT_NEAR(quad::integrate_to_infinity([](double x) { return 1.0 / (x * x); }, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(quad::integrate_to_infinity([](double x) { return std::pow(x, -1.2); }, 2.0),
              std::pow(2.0, -0.2) / 0.2, 1e-8);
  EXPECT_NEAR(quad::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.5), std::exp(-0.5), 1e-12);
  EXPECT_THROW(quad::integrate_to_infinity([](double) { return 1.0; }, 0.0), InvalidArgument);
}
