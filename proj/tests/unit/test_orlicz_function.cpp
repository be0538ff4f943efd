#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/hermite.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/transforms.hpp"

using namespace orlicz;

namespace {

OrliczFunction square_with_kink(double t) { return linear_extension(OrliczFunction::power(2.0), t); }

double central_difference(const OrliczFunction& m, double t, int order, double h) {
  return (m.eval(t + h, order) - m.eval(t - h, order)) / (2.0 * h);
}

}  // namespace

TEST(Eval, SquareInsideBody) { EXPECT_DOUBLE_EQ(square_with_kink(1.0).eval(0.5, 0), 0.25); }

TEST(Eval, AffineRegionHasZeroCurvature) {
  const auto m = square_with_kink(1.0);
  EXPECT_EQ(m.eval(2.0, 2), 0.0);
  EXPECT_EQ(m.eval(2.0, 3), 0.0);
  EXPECT_DOUBLE_EQ(m.eval(2.0, 1), 2.0);
  EXPECT_DOUBLE_EQ(m.eval(3.5, 0), 1.0 + 2.0 * 2.5);
}

TEST(Eval, ThirdDerivativeOfPower) {
  // d^3/dt^3 t^1.5 = 1.5 * 0.5 * (-0.5) t^-1.5
  EXPECT_NEAR(OrliczFunction::power(1.5).eval(0.25, 3), -3.0, 1e-12);
}

TEST(Eval, RejectsNegativeArgumentAndBadOrder) {
  const auto m = OrliczFunction::power(2.0);
  EXPECT_THROW(m.eval(-1.0, 0), InvalidArgument);
  EXPECT_THROW(m.eval(1.0, 4), InvalidArgument);
  EXPECT_THROW(m.eval(1.0, -1), InvalidArgument);
}

TEST(Eval, PowerLogDerivativesMatchFiniteDifferences) {
  const auto m = OrliczFunction::power_log(1.7, 0.8);
  for (double t : {0.05, 0.3, 1.0, 2.5, 7.0}) {
    for (int order = 0; order < 3; ++order) {
      const double fd = central_difference(m, t, order, 1e-5 * t);
      EXPECT_NEAR(m.eval(t, order + 1), fd, 1e-6 * std::max(1.0, std::abs(fd))) << "t=" << t << " order=" << order;
    }
  }
}

TEST(Eval, ScaleMultipliesValuesAndDerivatives) {
  const auto m = OrliczFunction::power(3.0, 4.0);
  EXPECT_DOUBLE_EQ(m.eval(0.5, 0), 0.5);
  EXPECT_DOUBLE_EQ(m.eval(0.5, 1), 3.0);
  EXPECT_DOUBLE_EQ(m.scaled(0.5).eval(0.5, 0), 0.25);
}

TEST(Construction, RejectsTailBendingDownward) {
  auto body = std::make_shared<PowerBody>(2.0);
  EXPECT_THROW(OrliczFunction(body, 1.0, 1.0), DomainError);
  EXPECT_NO_THROW(OrliczFunction(body, 1.0, 2.0));
  // A steeper tail is a slope jump, which is still convex.
  const OrliczFunction jumpy(body, 1.0, 3.0);
  ASSERT_EQ(jumpy.slope_jumps().size(), 1u);
  EXPECT_DOUBLE_EQ(jumpy.slope_jumps()[0].first, 1.0);
  EXPECT_DOUBLE_EQ(jumpy.slope_jumps()[0].second, 1.0);
}

TEST(Construction, RejectsPowerBelowOne) { EXPECT_THROW(OrliczFunction::power(0.5), InvalidArgument); }

TEST(InverseAtOne, ClosedForms) {
  EXPECT_NEAR(OrliczFunction::power(2.0).inverse_at_one(), 1.0, 1e-14);
  EXPECT_NEAR(OrliczFunction::power(3.0, 8.0).inverse_at_one(), 0.5, 1e-14);
  // Beyond the kink: t^2 kinked at 0.5 reaches 1 on the affine part, 0.25 + (t - 0.5) = 1.
  EXPECT_NEAR(square_with_kink(0.5).inverse_at_one(), 1.25, 1e-14);
}

TEST(Tabulated, ConstantSecondDerivativeGivesSquare) {
  const std::vector<double> t{0.0, 0.5, 1.0, 2.0};
  const std::vector<double> m2{2.0, 2.0, 2.0, 2.0};
  const auto m = OrliczFunction::from_second_derivative(t, m2);
  for (double x : {0.1, 0.7, 1.3, 1.99}) {
    EXPECT_NEAR(m.eval(x, 0), x * x, 1e-14);
    EXPECT_NEAR(m.eval(x, 1), 2.0 * x, 1e-14);
    EXPECT_NEAR(m.eval(x, 3), 0.0, 1e-14);
  }
}

TEST(Tabulated, LinearSecondDerivativeGivesCube) {
  std::vector<double> t, m2;
  for (int i = 0; i <= 20; ++i) {
    t.push_back(0.1 * i);
    m2.push_back(6.0 * 0.1 * i);
  }
  const auto m = OrliczFunction::from_second_derivative(t, m2);
  for (double x : {0.05, 0.55, 1.23, 1.95}) {
    EXPECT_NEAR(m.eval(x, 0), x * x * x, 1e-12);
    EXPECT_NEAR(m.eval(x, 2), 6.0 * x, 1e-12);
  }
}

TEST(Tabulated, RejectsNegativeCurvatureAndBadRows) {
  const std::vector<double> t{0.0, 1.0};
  EXPECT_THROW(OrliczFunction::from_second_derivative(t, std::vector<double>{1.0, -1.0}), DomainError);
  EXPECT_THROW(OrliczFunction::from_second_derivative(std::vector<double>{0.0}, std::vector<double>{1.0}),
               InvalidArgument);
}

TEST(Tabulated, DerivativesAreConsistent) {
  const std::vector<double> t{0.0, 0.3, 0.8, 1.0, 1.7, 2.5};
  const std::vector<double> m2{3.0, 2.5, 1.0, 0.9, 0.4, 0.0};
  const auto m = OrliczFunction::from_second_derivative(t, m2);
  for (double x : {0.1, 0.5, 0.9, 1.4, 2.2}) {
    EXPECT_NEAR(m.eval(x, 1), central_difference(m, x, 0, 1e-6), 1e-7);
    EXPECT_NEAR(m.eval(x, 2), central_difference(m, x, 1, 1e-6), 1e-7);
  }
}

TEST(Grids, Endpoints) {
  const auto g = log_grid(1e-3, 10.0, 5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g.front(), 1e-3);
  EXPECT_DOUBLE_EQ(g.back(), 10.0);
  EXPECT_NEAR(g[2], 0.1, 1e-15);
  const auto v = validation_grid(square_with_kink(2.0));
  ASSERT_EQ(v.size(), 512u);
  EXPECT_NEAR(v.front(), 2e-6, 1e-18);
  EXPECT_DOUBLE_EQ(v.back(), 2.0);
}

TEST(Hermite, PowerBasisReproducesCubic) {
  // p(h) = 1 + 2h - h^2 + 0.5 h^3 on width 2
  auto p = [](double h) { return 1 + 2 * h - h * h + 0.5 * h * h * h; };
  auto dp = [](double h) { return 2 - 2 * h + 1.5 * h * h; };
  const auto c = hermite::to_power_basis(2.0, p(0), p(2), dp(0), dp(2));
  EXPECT_NEAR(c[0], 1.0, 1e-14);
  EXPECT_NEAR(c[1], 2.0, 1e-14);
  EXPECT_NEAR(c[2], -1.0, 1e-14);
  EXPECT_NEAR(c[3], 0.5, 1e-14);
}

TEST(Hermite, MonotoneSlopesKeepMonotoneData) {
  const std::vector<double> x{0, 1, 2, 3, 4, 5};
  const std::vector<double> y{0, 0, 0.1, 5, 5.1, 5.1};
  const auto m = hermite::monotone_slopes(x, y);
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const auto c = hermite::to_power_basis(1.0, y[k], y[k + 1], m[k], m[k + 1]);
    double prev = c[0];
    for (int i = 1; i <= 100; ++i) {
      const double h = i / 100.0;
      const double v = c[0] + h * (c[1] + h * (c[2] + h * c[3]));
      EXPECT_GE(v, prev - 1e-12);
      prev = v;
    }
  }
}

TEST(Hermite, LimiterZeroesWrongSign) {
  double m0 = -1.0, m1 = 10.0;
  hermite::limit_slopes(1.0, m0, m1);
  EXPECT_EQ(m0, 0.0);
  EXPECT_LE(m1, 3.0 + 1e-12);
}
