#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "orlicz/generators.hpp"
#include "orlicz/transforms.hpp"

using namespace orlicz;

namespace {

OrliczFunction normalized_power(double q) { return normalize(OrliczFunction::power(q)); }

OrliczFunction smoothed_power(double q) { return smooth_kink_normalized(normalized_power(q), 1.1).smoothed; }

}  // namespace

TEST(ProductTail, PointMassScales) {
  const auto y = log_gamma_tail(2.0);
  const auto z = product_tail(point_mass_tail(3.0), y);
  for (double t : {0.5, 3.0, 4.5, 30.0, 1e3}) EXPECT_NEAR(z(t), y(t / 3.0), 1e-14) << t;
}

TEST(ProductTail, UnitFactorIsIdentity) {
  const auto mu = tail_from_orlicz_max(normalized_power(1.5));
  const auto z = product_tail(mu, point_mass_tail(1.0));
  for (double t : log_grid(0.1, 1e4, 50)) EXPECT_NEAR(z(t), mu(t), 1e-12) << t;
}

TEST(ProductTail, LpIdentity) {
  for (const auto& m : {smoothed_power(1.5), normalized_power(1.5), smoothed_power(1.2)}) {
    const auto z = product_tail(tail_from_orlicz_p(m, 2.0), log_gamma_tail(2.0));
    for (double t : log_grid(0.5 / m.kink(), 1e4 / m.kink(), 200)) {
      const double s = 1.0 / t;
      const double expected = t * m.kink() <= 1.0 ? 1.0 : s * m.eval(s, 1) - m(s);
      EXPECT_NEAR(z(t), expected, 1e-4) << t;
    }
  }
}

TEST(ProductTail, ResultIsAValidLaw) {
  const auto z = product_tail(tail_from_orlicz_p(normalized_power(1.5), 2.0), log_gamma_tail(2.0));
  EXPECT_NO_THROW(z.validate(log_grid(z.support_floor() / 2, z.support_floor() * 1e8, 400)));
}

TEST(Convolution, IdentityWithUnitPointMass) {
  const auto m = normalized_power(1.5);
  const auto grid = log_grid(0.3, 1e4, 128);
  EXPECT_LE(check_mult_convolution(m, m, point_mass_tail(1.0), grid).sup, 1e-12);
}

TEST(Convolution, WrongMixingLawIsDetected) {
  const auto m = normalized_power(1.5);
  const auto r = check_mult_convolution(m, m, point_mass_tail(2.0), log_grid(0.3, 1e4, 128));
  EXPECT_GT(r.sup, 0.1);
  EXPECT_GT(r.argmax, 0.0);
}

TEST(Convolution, LpMixingLawWithParetoMaxLaw) {
  // The max law of the normalized square is exactly log-gamma(1, 2).
  const auto m = smoothed_power(1.5);
  const auto mu = tail_from_orlicz_p(m, 2.0);
  const auto grid = log_grid(0.5 / m.kink(), 1e4 / m.kink(), 256);
  EXPECT_LE(check_mult_convolution(m, normalized_power(2.0), mu, grid).sup, 1e-4);
}

TEST(InducedOrlicz, UnitPointMassGivesBackN) {
  const auto n = normalized_power(1.5);
  const auto induced = induced_orlicz(point_mass_tail(1.0), n);
  EXPECT_TRUE(check_equivalent(induced, n, 1.01, 1.01, linear_grid(0.0, 3.0 * n.kink(), 300)));
}

TEST(InducedOrlicz, LpMixingRecoversM) {
  const auto m = smoothed_power(1.5);
  const auto induced = induced_orlicz(tail_from_orlicz_p(m, 2.0), normalized_power(2.0));
  EXPECT_LE(sup_difference(induced, m, roundtrip_grid(m.kink())), 1e-4);
  for (double s : linear_grid(0.0, 2.0 * induced.kink(), 300)) EXPECT_GE(induced.eval(s, 2), -1e-12);
}
