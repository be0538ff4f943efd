#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/transforms.hpp"

using namespace orlicz;

namespace {

constexpr double kTol = 1e-10;

std::vector<OrliczFunction> sample_functions() {
  return {OrliczFunction::power(2.0), normalize(OrliczFunction::power(1.5)), normalize(OrliczFunction::power(3.0)),
          OrliczFunction::power_log(1.3, 1.0), linear_extension(OrliczFunction::power(1.2), 0.7)};
}

WeightVector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& e : v) e = g(rng);
  return WeightVector(v);
}

}  // namespace

TEST(OrliczNorm, SquareIsEuclidean) {
  EXPECT_NEAR(orlicz_norm(OrliczFunction::power(2.0), {3.0, 4.0}), 5.0, 1e-12);
}

TEST(OrliczNorm, UnitVectorIsReciprocalOfInverse) {
  for (const auto& m : sample_functions()) {
    EXPECT_NEAR(orlicz_norm(m, {0.0, 1.0, 0.0}), 1.0 / m.inverse_at_one(), 1e-11) << m.describe();
  }
  EXPECT_NEAR(orlicz_norm(OrliczFunction::power(3.0, 8.0), {1.0}), 2.0, 1e-12);
}

TEST(OrliczNorm, OnesUnderNormalizedPower) {
  // n (1/rho)^1.5 = 1 while 1/rho stays below the kink.
  const auto m = normalize(OrliczFunction::power(1.5));
  for (std::size_t n : {1u, 2u, 5u, 64u}) {
    EXPECT_NEAR(orlicz_norm(m, WeightVector(std::vector<double>(n, 1.0))), std::pow(double(n), 1.0 / 1.5),
                1e-10 * n);
  }
}

TEST(OrliczNorm, ZeroVectorIsZero) { EXPECT_EQ(orlicz_norm(OrliczFunction::power(2.0), {0.0, 0.0}), 0.0); }

TEST(OrliczNorm, RejectsNonFiniteEntries) {
  EXPECT_THROW(WeightVector({1.0, NAN}), InvalidArgument);
  EXPECT_THROW(WeightVector({INFINITY}), InvalidArgument);
  EXPECT_THROW(WeightVector(std::vector<double>{}), InvalidArgument);
}

TEST(MusielakNorm, IdenticalMembersReduceToOrliczNorm) {
  const auto m = normalize(OrliczFunction::power(1.5));
  const MusielakFamily f({m, m, m});
  const WeightVector x{0.3, -2.0, 1.1};
  EXPECT_NEAR(musielak_norm(f, x), orlicz_norm(m, x), 1e-12);
}

TEST(MusielakNorm, Examples) {
  const auto sq = OrliczFunction::power(2.0);
  EXPECT_NEAR(musielak_norm(MusielakFamily({sq, sq}), {3.0, 4.0}), 5.0, 1e-12);
  const auto id = linear_extension(OrliczFunction::power(1.0), 1.0);
  const auto sq1 = linear_extension(sq, 1.0);
  EXPECT_NEAR(musielak_norm(MusielakFamily({id, sq1}), {1.0, 0.0}), 1.0, 1e-12);
}

TEST(MusielakNorm, LengthMismatch) {
  const auto sq = OrliczFunction::power(2.0);
  EXPECT_THROW(musielak_norm(MusielakFamily({sq, sq}), {1.0}), InvalidArgument);
  EXPECT_THROW(MusielakFamily(std::vector<OrliczFunction>{}), InvalidArgument);
}

TEST(NormProperties, Homogeneity) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lambda(-20.0, 20.0);
  for (const auto& m : sample_functions()) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_vector(rng, 1 + trial % 9);
      const double l = lambda(rng);
      const double base = orlicz_norm(m, x, kTol);
      EXPECT_NEAR(orlicz_norm(m, x.scaled(l), kTol), std::abs(l) * base, 2 * kTol * std::max(1.0, std::abs(l) * base));
    }
  }
}

TEST(NormProperties, TriangleInequality) {
  std::mt19937_64 rng(2);
  for (const auto& m : sample_functions()) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 1 + trial % 7;
      const auto x = random_vector(rng, n);
      const auto y = random_vector(rng, n);
      std::vector<double> s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = x[i] + y[i];
      EXPECT_LE(orlicz_norm(m, WeightVector(s), kTol), orlicz_norm(m, x, kTol) + orlicz_norm(m, y, kTol) + 3 * kTol);
    }
  }
}

TEST(NormProperties, ModularSaturation) {
  std::mt19937_64 rng(3);
  for (const auto& m : sample_functions()) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_vector(rng, 1 + trial % 11);
      EXPECT_NEAR(modular(m, x, orlicz_norm(m, x, kTol)), 1.0, kTol);
    }
  }
}

TEST(NormProperties, DependsOnlyOnFunctionBelowInverseAtOne) {
  // t^2 reaches 1 at t = 1, so kinks at 1 and at 2 give the same norm.
  const auto a = linear_extension(OrliczFunction::power(2.0), 1.0);
  const auto b = linear_extension(OrliczFunction::power(2.0), 2.0);
  EXPECT_NEAR(orlicz_norm(a, {3.0, 4.0}), 5.0, 1e-12);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_vector(rng, 1 + trial % 6);
    EXPECT_NEAR(orlicz_norm(a, x, kTol), orlicz_norm(b, x, kTol), 2 * kTol * std::max(1.0, orlicz_norm(a, x)));
  }
}

TEST(LpNorm, Values) {
  EXPECT_NEAR(lp_norm({3.0, -4.0}, 2.0), 5.0, 1e-14);
  EXPECT_NEAR(lp_norm({1.0, 1.0}, 1.0), 2.0, 1e-14);
  EXPECT_THROW(lp_norm({1.0}, 0.5), InvalidArgument);
}
