#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/generators.hpp"
#include "orlicz/sampler.hpp"
#include "orlicz/transforms.hpp"

using namespace orlicz;

namespace {

OrliczFunction normalized_power(double q) { return normalize(OrliczFunction::power(q)); }

OrliczFunction smoothed_power(double q) { return smooth_kink_normalized(normalized_power(q), 1.1).smoothed; }

double empirical_tail(const std::vector<double>& sorted, double t) {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
  return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

// Max deviation between empirical and true tail at 20 probe points spread
// over the quantiles of the law.
double probe_deviation(const TailFunction& d, std::vector<double> draws) {
  std::sort(draws.begin(), draws.end());
  const Sampler exact(d);
  double worst = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double t = exact.exact_quantile(std::pow(10.0, -0.2 * k));
    worst = std::max(worst, std::abs(empirical_tail(draws, t) - d(t)));
  }
  return worst;
}

}  // namespace

TEST(Sampler, PointMassAlwaysHitsLocation) {
  const Sampler s(point_mass_tail(2.5), 3);
  for (double v : s.sample(1000)) EXPECT_EQ(v, 2.5);
}

TEST(Sampler, ParetoTailProbability) {
  const std::size_t n = 1000000;
  const auto draws = Sampler(log_gamma_tail(2.0), 1).sample(n);
  const double freq = std::count_if(draws.begin(), draws.end(), [](double v) { return v > 2.0; }) / double(n);
  EXPECT_NEAR(freq, 0.25, 3.0 * std::sqrt(0.25 * 0.75 / n));
}

TEST(Sampler, AtomFrequency) {
  const auto m = normalized_power(1.5);
  const double loc = 1.0 / m.kink();
  const std::size_t n = 1000000;
  const auto draws = Sampler(tail_from_orlicz_p(m, 2.0), 2).sample(n);
  const double freq = std::count(draws.begin(), draws.end(), loc) / double(n);
  EXPECT_NEAR(freq, 0.75, 3.0 * std::sqrt(0.75 * 0.25 / n));
  EXPECT_TRUE(std::all_of(draws.begin(), draws.end(), [&](double v) { return v >= loc; }));
}

TEST(Sampler, ProbeDeviationForGeneratedLaws) {
  const std::size_t n = 200000;
  const std::vector<TailFunction> laws{log_gamma_tail(2.0),
                                       log_gamma_tail(1.3),
                                       tail_from_orlicz_max(normalized_power(1.5)),
                                       tail_from_orlicz_max(normalized_power(1.2)),
                                       tail_from_orlicz_p(smoothed_power(1.5), 2.0),
                                       tail_from_orlicz_p(normalized_power(1.5), 2.0),
                                       tail_from_orlicz_p(normalized_power(3.0), 4.0),
                                       product_tail(point_mass_tail(2.0), log_gamma_tail(3.0))};
  std::uint64_t seed = 10;
  for (const auto& d : laws) {
    EXPECT_LE(probe_deviation(d, Sampler(d, seed++).sample(n)), 4.0 / std::sqrt(double(n))) << d.label();
  }
}

TEST(Sampler, TableMatchesExactInverse) {
  for (const auto& d : {log_gamma_tail(2.0), tail_from_orlicz_p(smoothed_power(1.5), 2.0),
                        tail_from_orlicz_p(normalized_power(1.5), 2.0)}) {
    const Sampler s(d);
    for (double u : log_grid(1e-12, 0.999999, 2000)) {
      const double a = s.quantile(u);
      const double b = s.exact_quantile(u);
      EXPECT_NEAR(a, b, 1e-6 * b) << d.label() << " u=" << u;
    }
  }
}

TEST(Sampler, RejectsBadLevels) {
  const Sampler s(log_gamma_tail(2.0));
  EXPECT_THROW(s.quantile(0.0), InvalidArgument);
  EXPECT_THROW(s.quantile(1.0), InvalidArgument);
  EXPECT_THROW(s.sample(0), InvalidArgument);
}

TEST(Sampler, ReproducibleStreams) {
  const Sampler a(log_gamma_tail(2.0), 42, 3);
  const Sampler b(log_gamma_tail(2.0), 42, 3);
  EXPECT_EQ(a.sample(1000), b.sample(1000));
  EXPECT_NE(a.sample(1000), a.with_stream(4).sample(1000));
  EXPECT_NE(a.sample(1000), Sampler(log_gamma_tail(2.0), 43, 3).sample(1000));
  EXPECT_EQ(a.with_stream(4).sample(100), Sampler(log_gamma_tail(2.0), 42, 4).sample(100));

  auto st = a.stream();
  const auto batch = a.sample(50);
  for (double v : batch) EXPECT_EQ(st.next(), v);
}

TEST(Sampler, ProductLawMatchesMaxLaw) {
  // X from the l_p law times independent log-gamma(1, 2) has the max law of M.
  const auto m = smoothed_power(1.5);
  const std::size_t n = 400000;
  const auto x = Sampler(tail_from_orlicz_p(m, 2.0), 5, 0).sample(n);
  const auto xi = Sampler(log_gamma_tail(2.0), 5, 1).sample(n);
  std::vector<double> prod(n);
  for (std::size_t i = 0; i < n; ++i) prod[i] = x[i] * xi[i];
  EXPECT_LE(probe_deviation(tail_from_orlicz_max(m), prod), 4.0 / std::sqrt(double(n)));
}
