#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/norms.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/sampler.hpp"

namespace orlicz {

inline constexpr std::size_t kDefaultMcSamples = 200000;
inline constexpr std::size_t kMinMcSamples = 100;

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::size_t n_samples = 0;
};

struct LabeledVector {
  std::string label;
  WeightVector x;
};

struct VectorSuite {
  std::string version;
  std::vector<LabeledVector> vectors;

  VectorSuite scaled(double factor) const;
};

// e1, all-ones, geometric 2^-i, harmonic 1/i and four random unit vectors
// (Gaussian directions from a fixed seed), all of length n.
VectorSuite default_suite(std::size_t n);

// Estimates over n_mc replications, each drawing len(x) values from the
// sampler's stream.
MCEstimate expected_max(const WeightVector& x, const Sampler& s, std::size_t n_mc);
MCEstimate expected_norm_p(const WeightVector& x, const Sampler& s, double p, std::size_t n_mc);
// E |sum_i a_i r_i X_i| with independent random signs r_i.
MCEstimate expected_signed_sum(const WeightVector& a, const Sampler& s, std::size_t n_mc);

struct ReportEntry {
  std::string label;
  double norm;
  MCEstimate mc;
  double ratio;
};

struct EquivalenceReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> config;  // echo of the inputs
  std::vector<ReportEntry> entries;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  double spread = 0.0;
  std::uint64_t seed = 0;
  std::string suite_version;
  // (p-1)^(1/p) for the l_p experiment, shown for context.
  std::optional<double> lower_bound_factor;

  const ReportEntry& entry(const std::string& label) const;
};

// Ratios E max_i |x_i X_i| / ||x||_M with X ~ tail_from_orlicz_max(M).
EquivalenceReport max_equivalence_experiment(const OrliczFunction& m, const VectorSuite& suite,
                                             std::size_t n_mc, std::uint64_t seed);

// Ratios E ||(x_i X_i)||_p / ||x||_M with X ~ tail_from_orlicz_p(M, p).
EquivalenceReport p_equivalence_experiment(const OrliczFunction& m, double p, const VectorSuite& suite,
                                           std::size_t n_mc, std::uint64_t seed);

// Ratios E |sum a_i r_i X_i| / ||a||_M with X distributed by density_from_orlicz_2(M).
// Requires M''' <= 0 on the validation grid.
EquivalenceReport embedding_experiment(const OrliczFunction& m, const VectorSuite& suite, std::size_t n_mc,
                                       std::uint64_t seed);

// Ratios E max_i |x_i xi_i| / ||x||_p with xi ~ log-gamma(1, p).
EquivalenceReport pareto_generates_lp(double p, const VectorSuite& suite, std::size_t n_mc,
                                      std::uint64_t seed);

// E |sum a_i eps_i| / ||a||_2 over independent random signs: exact enumeration
// for len(a) <= 20, otherwise 2^20 seeded Monte Carlo replications.
double khintchine_check(const WeightVector& a, std::uint64_t seed = 0);

// Runs f(i) for i in [0, count) on up to hardware_concurrency threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f);

}  // namespace orlicz
