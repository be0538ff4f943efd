#include "orlicz/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "orlicz/errors.hpp"
#include "orlicz/generators.hpp"
#include "orlicz/transforms.hpp"

namespace orlicz {

namespace {

constexpr std::uint64_t kSuiteSeed = 20240521;
constexpr const char* kSuiteVersion = "suite-v1";

class Welford {
 public:
  void add(double v) {
    ++n_;
    const double d = v - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (v - mean_);
  }
  MCEstimate result() const {
    const double var = n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
    return {mean_, std::sqrt(var / static_cast<double>(n_)), n_};
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

void check_mc(std::size_t n_mc) {
  if (n_mc < kMinMcSamples) throw InvalidArgument("n_mc must be at least " + std::to_string(kMinMcSamples));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

template <class Estimate, class Norm>
EquivalenceReport run(std::string name, const VectorSuite& suite, const Sampler& base, std::uint64_t seed,
                      std::size_t n_mc, Estimate&& estimate, Norm&& norm) {
  check_mc(n_mc);
  if (suite.vectors.empty()) throw InvalidArgument("vector suite is empty");
  EquivalenceReport r;
  r.experiment = std::move(name);
  r.seed = seed;
  r.suite_version = suite.version;
  r.entries.resize(suite.vectors.size());
  parallel_for(suite.vectors.size(), [&](std::size_t i) {
    const auto& v = suite.vectors[i];
    const Sampler s = base.with_stream(i);
    const double nv = norm(v.x);
    const MCEstimate mc = estimate(v.x, s);
    r.entries[i] = {v.label, nv, mc, mc.mean / nv};
  });
  r.ratio_min = r.ratio_max = r.entries.front().ratio;
  for (const auto& e : r.entries) {
    r.ratio_min = std::min(r.ratio_min, e.ratio);
    r.ratio_max = std::max(r.ratio_max, e.ratio);
  }
  r.spread = r.ratio_max / r.ratio_min;
  r.config.emplace_back("n_mc", std::to_string(n_mc));
  r.config.emplace_back("n", std::to_string(suite.vectors.front().x.size()));
  return r;
}

}  // namespace

VectorSuite VectorSuite::scaled(double factor) const {
  VectorSuite out{version, {}};
  for (const auto& v : vectors) out.vectors.push_back({v.label, v.x.scaled(factor)});
  return out;
}

VectorSuite default_suite(std::size_t n) {
  if (n == 0) throw InvalidArgument("suite dimension must be >= 1");
  VectorSuite s{kSuiteVersion, {}};
  std::vector<double> e1(n, 0.0), ones(n, 1.0), geo(n), harm(n);
  e1[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    geo[i] = std::ldexp(1.0, -static_cast<int>(i));
    harm[i] = 1.0 / static_cast<double>(i + 1);
  }
  s.vectors.push_back({"e1", WeightVector(e1)});
  s.vectors.push_back({"ones", WeightVector(ones)});
  s.vectors.push_back({"geometric", WeightVector(geo)});
  s.vectors.push_back({"harmonic", WeightVector(harm)});
  std::mt19937_64 rng(kSuiteSeed);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < 4; ++k) {
    std::vector<double> g(n);
    double sq = 0.0;
    for (auto& v : g) {
      v = gauss(rng);
      sq += v * v;
    }
    for (auto& v : g) v /= std::sqrt(sq);
    s.vectors.push_back({"random" + std::to_string(k), WeightVector(g)});
  }
  return s;
}

MCEstimate expected_max(const WeightVector& x, const Sampler& s, std::size_t n_mc) {
  check_mc(n_mc);
  auto st = s.stream();
  Welford w;
  for (std::size_t r = 0; r < n_mc; ++r) {
    double best = 0.0;
    for (double xi : x.entries()) best = std::max(best, std::abs(xi * st.next()));
    w.add(best);
  }
  return w.result();
}

MCEstimate expected_norm_p(const WeightVector& x, const Sampler& s, double p, std::size_t n_mc) {
  check_mc(n_mc);
  if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1");
  auto st = s.stream();
  Welford w;
  for (std::size_t r = 0; r < n_mc; ++r) {
    // Scale by the largest term so that |x_i X_i|^p cannot overflow.
    double big = 0.0;
    thread_local std::vector<double> terms;
    terms.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      terms[i] = std::abs(x[i] * st.next());
      big = std::max(big, terms[i]);
    }
    double sum = 0.0;
    if (big > 0.0) {
      for (double t : terms) sum += p == 2.0 ? (t / big) * (t / big) : std::pow(t / big, p);
    }
    w.add(big > 0.0 ? big * (p == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / p)) : 0.0);
  }
  return w.result();
}

MCEstimate expected_signed_sum(const WeightVector& a, const Sampler& s, std::size_t n_mc) {
  check_mc(n_mc);
  auto st = s.stream();
  Welford w;
  for (std::size_t r = 0; r < n_mc; ++r) {
    double sum = 0.0;
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i % 64 == 0) bits = st.next_bits();
      const double sign = (bits >> (i % 64)) & 1u ? 1.0 : -1.0;
      sum += sign * a[i] * st.next();
    }
    w.add(std::abs(sum));
  }
  return w.result();
}

const ReportEntry& EquivalenceReport::entry(const std::string& label) const {
  for (const auto& e : entries) {
    if (e.label == label) return e;
  }
  throw InvalidArgument("no report entry labelled '" + label + "'");
}

EquivalenceReport max_equivalence_experiment(const OrliczFunction& m, const VectorSuite& suite,
                                             std::size_t n_mc, std::uint64_t seed) {
  const Sampler base(tail_from_orlicz_max(m), seed);
  auto r = run(
      "max", suite, base, seed, n_mc, [&](const WeightVector& x, const Sampler& s) { return expected_max(x, s, n_mc); },
      [&](const WeightVector& x) { return orlicz_norm(m, x); });
  r.config.emplace_back("function", m.describe());
  return r;
}

EquivalenceReport p_equivalence_experiment(const OrliczFunction& m, double p, const VectorSuite& suite,
                                           std::size_t n_mc, std::uint64_t seed) {
  const Sampler base(tail_from_orlicz_p(m, p), seed);
  auto r = run(
      "lp", suite, base, seed, n_mc,
      [&](const WeightVector& x, const Sampler& s) { return expected_norm_p(x, s, p, n_mc); },
      [&](const WeightVector& x) { return orlicz_norm(m, x); });
  r.config.emplace_back("function", m.describe());
  r.config.emplace_back("p", fmt(p));
  r.lower_bound_factor = std::pow(p - 1.0, 1.0 / p);
  return r;
}

EquivalenceReport embedding_experiment(const OrliczFunction& m, const VectorSuite& suite, std::size_t n_mc,
                                       std::uint64_t seed) {
  if (!check_two_concave(m, validation_grid(m))) {
    throw DomainError("embedding needs M''' <= 0, which fails on the validation grid");
  }
  const DensityModel density = density_from_orlicz_2(m);
  (void)density;  // validates the density; the sampler uses the equivalent tail
  const Sampler base(tail_from_orlicz_p(m, 2.0), seed);
  auto r = run(
      "embedding", suite, base, seed, n_mc,
      [&](const WeightVector& a, const Sampler& s) { return expected_signed_sum(a, s, n_mc); },
      [&](const WeightVector& a) { return orlicz_norm(m, a); });
  r.config.emplace_back("function", m.describe());
  return r;
}

EquivalenceReport pareto_generates_lp(double p, const VectorSuite& suite, std::size_t n_mc, std::uint64_t seed) {
  const Sampler base(log_gamma_tail(p), seed);
  auto r = run(
      "pareto", suite, base, seed, n_mc, [&](const WeightVector& x, const Sampler& s) { return expected_max(x, s, n_mc); },
      [&](const WeightVector& x) { return lp_norm(x, p); });
  r.config.emplace_back("p", fmt(p));
  return r;
}

double khintchine_check(const WeightVector& a, std::uint64_t seed) {
  if (a.is_zero()) throw InvalidArgument("Khintchine ratio needs a nonzero vector");
  const double l2 = lp_norm(a, 2.0);
  const std::size_t n = a.size();
  if (n <= 20) {
    // Fix eps_1 = +1; the remaining sign vectors cover every pair {eps, -eps} once.
    const std::uint64_t count = std::uint64_t{1} << (n - 1);
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      double sum = a[0];
      for (std::size_t i = 1; i < n; ++i) sum += ((mask >> (i - 1)) & 1u) ? a[i] : -a[i];
      total += std::abs(sum);
    }
    return total / static_cast<double>(count) / l2;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  constexpr std::size_t reps = std::size_t{1} << 20;
  double total = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    double sum = 0.0;
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i % 64 == 0) bits = rng();
      sum += ((bits >> (i % 64)) & 1u) ? a[i] : -a[i];
    }
    total += std::abs(sum);
  }
  return total / static_cast<double>(reps) / l2;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f) {
  const std::size_t workers = std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace orlicz
