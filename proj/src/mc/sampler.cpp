#include "orlicz/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/errors.hpp"
#include "orlicz/hermite.hpp"

namespace orlicz {

namespace {

constexpr std::size_t kLevels = 2048;
constexpr double kMinProb = 1e-14;
constexpr double kRelTol = 1e-10;

}  // namespace

struct Sampler::Table {
  TailFunction src;
  double log_min = std::log(kMinProb);
  double step = (std::log(0.5) - std::log(kMinProb)) / static_cast<double>(kLevels - 1);
  // log Q at u_i (lower) and at 1 - v_i (upper), u_i = v_i = exp(log_min + i step).
  std::vector<double> lower, upper;
  // Monotone Hermite node slopes of lower/upper against the level index.
  std::vector<double> lower_slope, upper_slope;
  // Cells [i, i+1] whose interpolation is unreliable; solved exactly.
  std::vector<char> lower_exact, upper_exact;
  struct Band {
    double lo, hi, location;
  };
  std::vector<Band> bands;

  explicit Table(TailFunction s) : src(std::move(s)) {
    // One ghost node past u = 0.5 on each table keeps the end slopes centred.
    lower.resize(kLevels + 1);
    upper.resize(kLevels + 1);
    lower_exact.assign(kLevels - 1, 0);
    upper_exact.assign(kLevels - 1, 0);
    for (const auto& a : src.atoms()) {
      const double lo = src(a.location);
      bands.push_back({lo, lo + a.mass, a.location});
    }
    // Levels in order of increasing quantile so the hint stays below the answer.
    double hint = src.support_floor();
    for (std::size_t i = 0; i < kLevels; ++i) upper[i] = std::log(solve(1.0 - level(i), hint));
    for (std::size_t i = kLevels; i-- > 0;) {
      lower[i] = std::log(solve(level(i), hint));
    }
    upper[kLevels] = std::log(exact(1.0 - level(kLevels)));
    lower[kLevels] = std::log(exact(level(kLevels)));
    std::vector<double> index(kLevels + 1);
    for (std::size_t i = 0; i <= kLevels; ++i) index[i] = static_cast<double>(i);
    lower_slope = hermite::monotone_slopes(index, lower);
    upper_slope = hermite::monotone_slopes(index, upper);
    for (const auto& b : bands) {
      flag(b.lo);
      flag(b.hi);
    }
    for (double b : src.breakpoints()) {
      flag(src(b));
      flag(src.at_least(b));
    }
  }

  double level(std::size_t i) const { return std::exp(log_min + step * static_cast<double>(i)); }

  // Marks the cells around level u, and their neighbours, in both tables:
  // a kink near u = 0.5 also spoils the ghost slope of the other table.
  void flag(double u) {
    if (!(u > 0.0) || !(u < 1.0)) return;
    mark(lower_exact, (std::log(u) - log_min) / step);
    mark(upper_exact, (std::log1p(-u) - log_min) / step);
  }

  static void mark(std::vector<char>& flags, double x) {
    if (!(x >= 0.0) || x > static_cast<double>(kLevels) + 1.0) return;
    const auto i = std::min(static_cast<std::size_t>(x), kLevels - 2);
    flags[i] = 1;
    if (i > 0) flags[i - 1] = 1;
    if (i + 1 < kLevels - 1) flags[i + 1] = 1;
  }

  // inf{t : P(X > t) <= u} by geometric bisection; `hint` is a point known to
  // lie at or below the answer and is advanced on return.
  double solve(double u, double& hint) const {
    for (const auto& b : bands) {
      if (u >= b.lo && u < b.hi) return b.location;
    }
    const double floor = src.support_floor();
    double lo = std::max(0.5 * floor, 0.5 * hint);
    double hi = std::max(floor, hint);
    int guard = 0;
    while (src(hi) > u) {
      lo = hi;
      hi *= 2.0;
      if (++guard > 4000 || !std::isfinite(hi)) throw DomainError("tail does not vanish; cannot invert");
    }
    while (hi > lo * (1.0 + kRelTol)) {
      const double mid = std::sqrt(lo * hi);
      if (mid <= lo || mid >= hi) break;
      (src(mid) > u ? lo : hi) = mid;
    }
    hint = hi;
    return hi;
  }

  double exact(double u) const {
    double hint = src.support_floor();
    return solve(u, hint);
  }

  double quantile(double u) const {
    for (const auto& b : bands) {
      if (u >= b.lo && u < b.hi) return b.location;
    }
    const bool is_lower = u <= 0.5;
    const double x = (std::log(is_lower ? u : 1.0 - u) - log_min) / step;
    const auto& table = is_lower ? lower : upper;
    const auto& slopes = is_lower ? lower_slope : upper_slope;
    const auto& flags = is_lower ? lower_exact : upper_exact;
    if (!is_lower && x < 0.0) return std::exp(upper.front());
    const std::size_t i = x < 0.0 ? 0 : std::min(static_cast<std::size_t>(x), kLevels - 2);
    if (flags[i]) return exact(u);
    const double h = std::min(x - static_cast<double>(i), 1.0);
    const auto c = hermite::to_power_basis(1.0, table[i], table[i + 1], slopes[i], slopes[i + 1]);
    return std::exp(c[0] + h * (c[1] + h * (c[2] + h * c[3])));
  }
};

Sampler::Sampler(TailFunction source, std::uint64_t seed, std::uint64_t stream_id)
    : Sampler(std::make_shared<const Table>(std::move(source)), seed, stream_id) {}

Sampler::Sampler(std::shared_ptr<const Table> table, std::uint64_t seed, std::uint64_t stream_id)
    : table_(std::move(table)), seed_(seed), stream_id_(stream_id) {}

double Sampler::quantile(double u) const {
  if (!(u > 0.0) || !(u < 1.0)) throw InvalidArgument("quantile level must lie in (0, 1)");
  return table_->quantile(u);
}

double Sampler::exact_quantile(double u) const {
  if (!(u > 0.0) || !(u < 1.0)) throw InvalidArgument("quantile level must lie in (0, 1)");
  return table_->exact(u);
}

const TailFunction& Sampler::source() const { return table_->src; }

Sampler Sampler::with_stream(std::uint64_t stream_id) const { return Sampler(table_, seed_, stream_id); }

std::vector<double> Sampler::sample(std::size_t n) const {
  if (n == 0) throw InvalidArgument("sample size must be >= 1");
  Stream s = stream();
  std::vector<double> out(n);
  for (auto& v : out) v = s.next();
  return out;
}

Sampler::Stream Sampler::stream() const { return Stream(table_, seed_, stream_id_); }

Sampler::Stream::Stream(std::shared_ptr<const Table> table, std::uint64_t seed, std::uint64_t stream_id)
    : table_(std::move(table)) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
  engine_.seed(seq);
}

double Sampler::Stream::next_uniform() {
  // 53 random bits, shifted half a step so that 0 is never returned.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Sampler::Stream::next() { return table_->quantile(next_uniform()); }

}  // namespace orlicz
