#include "orlicz/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orlicz/errors.hpp"
#include "orlicz/quadrature.hpp"

namespace orlicz {

double normalization_integral(const OrliczFunction& m) {
  if (!m.has_affine_tail()) return std::numeric_limits<double>::infinity();
  const double t = m.kink();
  return t * m.tail_slope() - m(t);
}

double normalization_integral_by_quadrature(const OrliczFunction& m) {
  if (!m.has_affine_tail()) return std::numeric_limits<double>::infinity();
  const double t = m.kink();
  const auto breaks = m.breakpoints();
  double total = quad::integrate([&](double x) { return x * m.eval(x, 2); }, 0.0, t, breaks);
  for (auto [x, jump] : m.slope_jumps()) total += x * jump;
  return total;
}

bool is_normalized(const OrliczFunction& m, double tol) {
  return std::abs(normalization_integral(m) - 1.0) <= tol;
}

OrliczFunction normalize(const OrliczFunction& m) {
  const double end = m.body_domain();
  auto g = [&](double t) { return t * m.body_eval(t, 1) - m.body_eval(t, 0); };
  double hi = std::min(1.0, end);
  while (g(hi) < 1.0) {
    if (hi >= end || hi > 1e15) {
      throw DomainError("function is not normalizable: sup_T (T M'(T) - M(T)) < 1 on its domain");
    }
    hi = std::min(2.0 * hi, end);
  }
  double lo = 0.0;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) < 1.0 ? lo : hi) = mid;
  }
  const double t = std::abs(g(lo) - 1.0) < std::abs(g(hi) - 1.0) && lo > 0.0 ? lo : hi;
  return m.with_kink(t);
}

OrliczFunction linear_extension(const OrliczFunction& m, double t) {
  if (!(t > 0.0)) throw InvalidArgument("extension point must be positive");
  return m.with_kink(t);
}

bool check_two_concave(const OrliczFunction& m, std::span<const double> grid, double tol) {
  return std::all_of(grid.begin(), grid.end(), [&](double t) { return m.eval(t, 3) <= tol; });
}

bool check_second_derivative_decreasing(const OrliczFunction& m, std::span<const double> grid,
                                        double tol) {
  std::vector<double> g(grid.begin(), grid.end());
  std::sort(g.begin(), g.end());
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double a = m.eval(g[i], 2);
    const double b = m.eval(g[i + 1], 2);
    if (b > a + tol * std::max(1.0, std::abs(a))) return false;
  }
  return true;
}

bool satisfies_two_concavity_inequality(const OrliczFunction& m, std::span<const double> grid,
                                        double tol) {
  return std::all_of(grid.begin(), grid.end(), [&](double t) {
    const double d1 = m.eval(t, 1);
    return t * m.eval(t, 2) <= d1 + tol * std::max(1.0, std::abs(d1));
  });
}

bool check_equivalent(const OrliczFunction& m, const OrliczFunction& n, double a, double b,
                      std::span<const double> grid) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("equivalence constants must be positive");
  constexpr double rel = 1e-12;
  for (double t : grid) {
    const double nt = n(t);
    if (m(t / b) / a > nt * (1.0 + rel)) return false;
    if (nt > a * m(b * t) * (1.0 + rel)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// SmoothedBody

SmoothedBody::SmoothedBody(OrliczFunction base, double start, double kink)
    : base_(std::move(base)), start_(start), kink_(kink) {
  if (!(start > 0.0) || !(kink > start)) throw InvalidArgument("smoothing interval must satisfy 0 < a < T");
  if (kink > base_.kink()) throw InvalidArgument("smoothing interval extends past the kink");
  ramp_top_ = base_.eval(start_, 2);

  // Split [start, kink] into runs where min(M'', ramp) is attained by one side.
  auto diff = [&](double t) { return base_.left_eval(t, 2) - ramp(t); };
  constexpr int cells = 256;
  const double w = (kink_ - start_) / cells;
  std::vector<double> cuts{start_};
  bool prev_ramp = diff(start_ + 0.5 * w) > 0.0;
  std::vector<bool> kinds{prev_ramp};
  for (int i = 1; i < cells; ++i) {
    const double mid = start_ + (i + 0.5) * w;
    const bool is_ramp = diff(mid) > 0.0;
    if (is_ramp != prev_ramp) {
      double lo = mid - w, hi = mid;
      for (int it = 0; it < 200; ++it) {
        const double c = 0.5 * (lo + hi);
        if (c <= lo || c >= hi) break;
        ((diff(c) > 0.0) == prev_ramp ? lo : hi) = c;
      }
      cuts.push_back(hi);
      kinds.push_back(is_ramp);
      prev_ramp = is_ramp;
    }
  }
  cuts.push_back(kink_);

  double slope = base_.eval(start_, 1);
  double value = base_.eval(start_, 0);
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    Segment s{cuts[i], cuts[i + 1], kinds[i], slope, value};
    segments_.push_back(s);
    slope = eval_segment(s, s.end, 1);
    value = eval_segment(s, s.end, 0);
  }
}

double SmoothedBody::ramp(double t) const { return ramp_top_ * (kink_ - t) / (kink_ - start_); }

double SmoothedBody::eval_segment(const Segment& s, double t, int order) const {
  const double h = t - s.begin;
  if (s.ramp) {
    const double a = ramp(s.begin);
    const double b = -ramp_top_ / (kink_ - start_);
    switch (order) {
      case 0:
        return s.value + s.slope * h + a * h * h / 2 + b * h * h * h / 6;
      case 1:
        return s.slope + a * h + b * h * h / 2;
      case 2:
        return std::max(0.0, a + b * h);
      default:
        return b;
    }
  }
  switch (order) {
    case 0:
      return s.value + s.slope * h +
             (base_.eval(t, 0) - base_.eval(s.begin, 0) - base_.eval(s.begin, 1) * h);
    case 1:
      return s.slope + base_.left_eval(t, 1) - base_.eval(s.begin, 1);
    default:
      return base_.left_eval(t, order);
  }
}

double SmoothedBody::eval(double t, int order) const {
  if (order < 0 || order > 3) throw InvalidArgument("derivative order must be in 0..3");
  if (t < start_) return base_.eval(t, order);
  for (const auto& s : segments_) {
    if (t < s.end) return eval_segment(s, t, order);
  }
  return eval_segment(segments_.back(), std::min(t, kink_), order);
}

double SmoothedBody::left_eval(double t, int order) const {
  if (order < 0 || order > 3) throw InvalidArgument("derivative order must be in 0..3");
  if (t <= start_) return base_.left_eval(t, order);
  for (const auto& s : segments_) {
    if (t <= s.end) return eval_segment(s, t, order);
  }
  return eval_segment(segments_.back(), std::min(t, kink_), order);
}

std::vector<double> SmoothedBody::breakpoints() const {
  std::vector<double> out;
  for (double b : base_.breakpoints()) {
    if (b < start_) out.push_back(b);
  }
  for (const auto& s : segments_) out.push_back(s.begin);
  return out;
}

std::string SmoothedBody::describe() const {
  std::ostringstream os;
  os.precision(12);
  os << "smoothed[" << base_.describe() << "; ramp on [" << start_ << "," << kink_ << "]]";
  return os.str();
}

// ---------------------------------------------------------------------------

SmoothingResult approx_smooth_kink(const OrliczFunction& m, double c) {
  if (!(c > 1.0) || !std::isfinite(c)) throw InvalidArgument("smoothing constant c must be > 1");
  if (!m.has_affine_tail()) throw DomainError("smoothing needs an affine tail beyond a finite kink");
  const double t = m.kink();
  const double top = m.left_eval(t, 2);
  if (!(top > 1e-14 * std::max(1.0, m.left_eval(t, 1) / t))) return {m, 0.0};

  auto max_second = [&](double a) {
    double best = 0.0;
    constexpr int samples = 64;
    for (int j = 0; j <= samples; ++j) {
      const double x = a + (t - a) * j / samples;
      best = std::max(best, j == samples ? m.left_eval(x, 2) : m.eval(x, 2));
    }
    return best;
  };
  auto feasible = [&](double delta) {
    const double a = t * (1.0 - delta);
    return t * delta * delta * max_second(a) <= (c - 1.0) * m(a);
  };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (feasible(mid) ? lo : hi) = mid;
  }
  if (!(lo > 0.0)) throw DomainError("no admissible smoothing width");
  const double delta = lo;
  auto body = std::make_shared<const SmoothedBody>(m, t * (1.0 - delta), t);
  const double slope = body->left_eval(t, 1);
  return {OrliczFunction(std::move(body), t, slope, 1.0), delta};
}

SmoothingResult smooth_kink_normalized(const OrliczFunction& m, double c) {
  auto r = approx_smooth_kink(m, c);
  if (r.delta == 0.0) return r;
  const double target = normalization_integral(m);
  const double have = normalization_integral(r.smoothed);
  return {r.smoothed.scaled(target / have), r.delta};
}

}  // namespace orlicz
