#include "orlicz/orlicz_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orlicz/errors.hpp"
#include "orlicz/hermite.hpp"

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// q (q-1) ... (q-order+1)
double falling(double q, int order) {
  double c = 1.0;
  for (int j = 0; j < order; ++j) c *= q - j;
  return c;
}

void check_order(int order) {
  if (order < 0 || order > 3) throw InvalidArgument("derivative order must be in 0..3");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// PowerBody

PowerBody::PowerBody(double q) : q_(q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw InvalidArgument("power exponent must be >= 1");
}

double PowerBody::eval(double t, int order) const {
  check_order(order);
  const double c = falling(q_, order);
  if (c == 0.0) return 0.0;
  return c * std::pow(t, q_ - order);
}

double PowerBody::domain_end() const { return kInf; }

std::string PowerBody::describe() const { return "power(q=" + fmt(q_) + ")"; }

// ---------------------------------------------------------------------------
// PowerLogBody

PowerLogBody::PowerLogBody(double q, double r) : q_(q), r_(r) {
  if (!(q > 1.0) || !std::isfinite(q)) throw InvalidArgument("powerlog exponent q must be > 1");
  if (!std::isfinite(r)) throw InvalidArgument("powerlog exponent r must be finite");
}

double PowerLogBody::eval(double t, int order) const {
  check_order(order);
  const double u = 1.0 + t;
  const double L = 1.0 + std::log1p(t);
  const double L1 = 1.0 / u;
  const double L2 = -1.0 / (u * u);
  const double L3 = 2.0 / (u * u * u);
  const double r = r_;
  // Derivatives of g = L^r.
  const double g0 = std::pow(L, r);
  const double g1 = r * std::pow(L, r - 1.0) * L1;
  const double g2 = r * (r - 1.0) * std::pow(L, r - 2.0) * L1 * L1 + r * std::pow(L, r - 1.0) * L2;
  const double g3 = r * (r - 1.0) * (r - 2.0) * std::pow(L, r - 3.0) * L1 * L1 * L1 +
                    3.0 * r * (r - 1.0) * std::pow(L, r - 2.0) * L1 * L2 +
                    r * std::pow(L, r - 1.0) * L3;
  const double g[4] = {g0, g1, g2, g3};
  auto h = [&](int k) {
    const double c = falling(q_, k);
    return c == 0.0 ? 0.0 : c * std::pow(t, q_ - k);
  };
  static constexpr double binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  double sum = 0.0;
  for (int k = 0; k <= order; ++k) {
    const double hk = h(k);
    const double gk = g[order - k];
    if (hk == 0.0 || gk == 0.0) continue;
    sum += binom[order][k] * hk * gk;
  }
  return sum;
}

double PowerLogBody::domain_end() const { return kInf; }

std::string PowerLogBody::describe() const {
  return "powerlog(q=" + fmt(q_) + ",r=" + fmt(r_) + ")";
}

// ---------------------------------------------------------------------------
// PiecewiseBody

PiecewiseBody::PiecewiseBody(std::vector<double> knots, std::vector<Cubic> second,
                             std::vector<double> slopes, std::vector<double> values)
    : knots_(std::move(knots)),
      second_(std::move(second)),
      slopes_(std::move(slopes)),
      values_(std::move(values)) {
  const std::size_t k = knots_.size();
  if (k < 2 || second_.size() != k - 1 || slopes_.size() != k - 1 || values_.size() != k - 1) {
    throw InvalidArgument("PiecewiseBody: inconsistent table sizes");
  }
  if (knots_.front() != 0.0) throw InvalidArgument("PiecewiseBody: first knot must be 0");
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (!(knots_[i + 1] > knots_[i])) throw InvalidArgument("PiecewiseBody: knots must increase");
  }
}

std::shared_ptr<const PiecewiseBody> PiecewiseBody::from_second_derivative(
    std::span<const double> t_in, std::span<const double> m2_in) {
  if (t_in.size() != m2_in.size() || t_in.size() < 2) {
    throw InvalidArgument("tabulated M'' needs at least two (t, M2) rows");
  }
  std::vector<double> t(t_in.begin(), t_in.end());
  std::vector<double> m2(m2_in.begin(), m2_in.end());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(m2[i])) throw InvalidArgument("non-finite table entry");
    if (m2[i] < 0.0) throw DomainError("tabulated M'' must be nonnegative");
  }
  if (t.front() < 0.0) throw InvalidArgument("tabulated abscissae must be >= 0");
  if (t.front() > 0.0) {
    t.insert(t.begin(), 0.0);
    m2.insert(m2.begin(), m2.front());
  }
  const std::vector<double> g = hermite::monotone_slopes(t, m2);
  const std::size_t n = t.size();
  std::vector<Cubic> second(n - 1);
  std::vector<double> slopes(n - 1), values(n - 1);
  double slope = 0.0, value = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double w = t[k + 1] - t[k];
    second[k] = hermite::to_power_basis(w, m2[k], m2[k + 1], g[k], g[k + 1]);
    slopes[k] = slope;
    values[k] = value;
    const auto& c = second[k];
    value += slope * w + c[0] * w * w / 2 + c[1] * w * w * w / 6 + c[2] * std::pow(w, 4) / 12 +
             c[3] * std::pow(w, 5) / 20;
    slope += c[0] * w + c[1] * w * w / 2 + c[2] * w * w * w / 3 + c[3] * std::pow(w, 4) / 4;
  }
  return std::make_shared<const PiecewiseBody>(std::move(t), std::move(second), std::move(slopes),
                                               std::move(values));
}

std::shared_ptr<const PiecewiseBody> PiecewiseBody::from_first_derivative(
    std::vector<double> knots, std::span<const double> slope_right, std::span<const double> slope_left,
    std::span<const double> second_right, std::span<const double> second_left) {
  const std::size_t n = knots.size();
  if (n < 2 || slope_right.size() != n || slope_left.size() != n || second_right.size() != n ||
      second_left.size() != n) {
    throw InvalidArgument("from_first_derivative: node arrays must match the knots");
  }
  std::vector<Cubic> second(n - 1);
  std::vector<double> slopes(n - 1), values(n - 1);
  double value = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double w = knots[k + 1] - knots[k];
    const double y0 = slope_right[k];
    const double y1 = slope_left[k + 1];
    double m0 = second_right[k];
    double m1 = second_left[k + 1];
    hermite::limit_slopes((y1 - y0) / w, m0, m1);
    const auto c = hermite::to_power_basis(w, y0, y1, m0, m1);
    second[k] = {c[1], 2.0 * c[2], 3.0 * c[3], 0.0};
    slopes[k] = y0;
    values[k] = value;
    value += y0 * w + c[1] * w * w / 2 + c[2] * w * w * w / 3 + c[3] * std::pow(w, 4) / 4;
  }
  return std::make_shared<const PiecewiseBody>(std::move(knots), std::move(second), std::move(slopes),
                                               std::move(values));
}

double PiecewiseBody::eval_in(std::size_t k, double h, int order) const {
  const auto& c = second_[k];
  switch (order) {
    case 0:
      return values_[k] + h * (slopes_[k] + h * (c[0] / 2 + h * (c[1] / 6 + h * (c[2] / 12 + h * c[3] / 20))));
    case 1:
      return slopes_[k] + h * (c[0] + h * (c[1] / 2 + h * (c[2] / 3 + h * c[3] / 4)));
    case 2:
      return c[0] + h * (c[1] + h * (c[2] + h * c[3]));
    case 3:
      return c[1] + h * (2.0 * c[2] + h * 3.0 * c[3]);
    default:
      throw InvalidArgument("derivative order must be in 0..3");
  }
}

double PiecewiseBody::eval(double t, int order) const {
  check_order(order);
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  std::size_t k = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  k = std::min(k, second_.size() - 1);
  return eval_in(k, t - knots_[k], order);
}

double PiecewiseBody::left_eval(double t, int order) const {
  check_order(order);
  auto it = std::lower_bound(knots_.begin(), knots_.end(), t);
  if (it != knots_.end() && *it == t && it != knots_.begin()) {
    const std::size_t k = static_cast<std::size_t>(it - knots_.begin()) - 1;
    return eval_in(k, t - knots_[k], order);
  }
  return eval(t, order);
}

std::vector<double> PiecewiseBody::breakpoints() const {
  return {knots_.begin() + 1, knots_.end() - 1};
}

std::vector<std::pair<double, double>> PiecewiseBody::slope_jumps() const {
  std::vector<std::pair<double, double>> jumps;
  for (std::size_t k = 1; k < second_.size(); ++k) {
    const double left = eval_in(k - 1, knots_[k] - knots_[k - 1], 1);
    const double jump = slopes_[k] - left;
    if (jump > 1e-12 * std::max(1.0, std::abs(slopes_[k]))) jumps.emplace_back(knots_[k], jump);
  }
  return jumps;
}

std::string PiecewiseBody::describe() const {
  return "spline(" + std::to_string(knots_.size()) + " knots on [0," + fmt(knots_.back()) + "])";
}

// ---------------------------------------------------------------------------
// OrliczFunction

OrliczFunction OrliczFunction::power(double q, double scale) {
  return OrliczFunction(std::make_shared<const PowerBody>(q), kInf, 0.0, scale);
}

OrliczFunction OrliczFunction::power_log(double q, double r, double scale) {
  return OrliczFunction(std::make_shared<const PowerLogBody>(q, r), kInf, 0.0, scale);
}

OrliczFunction OrliczFunction::from_second_derivative(std::span<const double> t,
                                                      std::span<const double> m2) {
  auto body = PiecewiseBody::from_second_derivative(t, m2);
  const double end = body->domain_end();
  const double slope = body->left_eval(end, 1);
  return OrliczFunction(std::move(body), end, slope, 1.0);
}

OrliczFunction::OrliczFunction(std::shared_ptr<const Body> body, double kink, double tail_slope,
                               double scale)
    : body_(std::move(body)), kink_(kink), tail_slope_(tail_slope), scale_(scale) {
  if (!body_) throw InvalidArgument("OrliczFunction: missing body");
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw InvalidArgument("scale must be positive");
  if (!(kink_ > 0.0)) throw InvalidArgument("kink must be positive");
  const double end = body_->domain_end();
  if (kink_ > end * (1.0 + 1e-12)) throw DomainError("kink lies beyond the body's domain");
  if (kink_ > end) kink_ = end;
  if (std::abs(body_->eval(0.0, 0)) > 1e-14) throw DomainError("Orlicz function must vanish at 0");
  if (has_affine_tail()) {
    if (!std::isfinite(tail_slope_)) throw DomainError("tail slope must be finite");
    const double left = left_eval(kink_, 1);
    if (tail_slope_ < left - 1e-9 * std::max(1.0, std::abs(left))) {
      throw DomainError("affine tail slope " + fmt(tail_slope_) + " is below M'(T-) = " + fmt(left));
    }
  } else {
    tail_slope_ = 0.0;
  }
  // Convexity on the validation grid.
  double prev_slope = -kInf;
  for (double t : validation_grid(*this)) {
    const double d1 = eval(t, 1);
    const double d2 = eval(t, 2);
    const double tol = 1e-9 * (1.0 + std::abs(d1) / t);
    if (std::isnan(d1) || std::isnan(d2) || d2 < -tol || d1 < prev_slope - tol) {
      throw DomainError("function is not convex near t = " + fmt(t));
    }
    prev_slope = d1;
  }
}

bool OrliczFunction::has_affine_tail() const { return std::isfinite(kink_); }

double OrliczFunction::eval(double t, int order) const {
  check_order(order);
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("argument must be finite and >= 0");
  if (has_affine_tail() && t > kink_) {
    switch (order) {
      case 0:
        return scale_ * body_->eval(kink_, 0) + tail_slope_ * (t - kink_);
      case 1:
        return tail_slope_;
      default:
        return 0.0;
    }
  }
  return scale_ * body_->eval(t, order);
}

double OrliczFunction::left_eval(double t, int order) const {
  check_order(order);
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("argument must be finite and >= 0");
  if (has_affine_tail() && t > kink_) return eval(t, order);
  return scale_ * body_->left_eval(t, order);
}

double OrliczFunction::body_eval(double t, int order) const {
  if (!(t >= 0.0) || t > body_->domain_end()) throw InvalidArgument("argument outside body domain");
  return scale_ * body_->eval(t, order);
}

std::vector<double> OrliczFunction::breakpoints() const {
  std::vector<double> out;
  for (double b : body_->breakpoints()) {
    if (b > 0.0 && b < kink_) out.push_back(b);
  }
  return out;
}

std::vector<std::pair<double, double>> OrliczFunction::slope_jumps() const {
  std::vector<std::pair<double, double>> out;
  for (auto [x, j] : body_->slope_jumps()) {
    if (x > 0.0 && x < kink_) out.emplace_back(x, scale_ * j);
  }
  if (has_affine_tail()) {
    const double jump = tail_slope_ - left_eval(kink_, 1);
    if (jump > 1e-12 * std::max(1.0, std::abs(tail_slope_))) out.emplace_back(kink_, jump);
  }
  return out;
}

double OrliczFunction::inverse_at_one() const {
  if (has_affine_tail()) {
    const double at_kink = eval(kink_, 0);
    if (at_kink <= 1.0) {
      if (!(tail_slope_ > 0.0)) throw DomainError("function never reaches 1");
      return kink_ + (1.0 - at_kink) / tail_slope_;
    }
  }
  double lo = 0.0;
  double hi = has_affine_tail() ? kink_ : 1.0;
  if (!has_affine_tail()) {
    int guard = 0;
    while (eval(hi, 0) < 1.0) {
      hi *= 2.0;
      if (++guard > 2000) throw DomainError("function never reaches 1");
    }
  }
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (eval(mid, 0) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

OrliczFunction OrliczFunction::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidArgument("scale factor must be positive");
  return OrliczFunction(body_, kink_, tail_slope_ * factor, scale_ * factor);
}

OrliczFunction OrliczFunction::with_kink(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("extension point must be positive");
  if (t > body_->domain_end() * (1.0 + 1e-12)) {
    throw InvalidArgument("extension point beyond the body's domain");
  }
  const double at = std::min(t, body_->domain_end());
  return OrliczFunction(body_, at, scale_ * body_->eval(at, 1), scale_);
}

std::string OrliczFunction::describe() const {
  std::string s = body_->describe();
  if (scale_ != 1.0) s += " scale=" + fmt(scale_);
  if (has_affine_tail()) s += " kink=" + fmt(kink_) + " slope=" + fmt(tail_slope_);
  return s;
}

// ---------------------------------------------------------------------------

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 2) throw InvalidArgument("log_grid: bad range");
  std::vector<double> g(count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (!(hi >= lo) || count < 2) throw InvalidArgument("linear_grid: bad range");
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  g.back() = hi;
  return g;
}

std::vector<double> validation_grid(const OrliczFunction& m, std::size_t count) {
  double top = m.kink();
  if (!std::isfinite(top)) {
    // Reference scale where the function is O(1); avoid inverse_at_one() here
    // since this runs during construction.
    top = 1.0;
    while (m.body_eval(top, 0) < 1.0 && top < 1e12) top *= 2.0;
  }
  return log_grid(1e-6 * top, top, count);
}

}  // namespace orlicz
