#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace orlicz {

// Analytic or tabulated description of an Orlicz function on [0, domain_end()].
// Implementations are immutable and evaluate the value (order 0) and the first
// three derivatives. Derivatives are right-continuous at internal knots;
// left_eval() gives the left limits.
class Body {
 public:
  virtual ~Body() = default;

  virtual double eval(double t, int order) const = 0;
  virtual double left_eval(double t, int order) const { return eval(t, order); }
  virtual double domain_end() const = 0;

  // Points where a derivative of order <= 3 may be discontinuous.
  virtual std::vector<double> breakpoints() const { return {}; }
  // (location, size) of jumps in the first derivative.
  virtual std::vector<std::pair<double, double>> slope_jumps() const { return {}; }

  virtual std::string describe() const = 0;
};

// t^q.
class PowerBody final : public Body {
 public:
  explicit PowerBody(double q);
  double eval(double t, int order) const override;
  double domain_end() const override;
  std::string describe() const override;
  double exponent() const { return q_; }

 private:
  double q_;
};

// t^q (1 + log(1 + t))^r.
class PowerLogBody final : public Body {
 public:
  PowerLogBody(double q, double r);
  double eval(double t, int order) const override;
  double domain_end() const override;
  std::string describe() const override;

 private:
  double q_;
  double r_;
};

// Piecewise polynomial second derivative on knots 0 = x_0 < ... < x_K with
// exact antiderivatives. On [x_k, x_{k+1}), with h = t - x_k,
//   M''(t) = c0 + c1 h + c2 h^2 + c3 h^3,
//   M'(t)  = slope_k + c0 h + c1 h^2/2 + c2 h^3/3 + c3 h^4/4,
//   M(t)   = value_k + slope_k h + c0 h^2/2 + c1 h^3/6 + c2 h^4/12 + c3 h^5/20.
// slope_k is the right limit M'(x_k+); it may exceed the left limit, which is
// how point masses of a generating distribution show up.
class PiecewiseBody final : public Body {
 public:
  using Cubic = std::array<double, 4>;

  PiecewiseBody(std::vector<double> knots, std::vector<Cubic> second, std::vector<double> slopes,
                std::vector<double> values);

  // Monotone piecewise-cubic interpolation of tabulated M'' values, integrated
  // twice from M(0) = M'(0) = 0. A first abscissa > 0 gets a node at 0 with
  // the first M'' value prepended.
  static std::shared_ptr<const PiecewiseBody> from_second_derivative(std::span<const double> t,
                                                                     std::span<const double> m2);

  // Cubic Hermite interpolation of M' from one-sided node data:
  // slope_right[k] = M'(x_k+), slope_left[k] = M'(x_k-), and likewise for M''.
  // Slopes are passed through the Fritsch-Carlson limiter so M' stays monotone.
  static std::shared_ptr<const PiecewiseBody> from_first_derivative(
      std::vector<double> knots, std::span<const double> slope_right,
      std::span<const double> slope_left, std::span<const double> second_right,
      std::span<const double> second_left);

  double eval(double t, int order) const override;
  double left_eval(double t, int order) const override;
  double domain_end() const override { return knots_.back(); }
  std::vector<double> breakpoints() const override;
  std::vector<std::pair<double, double>> slope_jumps() const override;
  std::string describe() const override;

  std::span<const double> knots() const { return knots_; }

 private:
  double eval_in(std::size_t k, double h, int order) const;

  std::vector<double> knots_;
  std::vector<Cubic> second_;
  std::vector<double> slopes_;
  std::vector<double> values_;
};

// A convex function M on [0, inf) given by a body on [0, kink] and the affine
// continuation M(kink) + tail_slope (t - kink) beyond. All body values are
// multiplied by `scale`. kink may be +inf (no affine part).
class OrliczFunction {
 public:
  static OrliczFunction power(double q, double scale = 1.0);
  static OrliczFunction power_log(double q, double r, double scale = 1.0);
  static OrliczFunction from_second_derivative(std::span<const double> t, std::span<const double> m2);

  // Validates convexity, M(0) = 0, and that the affine tail does not bend the
  // function downward. Throws DomainError otherwise.
  OrliczFunction(std::shared_ptr<const Body> body, double kink, double tail_slope, double scale = 1.0);

  // order-th derivative, order in 0..3, t >= 0.
  double eval(double t, int order = 0) const;
  double operator()(double t) const { return eval(t, 0); }
  double left_eval(double t, int order) const;

  double kink() const { return kink_; }
  bool has_affine_tail() const;
  double tail_slope() const { return tail_slope_; }
  double scale() const { return scale_; }

  // Scaled body, ignoring the affine tail. t must lie in [0, body_domain()].
  double body_eval(double t, int order) const;
  double body_domain() const { return body_->domain_end(); }
  const std::shared_ptr<const Body>& body() const { return body_; }

  // Body breakpoints in (0, kink).
  std::vector<double> breakpoints() const;
  // Jumps of M' in (0, kink], including the one at the kink if tail_slope > M'(kink-).
  std::vector<std::pair<double, double>> slope_jumps() const;

  // M^{-1}(1).
  double inverse_at_one() const;

  OrliczFunction scaled(double factor) const;
  // Same body with the affine tail re-attached at t with slope M'(t).
  OrliczFunction with_kink(double t) const;

  std::string describe() const;

 private:
  std::shared_ptr<const Body> body_;
  double kink_;
  double tail_slope_;
  double scale_;
};

// Log-spaced validation grid: `count` points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t count);
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

// Default convexity/positivity validation grid of M: 512 log-spaced points on
// [1e-6 T, T] with T the kink (or max(1, M^{-1}(1)) when there is none).
std::vector<double> validation_grid(const OrliczFunction& m, std::size_t count = 512);

}  // namespace orlicz
