#pragma once

#include <memory>
#include <span>
#include <vector>

#include "orlicz/orlicz_function.hpp"

namespace orlicz {

// Integral of x dM'(x) over [0, inf) for M affine beyond its kink T, i.e.
// T M'(T+) - M(T). Infinite when there is no affine tail.
double normalization_integral(const OrliczFunction& m);

// Independent route for the same quantity: quadrature of x M''(x) on [0, T]
// plus x times every jump of M'.
double normalization_integral_by_quadrature(const OrliczFunction& m);

bool is_normalized(const OrliczFunction& m, double tol = 1e-6);

// Moves the kink to the T* solving T M'(T) - M(T) = 1 and re-attaches the
// affine tail there. Throws DomainError if the body cannot reach 1.
OrliczFunction normalize(const OrliczFunction& m);

// Truncates the body at t and continues affinely with slope M'(t).
OrliczFunction linear_extension(const OrliczFunction& m, double t);

// M''' <= tol at every grid point.
bool check_two_concave(const OrliczFunction& m, std::span<const double> grid, double tol = 1e-9);

// M'' nonincreasing along the (sorted) grid.
bool check_second_derivative_decreasing(const OrliczFunction& m, std::span<const double> grid,
                                        double tol = 1e-12);

// t M''(t) <= M'(t) at every grid point, the derivative form of 2-concavity of M.
bool satisfies_two_concavity_inequality(const OrliczFunction& m, std::span<const double> grid,
                                        double tol = 1e-12);

// a^{-1} M(t / b) <= N(t) <= a M(b t) at every grid point.
bool check_equivalent(const OrliczFunction& m, const OrliczFunction& n, double a, double b,
                      std::span<const double> grid);

// N on [0, kink] obtained from M by replacing M'' on [start, kink] with
// min(M'', ramp) where the ramp falls linearly from M''(start) to 0 at the kink.
class SmoothedBody final : public Body {
 public:
  SmoothedBody(OrliczFunction base, double start, double kink);

  double eval(double t, int order) const override;
  double left_eval(double t, int order) const override;
  double domain_end() const override { return kink_; }
  std::vector<double> breakpoints() const override;
  std::string describe() const override;

  double start() const { return start_; }

 private:
  struct Segment {
    double begin;
    double end;
    bool ramp;      // N'' follows the ramp (otherwise it follows M'')
    double slope;   // N'(begin)
    double value;   // N(begin)
  };

  double ramp(double t) const;
  double eval_segment(const Segment& s, double t, int order) const;

  OrliczFunction base_;
  double start_;
  double kink_;
  double ramp_top_;
  std::vector<Segment> segments_;
};

struct SmoothingResult {
  OrliczFunction smoothed;
  double delta;
};

// Replaces M near its kink T by N with N''(T) = 0 and N <= M <= c N. delta is
// the largest value in (0, 1) with T delta^2 max_{[T(1-delta), T]} M''
// <= (c - 1) M(T(1 - delta)). Returns M itself with delta = 0 when M''(T-)
// already vanishes.
SmoothingResult approx_smooth_kink(const OrliczFunction& m, double c);

// approx_smooth_kink followed by a value rescaling that restores the
// normalization integral of the input.
SmoothingResult smooth_kink_normalized(const OrliczFunction& m, double c);

}  // namespace orlicz
