#pragma once

#include <span>
#include <vector>

#include "orlicz/norms.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/tail.hpp"

namespace orlicz {

inline constexpr double kNormalizationTol = 1e-6;
inline constexpr double kNegativeDensityTol = 1e-9;

// ---------------------------------------------------------------------------
// Orlicz function -> distribution

// Law of X with E max_i |x_i X_i| comparable to ||x||_M:
//   P(X > t) = s M'(s-) - M(s),  s = 1/t,
// equal to 1 for t < 1/T. Every jump J of M' at x becomes an atom at 1/x of
// mass x J. Requires normalized M with M'(0) = 0.
TailFunction tail_from_orlicz_max(const OrliczFunction& m);

// pdf(t) = t^-3 M''(1/t) for t > 1/T.
DensityModel density_from_orlicz_max(const OrliczFunction& m);

// P(X > x) = min(1, x^-p), density p x^(-p-1) on [1, inf).
TailFunction log_gamma_tail(double p);

TailFunction point_mass_tail(double location);

// Law of X with E ||(x_i X_i)||_p comparable to ||x||_M:
//   P(X > x) = -M(s) + s M'(s) - s^2 M''(s) / p,  s = 1/x,
// with an atom of mass T^2 M''(T-) / p at 1/T when the kink is not smooth.
// With check_density the density is validated first (NegativeDensityError).
TailFunction tail_from_orlicz_p(const OrliczFunction& m, double p, bool check_density = true);

// pdf(x) = (1 - 2/p) x^-3 M''(1/x) - x^-4 M'''(1/x) / p, validated to be
// >= -1e-9 on 4096 log-spaced points over [1/T, 1e8/T] and clamped at 0.
DensityModel density_from_orlicz_p(const OrliczFunction& m, double p);

// The p = 2 case, pdf(x) = -x^-4 M'''(1/x) / 2. Adds a warning when the
// kink is not smooth (the law then has an atom at 1/T).
DensityModel density_from_orlicz_2(const OrliczFunction& m);

// ---------------------------------------------------------------------------
// Distribution -> Orlicz function

// M'(s) = E[X 1{X >= 1/s}], tabulated on 2048 log-spaced knots below
// T = 1/support_floor (plus the images of atoms and breakpoints) and
// interpolated by monotone cubic Hermite on M'.
OrliczFunction orlicz_from_distribution_max(const TailFunction& d);

// M'(s) = p/(p-1) (s^(p-1) E[X^p 1{X <= 1/s}] + E[X 1{X > 1/s}]).
OrliczFunction orlicz_from_distribution_p(const TailFunction& d, double p);

MusielakFamily musielak_from_distributions(std::span<const TailFunction> ds);

// max |M(t) - N(t)| over the grid.
double sup_difference(const OrliczFunction& m, const OrliczFunction& n, std::span<const double> grid);

// Grid used for roundtrip comparisons on [0, T]: 2049 uniform points plus
// 512 log-spaced points on [1e-6 T, T].
std::vector<double> roundtrip_grid(double kink);

double roundtrip_max_error(const OrliczFunction& m);
double roundtrip_p_error(const OrliczFunction& m, double p);

// ---------------------------------------------------------------------------
// Multiplicative convolution

// Law of X Y for independent X ~ mu and Y; evaluated lazily by quadrature
// against the density of mu plus exact atom terms.
TailFunction product_tail(const TailFunction& mu, const TailFunction& y);

struct ConvolutionResidual {
  double sup;
  double argmax;
};

// sup over the grid of |F_M(t) - P(X Y > t)| with X ~ mu, Y ~ tail_from_orlicz_max(N)
// and F_M = tail_from_orlicz_max(M).
ConvolutionResidual check_mult_convolution(const OrliczFunction& m, const OrliczFunction& n,
                                           const TailFunction& mu, std::span<const double> grid);

// Orlicz function generated (max case) by X Y with X ~ mu, Y ~ tail_from_orlicz_max(N).
OrliczFunction induced_orlicz(const TailFunction& mu, const OrliczFunction& n);

}  // namespace orlicz
