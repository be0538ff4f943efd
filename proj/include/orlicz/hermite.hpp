#pragma once

#include <array>
#include <span>
#include <vector>

namespace orlicz::hermite {

// Coefficients of c[0] + c[1] h + c[2] h^2 + c[3] h^3 in the local variable h.
using Cubic = std::array<double, 4>;

// Monotonicity-preserving node slopes (Fritsch & Butland weighted harmonic mean).
std::vector<double> monotone_slopes(std::span<const double> x, std::span<const double> y);

// Fritsch-Carlson limiter: scales (m0, m1) into the monotonicity region for an
// interval with secant slope `secant`. Slopes of the wrong sign become zero.
void limit_slopes(double secant, double& m0, double& m1);

// Power-basis form of the cubic Hermite interpolant on an interval of width
// `width` with end values y0, y1 and end slopes m0, m1.
Cubic to_power_basis(double width, double y0, double y1, double m0, double m1);

}  // namespace orlicz::hermite
