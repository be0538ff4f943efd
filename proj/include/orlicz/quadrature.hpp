#pragma once

#include <functional>
#include <span>

namespace orlicz::quad {

using Integrand = std::function<double(double)>;

struct Options {
  double rel_tol = 1e-12;
  unsigned max_depth = 16;
  // Estimated error above this fraction of the L1 norm of the integrand is
  // reported as non-convergence.
  double fail_tol = 1e-6;
};

// Adaptive Gauss-Kronrod on [a, b]. Throws QuadratureError on non-convergence.
double integrate(const Integrand& f, double a, double b, const Options& opt = {});

// Same, with the interval split at every breakpoint strictly inside (a, b).
double integrate(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                 const Options& opt = {});

// Integral over [a, inf) for a > 0, computed on (0, 1/a] after the change of
// variables x = 1/u, using tanh-sinh so that slowly decaying tails converge.
double integrate_to_infinity(const Integrand& f, double a, const Options& opt = {});

}  // namespace orlicz::quad
