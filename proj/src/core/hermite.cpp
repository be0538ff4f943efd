#include "orlicz/hermite.hpp"

#include <cmath>

#include "orlicz/errors.hpp"

namespace orlicz::hermite {

std::vector<double> monotone_slopes(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw InvalidArgument("monotone_slopes: need >= 2 matching nodes");
  std::vector<double> h(n - 1), d(n - 1), g(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    if (!(h[k] > 0.0)) throw InvalidArgument("monotone_slopes: abscissae must be increasing");
    d[k] = (y[k + 1] - y[k]) / h[k];
  }
  g[0] = d[0];
  g[n - 1] = d[n - 2];
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (d[k] * d[k - 1] > 0.0) {
      const double a = (h[k - 1] + 2.0 * h[k]) / (3.0 * (h[k - 1] + h[k]));
      g[k] = d[k] * d[k - 1] / (a * d[k] + (1.0 - a) * d[k - 1]);
    } else {
      g[k] = 0.0;
    }
  }
  // End slopes must not point away from the neighbouring data.
  for (std::size_t k : {std::size_t{0}, n - 2}) {
    double m0 = g[k], m1 = g[k + 1];
    limit_slopes(d[k], m0, m1);
    g[k] = m0;
    g[k + 1] = m1;
  }
  return g;
}

void limit_slopes(double secant, double& m0, double& m1) {
  if (secant == 0.0) {
    m0 = 0.0;
    m1 = 0.0;
    return;
  }
  double a = m0 / secant;
  double b = m1 / secant;
  if (a < 0.0) a = 0.0;
  if (b < 0.0) b = 0.0;
  const double r2 = a * a + b * b;
  if (r2 > 9.0) {
    const double tau = 3.0 / std::sqrt(r2);
    a *= tau;
    b *= tau;
  }
  m0 = a * secant;
  m1 = b * secant;
}

Cubic to_power_basis(double width, double y0, double y1, double m0, double m1) {
  const double secant = (y1 - y0) / width;
  const double c2 = (3.0 * secant - 2.0 * m0 - m1) / width;
  const double c3 = (m0 + m1 - 2.0 * secant) / (width * width);
  return {y0, m0, c2, c3};
}

}  // namespace orlicz::hermite
