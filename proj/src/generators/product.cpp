#include <algorithm>
#include <cmath>
#include <map>

#include "orlicz/errors.hpp"
#include "orlicz/generators.hpp"
#include "orlicz/quadrature.hpp"

namespace orlicz {

namespace {

// Breakpoints in x of an integrand of the form g(z / x): the images z / b.
std::vector<double> scaled_breaks(const TailFunction& mu, const TailFunction& y, double z) {
  std::vector<double> out(mu.breakpoints().begin(), mu.breakpoints().end());
  for (double b : y.breakpoints()) out.push_back(z / b);
  return out;
}

// Integral of f over [lo, hi]. With lo > 0 the variable is log x, so ranges
// spanning many decades stay within reach of the adaptive rule.
double integrate_scales(const quad::Integrand& f, double lo, double hi, const std::vector<double>& breaks) {
  if (!(lo > 0.0)) return quad::integrate(f, lo, hi, breaks);
  std::vector<double> log_breaks;
  for (double b : breaks) {
    if (b > 0.0) log_breaks.push_back(std::log(b));
  }
  return quad::integrate(
      [&f](double s) {
        const double x = std::exp(s);
        return f(x) * x;
      },
      std::log(lo), std::log(hi), log_breaks);
}

}  // namespace

TailFunction product_tail(const TailFunction& mu, const TailFunction& y) {
  auto tail = [mu, y](double z) {
    double total = 0.0;
    for (const auto& a : mu.atoms()) total += a.mass * y(z / a.location);
    const double lo = mu.support_floor();
    const double cut = std::max(lo, z / y.support_floor());
    if (cut > lo) {
      total += integrate_scales([&](double x) { return y(z / x) * mu.pdf(x); }, lo, cut, scaled_breaks(mu, y, z));
    }
    return total + mu.continuous_tail(cut);
  };
  auto pdf = [mu, y](double z) {
    double total = 0.0;
    for (const auto& a : mu.atoms()) total += a.mass * y.pdf(z / a.location) / a.location;
    for (const auto& b : y.atoms()) total += b.mass * mu.pdf(z / b.location) / b.location;
    const double lo = mu.support_floor();
    const double cut = std::max(lo, z / y.support_floor());
    if (cut > lo) {
      total += integrate_scales([&](double x) { return y.pdf(z / x) * mu.pdf(x) / x; }, lo, cut,
                                scaled_breaks(mu, y, z));
    }
    return total;
  };

  std::map<double, double> atoms;
  for (const auto& a : mu.atoms()) {
    for (const auto& b : y.atoms()) atoms[a.location * b.location] += a.mass * b.mass;
  }
  std::vector<Atom> atom_list;
  for (auto [loc, mass] : atoms) atom_list.push_back({loc, mass});

  std::vector<double> breaks{mu.support_floor() * y.support_floor()};
  for (const auto& a : mu.atoms()) {
    breaks.push_back(a.location * y.support_floor());
    for (double b : y.breakpoints()) breaks.push_back(a.location * b);
  }
  for (const auto& b : y.atoms()) {
    breaks.push_back(b.location * mu.support_floor());
    for (double c : mu.breakpoints()) breaks.push_back(b.location * c);
  }
  return TailFunction(tail, pdf, std::move(atom_list), mu.support_floor() * y.support_floor(), std::move(breaks),
                      mu.label() + "*" + y.label());
}

ConvolutionResidual check_mult_convolution(const OrliczFunction& m, const OrliczFunction& n,
                                           const TailFunction& mu, std::span<const double> grid) {
  const TailFunction target = tail_from_orlicz_max(m);
  const TailFunction prod = product_tail(mu, tail_from_orlicz_max(n));
  ConvolutionResidual r{0.0, grid.empty() ? 0.0 : grid.front()};
  for (double t : grid) {
    const double e = std::abs(target(t) - prod(t));
    if (e > r.sup) r = {e, t};
  }
  return r;
}

OrliczFunction induced_orlicz(const TailFunction& mu, const OrliczFunction& n) {
  return orlicz_from_distribution_max(product_tail(mu, tail_from_orlicz_max(n)));
}

}  // namespace orlicz
