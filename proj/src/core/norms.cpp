#include "orlicz/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "orlicz/errors.hpp"

namespace orlicz {

WeightVector::WeightVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidArgument("vector must have at least one entry");
  for (double v : entries_) {
    if (!std::isfinite(v)) throw InvalidArgument("vector entries must be finite");
  }
}

bool WeightVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](double v) { return v == 0.0; });
}

double WeightVector::max_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

WeightVector WeightVector::scaled(double factor) const {
  std::vector<double> out(entries_);
  for (double& v : out) v *= factor;
  return WeightVector(std::move(out));
}

MusielakFamily::MusielakFamily(std::vector<OrliczFunction> functions) : functions_(std::move(functions)) {
  if (functions_.empty()) throw InvalidArgument("Musielak family must be nonempty");
}

namespace {

// Bisection for the root of the nonincreasing map rho -> F(rho) - 1, starting
// from the bracket [r0 2^-k, r0 2^k] expanded until the sign changes.
double solve_modular(const std::function<double(double)>& f, double r0, double tol) {
  double lo = r0, hi = r0;
  int guard = 0;
  while (f(lo) <= 1.0) {
    lo *= 0.5;
    if (++guard > 2000 || lo == 0.0) throw DomainError("could not bracket the norm from below");
  }
  guard = 0;
  while (f(hi) > 1.0) {
    hi *= 2.0;
    if (++guard > 2000 || !std::isfinite(hi)) throw DomainError("could not bracket the norm from above");
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) > 1.0 ? lo : hi) = mid;
  }
  const double rho = hi;
  if (std::abs(f(rho) - 1.0) > tol && std::abs(f(lo) - 1.0) > tol) {
    // The modular jumps over 1 only if M does, which convex M cannot.
    throw DomainError("modular did not reach 1 within tolerance");
  }
  return std::abs(f(lo) - 1.0) < std::abs(f(rho) - 1.0) ? lo : rho;
}

}  // namespace

double modular(const MusielakFamily& family, const WeightVector& x, double rho) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += family[i](std::abs(x[i]) / rho);
  return s;
}

double modular(const OrliczFunction& m, const WeightVector& x, double rho) {
  double s = 0.0;
  for (double v : x.entries()) s += m(std::abs(v) / rho);
  return s;
}

double orlicz_norm(const OrliczFunction& m, const WeightVector& x, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (x.is_zero()) return 0.0;
  const double r0 = x.max_abs() / m.inverse_at_one();
  return solve_modular([&](double rho) { return modular(m, x, rho); }, r0, tol);
}

double musielak_norm(const MusielakFamily& family, const WeightVector& x, double tol) {
  if (family.size() != x.size()) throw InvalidArgument("Musielak family and vector lengths differ");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (x.is_zero()) return 0.0;
  double r0 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r0 = std::max(r0, std::abs(x[i]) / family[i].inverse_at_one());
  }
  return solve_modular([&](double rho) { return modular(family, x, rho); }, r0, tol);
}

double lp_norm(const WeightVector& x, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1");
  const double mx = x.max_abs();
  if (mx == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x.entries()) s += std::pow(std::abs(v) / mx, p);
  return mx * std::pow(s, 1.0 / p);
}

}  // namespace orlicz
