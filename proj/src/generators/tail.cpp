#include "orlicz/tail.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orlicz/errors.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/quadrature.hpp"

namespace orlicz {

namespace {

// Integral of f over [a, inf), split at the breakpoints beyond a.
double integrate_beyond(const std::function<double(double)>& f, double a,
                        std::span<const double> breaks) {
  double total = 0.0;
  double left = a;
  for (double b : breaks) {
    if (b <= left) continue;
    total += quad::integrate(f, left, b);
    left = b;
  }
  return total + quad::integrate_to_infinity(f, left);
}

}  // namespace

TailFunction::TailFunction(Fn tail, Fn pdf, std::vector<Atom> atoms, double support_floor,
                           std::vector<double> breakpoints, std::string label)
    : tail_(std::move(tail)),
      pdf_(std::move(pdf)),
      atoms_(std::move(atoms)),
      floor_(support_floor),
      label_(std::move(label)) {
  if (!tail_) throw InvalidArgument("tail function missing");
  if (!pdf_) pdf_ = [](double) { return 0.0; };
  if (!(floor_ > 0.0) || !std::isfinite(floor_)) throw InvalidArgument("support floor must be positive");
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.location < b.location; });
  for (const auto& a : atoms_) {
    if (!(a.location >= floor_ * (1.0 - 1e-12)) || !std::isfinite(a.location)) {
      throw InvalidArgument("atom below the support floor");
    }
    if (!(a.mass > 0.0) || a.mass > 1.0 + 1e-9) throw InvalidArgument("atom mass must lie in (0, 1]");
    breakpoints.push_back(a.location);
  }
  std::erase_if(breakpoints, [&](double b) { return !(b > 0.0) || !std::isfinite(b); });
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  breaks_ = std::move(breakpoints);
}

double TailFunction::operator()(double t) const {
  if (t < floor_) return 1.0;
  return std::clamp(tail_(t), 0.0, 1.0);
}

double TailFunction::at_least(double t) const {
  if (t <= floor_ && atom_mass_at(t) == 0.0) return 1.0;
  return std::min(1.0, (*this)(t) + atom_mass_at(t));
}

double TailFunction::continuous_tail(double t) const {
  double beyond = 0.0;
  for (const auto& a : atoms_) {
    if (a.location > t) beyond += a.mass;
  }
  return std::max(0.0, (*this)(t) - beyond);
}

double TailFunction::pdf(double t) const {
  if (t < floor_) return 0.0;
  return pdf_(t);
}

double TailFunction::atom_mass_at(double t) const {
  for (const auto& a : atoms_) {
    if (a.location == t) return a.mass;
  }
  return 0.0;
}

double TailFunction::total_atom_mass() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.mass;
  return s;
}

double TailFunction::mean() const {
  const double rest = integrate_beyond([this](double t) { return (*this)(t); }, floor_, breaks_);
  if (!std::isfinite(rest)) throw DomainError("distribution has infinite mean");
  return floor_ + rest;
}

double TailFunction::continuous_mass() const {
  return integrate_beyond([this](double t) { return pdf(t); }, floor_, breaks_);
}

void TailFunction::validate(std::span<const double> grid) const {
  auto fail = [&](const std::string& what, double t) {
    std::ostringstream os;
    os.precision(12);
    os << label_ << ": " << what << " at t = " << t;
    throw DomainError(os.str());
  };
  double prev = 1.0;
  for (double t : grid) {
    const double raw = tail_(t);
    if (std::isnan(raw) || raw < -1e-9 || raw > 1.0 + 1e-9) fail("tail value outside [0,1]", t);
    const double v = (*this)(t);
    if (v > prev + 1e-9) fail("tail is increasing", t);
    prev = v;
  }
  if (!grid.empty() && (*this)(grid.back()) >= 1e-6) fail("tail does not vanish", grid.back());
  const double mass = continuous_mass() + total_atom_mass();
  if (std::abs(mass - 1.0) > 1e-6) fail("total mass " + std::to_string(mass) + " differs from 1", 0.0);
  for (const auto& a : atoms_) {
    const double before = a.location > floor_ ? tail_(a.location * (1.0 - 1e-10)) : 1.0;
    const double jump = before - (*this)(a.location);
    if (std::abs(jump - a.mass) > 1e-6) fail("atom mass does not match the tail jump", a.location);
  }
}

void TailFunction::validate() const {
  const auto grid = log_grid(0.5 * floor_, floor_ * 1e12, 1024);
  validate(grid);
}

double DensityModel::total_mass() const {
  double mass = integrate_beyond(pdf, support_floor, breakpoints);
  for (const auto& a : atoms) mass += a.mass;
  return mass;
}

}  // namespace orlicz
