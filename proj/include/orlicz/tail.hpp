#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace orlicz {

struct Atom {
  double location;
  double mass;
};

// Law of a positive random variable X given by t -> P(X > t) (right-continuous,
// atoms included), the density of its continuous part, and its atoms.
// support_floor is the largest t0 with P(X > t) = 1 on (0, t0).
class TailFunction {
 public:
  using Fn = std::function<double(double)>;

  // `breakpoints` lists points other than atoms where the tail or the density
  // is not smooth; quadrature splits there.
  TailFunction(Fn tail, Fn pdf, std::vector<Atom> atoms, double support_floor,
               std::vector<double> breakpoints = {}, std::string label = "tail");

  // P(X > t).
  double operator()(double t) const;
  // P(X >= t).
  double at_least(double t) const;
  // Continuous part of P(X > t), i.e. P(X > t) minus the atoms beyond t.
  double continuous_tail(double t) const;
  double pdf(double t) const;

  // Mass of the atom located exactly at t (0 if none).
  double atom_mass_at(double t) const;
  double total_atom_mass() const;
  const std::vector<Atom>& atoms() const { return atoms_; }
  double support_floor() const { return floor_; }
  // Sorted breakpoints including atom locations.
  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::string& label() const { return label_; }

  // E X = integral of the tail over (0, inf). Throws DomainError if infinite.
  double mean() const;
  // Integral of the density over (floor, inf).
  double continuous_mass() const;

  // Checks the type invariants on `grid`: values in [0, 1], nonincreasing,
  // vanishing (< 1e-6) at the right end of the grid, total mass 1 within
  // 1e-6 and every atom matching the tail's jump. Throws DomainError.
  void validate(std::span<const double> grid) const;
  // Same on the default grid of 1024 log-spaced points over [floor/2, floor 1e12].
  void validate() const;

 private:
  Fn tail_;
  Fn pdf_;
  std::vector<Atom> atoms_;
  double floor_;
  std::vector<double> breaks_;
  std::string label_;
};

// Density of the continuous part plus the atoms.
struct DensityModel {
  std::function<double(double)> pdf;
  std::vector<Atom> atoms;
  double support_floor = 0.0;
  std::vector<double> breakpoints;
  std::vector<std::string> warnings;

  // Integral of pdf over (support_floor, inf) plus the atom masses.
  double total_mass() const;
};

}  // namespace orlicz
