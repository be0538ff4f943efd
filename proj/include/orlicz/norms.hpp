#pragma once

#include <span>
#include <vector>

#include "orlicz/orlicz_function.hpp"

namespace orlicz {

inline constexpr double kDefaultNormTol = 1e-10;

// Coordinates x_i of a vector in R^n, n >= 1, all finite.
class WeightVector {
 public:
  WeightVector(std::vector<double> entries);
  WeightVector(std::initializer_list<double> entries) : WeightVector(std::vector<double>(entries)) {}

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const { return entries_; }
  bool is_zero() const;
  double max_abs() const;
  WeightVector scaled(double factor) const;

 private:
  std::vector<double> entries_;
};

// Coordinate-wise Orlicz functions (M_1, ..., M_n), n >= 1.
class MusielakFamily {
 public:
  explicit MusielakFamily(std::vector<OrliczFunction> functions);
  std::size_t size() const { return functions_.size(); }
  const OrliczFunction& operator[](std::size_t i) const { return functions_[i]; }
  std::span<const OrliczFunction> functions() const { return functions_; }

 private:
  std::vector<OrliczFunction> functions_;
};

// Luxemburg norm inf{rho > 0 : sum M(|x_i| / rho) <= 1}, found by bracketing
// and bisection on the decreasing modular. Zero vector gives 0.
double orlicz_norm(const OrliczFunction& m, const WeightVector& x, double tol = kDefaultNormTol);

double musielak_norm(const MusielakFamily& family, const WeightVector& x, double tol = kDefaultNormTol);

// sum_i M_i(|x_i| / rho)
double modular(const MusielakFamily& family, const WeightVector& x, double rho);
double modular(const OrliczFunction& m, const WeightVector& x, double rho);

// ||x||_p.
double lp_norm(const WeightVector& x, double p);

}  // namespace orlicz
