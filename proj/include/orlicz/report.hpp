#pragma once

#include <span>
#include <string>

#include "orlicz/harness.hpp"
#include "orlicz/tail.hpp"
#include "orlicz/transforms.hpp"

namespace orlicz {

// Decimal text with 12 significant digits.
std::string format_number(double v);
// v rounded to 12 significant digits (so JSON output carries no more).
double round12(double v);

// JSON object: experiment, config, seed, suite_version, entries, ratio_min,
// ratio_max, spread and, when present, lower_bound_factor.
std::string report_to_json(const EquivalenceReport& r);
// Header label,norm,mc_mean,mc_stderr,ratio and one row per vector.
std::string report_to_csv(const EquivalenceReport& r);

// Header t,tail,pdf with one row per grid point.
std::string tail_to_csv(const TailFunction& d, std::span<const double> grid);
// Header location,mass with one row per atom.
std::string atoms_to_csv(const TailFunction& d);

// Header t,M,N,M2,N2 over `count` uniform points on [0, T], preceded by a
// comment line "# delta=<value>".
std::string smoothing_to_csv(const OrliczFunction& m, const SmoothingResult& s, std::size_t count = 257);

}  // namespace orlicz
