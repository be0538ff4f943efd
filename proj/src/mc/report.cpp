#include "orlicz/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "orlicz/errors.hpp"

namespace orlicz {

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format_number(v));
}

std::string report_to_json(const EquivalenceReport& r) {
  nlohmann::ordered_json j;
  j["experiment"] = r.experiment;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.config) config[k] = v;
  j["config"] = config;
  j["seed"] = r.seed;
  j["suite_version"] = r.suite_version;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"label", e.label},
                       {"norm", round12(e.norm)},
                       {"mc_mean", round12(e.mc.mean)},
                       {"mc_stderr", round12(e.mc.std_error)},
                       {"n_samples", e.mc.n_samples},
                       {"ratio", round12(e.ratio)}});
  }
  j["entries"] = entries;
  j["ratio_min"] = round12(r.ratio_min);
  j["ratio_max"] = round12(r.ratio_max);
  j["spread"] = round12(r.spread);
  if (r.lower_bound_factor) j["lower_bound_factor"] = round12(*r.lower_bound_factor);
  return j.dump(2);
}

std::string report_to_csv(const EquivalenceReport& r) {
  std::ostringstream os;
  os << "label,norm,mc_mean,mc_stderr,ratio\n";
  for (const auto& e : r.entries) {
    os << e.label << ',' << format_number(e.norm) << ',' << format_number(e.mc.mean) << ','
       << format_number(e.mc.std_error) << ',' << format_number(e.ratio) << '\n';
  }
  return os.str();
}

std::string tail_to_csv(const TailFunction& d, std::span<const double> grid) {
  std::ostringstream os;
  os << "t,tail,pdf\n";
  for (double t : grid) os << format_number(t) << ',' << format_number(d(t)) << ',' << format_number(d.pdf(t)) << '\n';
  return os.str();
}

std::string atoms_to_csv(const TailFunction& d) {
  std::ostringstream os;
  os << "location,mass\n";
  for (const auto& a : d.atoms()) os << format_number(a.location) << ',' << format_number(a.mass) << '\n';
  return os.str();
}

std::string smoothing_to_csv(const OrliczFunction& m, const SmoothingResult& s, std::size_t count) {
  if (!m.has_affine_tail()) throw DomainError("smoothing table needs a finite kink");
  std::ostringstream os;
  os << "# delta=" << format_number(s.delta) << '\n';
  os << "t,M,N,M2,N2\n";
  const double top = m.kink();
  const auto grid = linear_grid(0.0, top, count);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    // Second derivatives at the kink are the limits from the left.
    const bool end = i + 1 == grid.size();
    const double m2 = end ? m.left_eval(t, 2) : m.eval(t, 2);
    const double n2 = end ? s.smoothed.left_eval(t, 2) : s.smoothed.eval(t, 2);
    os << format_number(t) << ',' << format_number(m(t)) << ',' << format_number(s.smoothed(t)) << ','
       << format_number(m2) << ',' << format_number(n2) << '\n';
  }
  return os.str();
}

}  // namespace orlicz
