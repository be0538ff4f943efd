#include "orlicz/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orlicz/errors.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/transforms.hpp"

namespace orlicz {

namespace {

void require_generating(const OrliczFunction& m) {
  if (!m.has_affine_tail()) throw NotNormalizedError("function has no affine tail, so it is not normalized");
  const double zeta = normalization_integral(m);
  if (std::abs(zeta - 1.0) > kNormalizationTol) {
    std::ostringstream os;
    os.precision(12);
    os << "function is not normalized: T M'(T) - M(T) = " << zeta;
    throw NotNormalizedError(os.str());
  }
  if (std::abs(m.eval(0.0, 1)) > 1e-6) throw DomainError("generating functions need M'(0) = 0");
}

// Derivatives of M at s from the right, treating the kink as the start of
// the affine part (M'' = M''' = 0 there).
double right_eval(const OrliczFunction& m, double s, int order) {
  if (s >= m.kink()) {
    if (order == 0) return m(s);
    return order == 1 ? m.tail_slope() : 0.0;
  }
  return m.eval(s, order);
}

double left_eval(const OrliczFunction& m, double s, int order) { return m.left_eval(s, order); }

// Points s in (0, T] where the derivatives of M may jump: body breakpoints,
// slope jumps and the kink itself.
std::vector<double> singular_points(const OrliczFunction& m) {
  std::vector<double> pts = m.breakpoints();
  for (auto [x, j] : m.slope_jumps()) pts.push_back(x);
  pts.push_back(m.kink());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Maps t to s = 1/t, reproducing the exact singular point when t is its
// computed image, so that atoms are evaluated on the correct side.
struct Reciprocal {
  std::vector<std::pair<double, double>> images;  // (1/x, x)

  explicit Reciprocal(std::span<const double> points) {
    for (double x : points) images.emplace_back(1.0 / x, x);
  }
  double operator()(double t) const {
    for (const auto& [img, x] : images) {
      if (img == t) return x;
    }
    return 1.0 / t;
  }
  std::vector<double> locations() const {
    std::vector<double> out;
    for (const auto& im : images) out.push_back(im.first);
    return out;
  }
};

// Density on (floor, inf); checked on 4096 log points over [floor, 1e8 floor].
void check_density(const std::function<double(double)>& raw, double floor,
                   std::span<const double> breaks) {
  std::vector<double> grid = log_grid(floor, floor * 1e8, 4096);
  // One-sided probes at breakpoints, where the formula changes branch.
  for (double b : breaks) {
    if (b >= floor) {
      grid.push_back(b);
      grid.push_back(b * (1.0 + 1e-9));
    }
  }
  double worst = 0.0, where = floor;
  for (double x : grid) {
    const double v = raw(x);
    if (std::isnan(v)) throw DomainError("density is undefined at x = " + std::to_string(x));
    if (v < worst) {
      worst = v;
      where = x;
    }
  }
  if (worst < -kNegativeDensityTol) throw NegativeDensityError(where, worst);
}

struct Knot {
  double s;
  double u;  // 1/s, exact for knots coming from distribution breakpoints
};

// 0, 2048 log-spaced points on [1e-6 T, T], and the images of breakpoints.
std::vector<Knot> distribution_knots(const TailFunction& d) {
  const double floor = d.support_floor();
  const double top = 1.0 / floor;
  std::vector<std::pair<Knot, bool>> pts;
  for (double s : log_grid(1e-6 * top, top, 2048)) pts.push_back({{s, 1.0 / s}, false});
  pts.back() = {{top, floor}, true};
  for (double b : d.breakpoints()) {
    const double s = 1.0 / b;
    if (b > floor && s > 1e-6 * top) pts.push_back({{s, b}, true});
  }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first.s < b.first.s; });
  std::vector<std::pair<Knot, bool>> merged;
  for (const auto& p : pts) {
    if (!merged.empty() && p.first.s - merged.back().first.s <= 1e-9 * p.first.s) {
      if (p.second) merged.back() = p;
      continue;
    }
    merged.push_back(p);
  }
  std::vector<Knot> out{{0.0, std::numeric_limits<double>::infinity()}};
  for (const auto& p : merged) out.push_back(p.first);
  return out;
}

struct NodeData {
  std::vector<double> knots, slope_right, slope_left, second_right, second_left;
};

// Assembles the Orlicz function from node data; the first interval [0, s_1]
// gets the secant slope at 0 since M'' may be unbounded there.
OrliczFunction assemble(NodeData nd, double kink, double tail_slope) {
  const double secant = nd.slope_left[1] / nd.knots[1];
  nd.second_right[0] = nd.second_left[0] = secant;
  auto body = PiecewiseBody::from_first_derivative(std::move(nd.knots), nd.slope_right, nd.slope_left,
                                                   nd.second_right, nd.second_left);
  const double slope = std::max(tail_slope, body->left_eval(kink, 1));
  return OrliczFunction(std::move(body), kink, slope);
}

// Integral of the tail over [u, inf) at every knot (u descending along the knots).
std::vector<double> upper_integrals(const TailFunction& d, const std::vector<Knot>& knots) {
  auto tail = [&d](double t) { return d(t); };
  std::vector<double> b(knots.size(), 0.0);
  const std::size_t n = knots.size();
  b[1] = quad::integrate_to_infinity(tail, knots[1].u);
  for (std::size_t k = 2; k < n; ++k) {
    b[k] = b[k - 1] + quad::integrate(tail, knots[k].u, knots[k - 1].u, d.breakpoints());
  }
  return b;
}

template <class F>
auto rethrow_integrability(F&& f) {
  try {
    return f();
  } catch (const QuadratureError& e) {
    throw DomainError(std::string("distribution is not integrable: ") + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------

TailFunction tail_from_orlicz_max(const OrliczFunction& m) {
  require_generating(m);
  const double floor = 1.0 / m.kink();
  const auto singular = singular_points(m);
  const Reciprocal inv(singular);
  auto tail = [m, inv](double t) {
    const double s = inv(t);
    if (s > m.kink()) return 1.0;
    return s * left_eval(m, s, 1) - m(s);
  };
  auto pdf = [m, inv](double t) {
    const double s = inv(t);
    if (s > m.kink()) return 0.0;
    return std::max(0.0, left_eval(m, s, 2)) / (t * t * t);
  };
  std::vector<Atom> atoms;
  for (auto [x, j] : m.slope_jumps()) atoms.push_back({1.0 / x, x * j});
  return TailFunction(tail, pdf, std::move(atoms), floor, inv.locations(), "max-tail");
}

DensityModel density_from_orlicz_max(const OrliczFunction& m) {
  const TailFunction t = tail_from_orlicz_max(m);
  return {[t](double x) { return t.pdf(x); }, t.atoms(), t.support_floor(), t.breakpoints(), {}};
}

TailFunction log_gamma_tail(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidArgument("log-gamma exponent p must be > 1");
  auto tail = [p](double x) { return x <= 1.0 ? 1.0 : std::pow(x, -p); };
  auto pdf = [p](double x) { return x < 1.0 ? 0.0 : p * std::pow(x, -p - 1.0); };
  std::ostringstream os;
  os << "loggamma(p=" << p << ")";
  return TailFunction(tail, pdf, {}, 1.0, {}, os.str());
}

TailFunction point_mass_tail(double location) {
  if (!(location > 0.0) || !std::isfinite(location)) throw InvalidArgument("point mass location must be positive");
  auto tail = [location](double t) { return t < location ? 1.0 : 0.0; };
  std::ostringstream os;
  os.precision(12);
  os << "point(" << location << ")";
  return TailFunction(tail, nullptr, {{location, 1.0}}, location, {}, os.str());
}

namespace {

struct PCase {
  OrliczFunction m;
  double p;
  Reciprocal inv;

  // Tail formula with s = 1/x; left limits in s give right-continuity in x.
  double tail(double x) const {
    const double s = inv(x);
    if (s > m.kink()) return 1.0;
    return -m(s) + s * left_eval(m, s, 1) - s * s * left_eval(m, s, 2) / p;
  }
  double raw_pdf(double x) const {
    const double s = inv(x);
    if (s > m.kink()) return 0.0;
    const double x3 = x * x * x;
    return (1.0 - 2.0 / p) * left_eval(m, s, 2) / x3 - left_eval(m, s, 3) / (p * x3 * x);
  }
  // Jump of the tail at x = 1/s0 (left limit minus value).
  double jump_at(double s0) const {
    const double d1 = right_eval(m, s0, 1) - left_eval(m, s0, 1);
    const double d2 = right_eval(m, s0, 2) - left_eval(m, s0, 2);
    return s0 * d1 - s0 * s0 * d2 / p;
  }
};

PCase make_p_case(const OrliczFunction& m, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidArgument("p must be > 1");
  require_generating(m);
  const auto singular = singular_points(m);
  return PCase{m, p, Reciprocal(singular)};
}

std::vector<Atom> p_case_atoms(const PCase& c) {
  std::vector<Atom> atoms;
  for (const auto& [img, s0] : c.inv.images) {
    const double jump = c.jump_at(s0);
    if (jump < -1e-12) {
      std::ostringstream os;
      os.precision(12);
      os << "tail formula increases at x = " << img << " (jump " << jump << ")";
      throw DomainError(os.str());
    }
    if (jump > 1e-14) atoms.push_back({img, jump});
  }
  return atoms;
}

}  // namespace

TailFunction tail_from_orlicz_p(const OrliczFunction& m, double p, bool check) {
  const PCase c = make_p_case(m, p);
  const double floor = 1.0 / m.kink();
  if (check) check_density([&c](double x) { return c.raw_pdf(x); }, floor, c.inv.locations());
  auto atoms = p_case_atoms(c);
  std::ostringstream os;
  os << "lp-tail(p=" << p << ")";
  return TailFunction([c](double x) { return c.tail(x); },
                      [c](double x) { return std::max(0.0, c.raw_pdf(x)); }, std::move(atoms), floor,
                      c.inv.locations(), os.str());
}

DensityModel density_from_orlicz_p(const OrliczFunction& m, double p) {
  const PCase c = make_p_case(m, p);
  const double floor = 1.0 / m.kink();
  check_density([&c](double x) { return c.raw_pdf(x); }, floor, c.inv.locations());
  return {[c, floor](double x) { return x < floor ? 0.0 : std::max(0.0, c.raw_pdf(x)); }, p_case_atoms(c),
          floor, c.inv.locations(), {}};
}

DensityModel density_from_orlicz_2(const OrliczFunction& m) {
  const PCase c = make_p_case(m, 2.0);
  const double floor = 1.0 / m.kink();
  auto raw = [c](double x) {
    const double s = c.inv(x);
    if (s > c.m.kink()) return 0.0;
    return -left_eval(c.m, s, 3) / (2.0 * x * x * x * x);
  };
  check_density(raw, floor, c.inv.locations());
  DensityModel d{[raw, floor](double x) { return x < floor ? 0.0 : std::max(0.0, raw(x)); }, p_case_atoms(c),
                 floor, c.inv.locations(), {}};
  for (const auto& a : d.atoms) {
    std::ostringstream os;
    os.precision(12);
    os << "kink is not smooth: atom of mass " << a.mass << " at x = " << a.location;
    d.warnings.push_back(os.str());
  }
  return d;
}

// ---------------------------------------------------------------------------

OrliczFunction orlicz_from_distribution_max(const TailFunction& d) {
  return rethrow_integrability([&] {
    const auto knots = distribution_knots(d);
    const auto b = upper_integrals(d, knots);
    const std::size_t n = knots.size();
    NodeData nd;
    nd.knots.resize(n);
    nd.slope_right.assign(n, 0.0);
    nd.slope_left.assign(n, 0.0);
    nd.second_right.assign(n, 0.0);
    nd.second_left.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) nd.knots[k] = knots[k].s;
    for (std::size_t k = 1; k < n; ++k) {
      const double u = knots[k].u;
      nd.slope_left[k] = u * d(u) + b[k];
      nd.slope_right[k] = u * d.at_least(u) + b[k];
      const double u3 = u * u * u;
      nd.second_left[k] = u3 * d.pdf(u * (1.0 + 1e-13));
      nd.second_right[k] = u3 * d.pdf(u * (1.0 - 1e-13));
    }
    const double tail_slope = nd.slope_right[n - 1];
    return assemble(std::move(nd), knots[n - 1].s, tail_slope);
  });
}

OrliczFunction orlicz_from_distribution_p(const TailFunction& d, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidArgument("p must be > 1");
  return rethrow_integrability([&] {
    const auto knots = distribution_knots(d);
    const auto b = upper_integrals(d, knots);
    const std::size_t n = knots.size();
    // A(u) = integral of x^(p-1) P(X > x) over (0, u], accumulated from the floor up.
    std::vector<double> a(n, 0.0);
    const double floor = d.support_floor();
    a[n - 1] = std::pow(floor, p) / p;
    auto weighted = [&d, p](double x) { return std::pow(x, p - 1.0) * d(x); };
    for (std::size_t k = n - 1; k >= 2; --k) {
      a[k - 1] = a[k] + quad::integrate(weighted, knots[k].u, knots[k - 1].u, d.breakpoints());
    }
    const double c = p / (p - 1.0);
    NodeData nd;
    nd.knots.resize(n);
    nd.slope_right.assign(n, 0.0);
    nd.slope_left.assign(n, 0.0);
    nd.second_right.assign(n, 0.0);
    nd.second_left.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) nd.knots[k] = knots[k].s;
    for (std::size_t k = 1; k < n; ++k) {
      const double s = knots[k].s;
      const double u = knots[k].u;
      const double slope = c * (p * std::pow(s, p - 1.0) * a[k] + b[k]);
      nd.slope_left[k] = nd.slope_right[k] = slope;
      const double base = p * p * std::pow(s, p - 2.0) * a[k];
      nd.second_left[k] = std::max(0.0, base - p * d(u) / (s * s));
      nd.second_right[k] = std::max(0.0, base - p * d.at_least(u) / (s * s));
    }
    const double tail_slope = nd.slope_right[n - 1];
    return assemble(std::move(nd), knots[n - 1].s, tail_slope);
  });
}

MusielakFamily musielak_from_distributions(std::span<const TailFunction> ds) {
  if (ds.empty()) throw InvalidArgument("need at least one distribution");
  std::vector<OrliczFunction> out;
  out.reserve(ds.size());
  for (const auto& d : ds) out.push_back(orlicz_from_distribution_max(d));
  return MusielakFamily(std::move(out));
}

double sup_difference(const OrliczFunction& m, const OrliczFunction& n, std::span<const double> grid) {
  double worst = 0.0;
  for (double t : grid) worst = std::max(worst, std::abs(m(t) - n(t)));
  return worst;
}

std::vector<double> roundtrip_grid(double kink) {
  std::vector<double> g = linear_grid(0.0, kink, 2049);
  const auto lg = log_grid(1e-6 * kink, kink, 512);
  g.insert(g.end(), lg.begin(), lg.end());
  std::sort(g.begin(), g.end());
  return g;
}

double roundtrip_max_error(const OrliczFunction& m) {
  const OrliczFunction back = orlicz_from_distribution_max(tail_from_orlicz_max(m));
  return sup_difference(m, back, roundtrip_grid(m.kink()));
}

double roundtrip_p_error(const OrliczFunction& m, double p) {
  const OrliczFunction back = orlicz_from_distribution_p(tail_from_orlicz_p(m, p), p);
  return sup_difference(m, back, roundtrip_grid(m.kink()));
}

}  // namespace orlicz
