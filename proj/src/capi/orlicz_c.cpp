#include "orlicz/orlicz.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "orlicz/errors.hpp"
#include "orlicz/function_spec.hpp"
#include "orlicz/generators.hpp"
#include "orlicz/harness.hpp"
#include "orlicz/report.hpp"
#include "orlicz/transforms.hpp"

struct orlicz_function {
  orlicz::OrliczFunction value;
};

struct orlicz_tail {
  orlicz::TailFunction value;
  std::vector<std::string> warnings;
};

struct orlicz_report {
  orlicz::EquivalenceReport value;
};

namespace {

thread_local std::string g_error;
thread_local std::size_t g_error_pos = 0;

orlicz_status fail(orlicz_status s, const char* what, std::size_t pos = 0) {
  g_error = what;
  g_error_pos = pos;
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
orlicz_status guarded(F&& f) {
  try {
    g_error.clear();
    g_error_pos = 0;
    f();
    return ORLICZ_OK;
  } catch (const orlicz::ParseError& e) {
    return fail(ORLICZ_E_PARSE, e.what(), e.position());
  } catch (const orlicz::InvalidArgument& e) {
    return fail(ORLICZ_E_INVALID_ARGUMENT, e.what());
  } catch (const orlicz::NotNormalizedError& e) {
    return fail(ORLICZ_E_NOT_NORMALIZED, e.what());
  } catch (const orlicz::NegativeDensityError& e) {
    return fail(ORLICZ_E_NEGATIVE_DENSITY, e.what());
  } catch (const orlicz::DomainError& e) {
    return fail(ORLICZ_E_DOMAIN, e.what());
  } catch (const orlicz::QuadratureError& e) {
    return fail(ORLICZ_E_QUADRATURE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ORLICZ_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ORLICZ_E_INTERNAL, e.what());
  } catch (...) {
    return fail(ORLICZ_E_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) throw orlicz::InvalidArgument(std::string(name) + " must not be NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

orlicz::WeightVector vec(const double* x, size_t n) {
  if (n == 0) throw orlicz::InvalidArgument("vector must have at least one entry");
  need(x, "x");
  return orlicz::WeightVector(std::vector<double>(x, x + n));
}

orlicz::VectorSuite make_suite(const orlicz_experiment_config& c) {
  orlicz::VectorSuite suite;
  if (c.suite == nullptr || std::strcmp(c.suite, "default") == 0) {
    suite = orlicz::default_suite(c.n);
  } else {
    suite.version = "inline";
    std::string_view text(c.suite);
    std::size_t start = 0, index = 0;
    while (true) {
      const std::size_t semi = text.find(';', start);
      const std::size_t len = (semi == std::string_view::npos ? text.size() : semi) - start;
      std::vector<double> v;
      try {
        v = orlicz::parse_number_list(text.substr(start, len));
      } catch (const orlicz::ParseError& e) {
        throw orlicz::ParseError(start + e.position(), e.detail());
      }
      if (!suite.vectors.empty() && v.size() != suite.vectors.front().x.size()) {
        throw orlicz::InvalidArgument("inline suite vectors must have equal length");
      }
      suite.vectors.push_back({"v" + std::to_string(index++), orlicz::WeightVector(std::move(v))});
      if (semi == std::string_view::npos) break;
      start = semi + 1;
    }
  }
  if (c.scale != 0.0) {
    if (!std::isfinite(c.scale)) throw orlicz::InvalidArgument("suite scale must be finite");
    suite = suite.scaled(c.scale);
  }
  return suite;
}

}  // namespace

extern "C" {

const char* orlicz_version(void) { return "1.0.0"; }

const char* orlicz_status_name(orlicz_status status) {
  switch (status) {
    case ORLICZ_OK:
      return "ok";
    case ORLICZ_E_INVALID_ARGUMENT:
      return "invalid argument";
    case ORLICZ_E_PARSE:
      return "parse error";
    case ORLICZ_E_DOMAIN:
      return "domain error";
    case ORLICZ_E_NOT_NORMALIZED:
      return "not normalized";
    case ORLICZ_E_NEGATIVE_DENSITY:
      return "negative density";
    case ORLICZ_E_IO:
      return "i/o error";
    case ORLICZ_E_QUADRATURE:
      return "quadrature failure";
    case ORLICZ_E_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* orlicz_last_error(void) { return g_error.c_str(); }
size_t orlicz_last_error_position(void) { return g_error_pos; }
void orlicz_string_free(char* s) { std::free(s); }

// ---- functions ------------------------------------------------------------

orlicz_status orlicz_function_parse(const char* spec, orlicz_function_t** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    *out = new orlicz_function{orlicz::parse_function_spec(spec)};
  });
}

void orlicz_function_free(orlicz_function_t* f) { delete f; }

orlicz_status orlicz_function_eval(const orlicz_function_t* f, double t, int order, double* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = f->value.eval(t, order);
  });
}

orlicz_status orlicz_function_kink(const orlicz_function_t* f, double* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = f->value.kink();
  });
}

orlicz_status orlicz_function_inverse_at_one(const orlicz_function_t* f, double* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = f->value.inverse_at_one();
  });
}

orlicz_status orlicz_function_describe(const orlicz_function_t* f, char** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = dup(f->value.describe());
  });
}

orlicz_status orlicz_normalization_integral(const orlicz_function_t* f, double* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = orlicz::normalization_integral(f->value);
  });
}

orlicz_status orlicz_normalize(const orlicz_function_t* f, orlicz_function_t** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = new orlicz_function{orlicz::normalize(f->value)};
  });
}

orlicz_status orlicz_linear_extension(const orlicz_function_t* f, double t, orlicz_function_t** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = new orlicz_function{orlicz::linear_extension(f->value, t)};
  });
}

orlicz_status orlicz_smooth(const orlicz_function_t* f, double c, int renormalize, orlicz_function_t** out,
                            double* delta) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    auto r = renormalize ? orlicz::smooth_kink_normalized(f->value, c) : orlicz::approx_smooth_kink(f->value, c);
    if (delta) *delta = r.delta;
    *out = new orlicz_function{r.smoothed};
  });
}

orlicz_status orlicz_smoothing_csv(const orlicz_function_t* f, double c, size_t count, char** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    if (count < 2) throw orlicz::InvalidArgument("need at least two rows");
    const auto r = orlicz::approx_smooth_kink(f->value, c);
    *out = dup(orlicz::smoothing_to_csv(f->value, r, count));
  });
}

orlicz_status orlicz_check_two_concave(const orlicz_function_t* f, int* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = orlicz::check_two_concave(f->value, orlicz::validation_grid(f->value)) ? 1 : 0;
  });
}

orlicz_status orlicz_norm(const orlicz_function_t* f, const double* x, size_t n, double tol, double* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = orlicz::orlicz_norm(f->value, vec(x, n), tol > 0.0 ? tol : orlicz::kDefaultNormTol);
  });
}

orlicz_status orlicz_musielak_norm(const char* family_spec, const double* x, size_t n, double tol, double* out) {
  return guarded([&] {
    need(family_spec, "family_spec");
    need(out, "out");
    const auto family = orlicz::parse_musielak_spec(family_spec);
    *out = orlicz::musielak_norm(family, vec(x, n), tol > 0.0 ? tol : orlicz::kDefaultNormTol);
  });
}

// ---- distributions ----------------------------------------------------------

orlicz_status orlicz_tail_from_function(const orlicz_function_t* f, orlicz_law law, double p, orlicz_tail_t** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    switch (law) {
      case ORLICZ_LAW_MAX:
        *out = new orlicz_tail{orlicz::tail_from_orlicz_max(f->value), {}};
        return;
      case ORLICZ_LAW_LP:
        *out = new orlicz_tail{orlicz::tail_from_orlicz_p(f->value, p), {}};
        return;
      case ORLICZ_LAW_P2: {
        const auto density = orlicz::density_from_orlicz_2(f->value);
        *out = new orlicz_tail{orlicz::tail_from_orlicz_p(f->value, 2.0), density.warnings};
        return;
      }
    }
    throw orlicz::InvalidArgument("unknown law");
  });
}

orlicz_status orlicz_tail_parse(const char* spec, orlicz_tail_t** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    *out = new orlicz_tail{orlicz::parse_tail_spec(spec), {}};
  });
}

void orlicz_tail_free(orlicz_tail_t* d) { delete d; }

orlicz_status orlicz_tail_eval(const orlicz_tail_t* d, double t, double* tail, double* pdf) {
  return guarded([&] {
    need(d, "tail");
    if (!std::isfinite(t)) throw orlicz::InvalidArgument("t must be finite");
    if (tail) *tail = d->value(t);
    if (pdf) *pdf = d->value.pdf(t);
  });
}

orlicz_status orlicz_tail_support_floor(const orlicz_tail_t* d, double* out) {
  return guarded([&] {
    need(d, "tail");
    need(out, "out");
    *out = d->value.support_floor();
  });
}

orlicz_status orlicz_tail_mean(const orlicz_tail_t* d, double* out) {
  return guarded([&] {
    need(d, "tail");
    need(out, "out");
    *out = d->value.mean();
  });
}

orlicz_status orlicz_tail_atom_count(const orlicz_tail_t* d, size_t* out) {
  return guarded([&] {
    need(d, "tail");
    need(out, "out");
    *out = d->value.atoms().size();
  });
}

orlicz_status orlicz_tail_atom(const orlicz_tail_t* d, size_t i, double* location, double* mass) {
  return guarded([&] {
    need(d, "tail");
    if (i >= d->value.atoms().size()) throw orlicz::InvalidArgument("atom index out of range");
    if (location) *location = d->value.atoms()[i].location;
    if (mass) *mass = d->value.atoms()[i].mass;
  });
}

orlicz_status orlicz_tail_warning_count(const orlicz_tail_t* d, size_t* out) {
  return guarded([&] {
    need(d, "tail");
    need(out, "out");
    *out = d->warnings.size();
  });
}

const char* orlicz_tail_warning(const orlicz_tail_t* d, size_t i) {
  if (d == nullptr || i >= d->warnings.size()) return nullptr;
  return d->warnings[i].c_str();
}

orlicz_status orlicz_tail_csv(const orlicz_tail_t* d, size_t count, double range, char** out) {
  return guarded([&] {
    need(d, "tail");
    need(out, "out");
    if (count < 2) throw orlicz::InvalidArgument("need at least two rows");
    if (!(range > 1.0) || !std::isfinite(range)) throw orlicz::InvalidArgument("range must exceed 1");
    const double floor = d->value.support_floor();
    const auto grid = orlicz::log_grid(0.5 * floor, floor * range, count);
    *out = dup(orlicz::tail_to_csv(d->value, grid));
  });
}

orlicz_status orlicz_tail_atoms_csv(const orlicz_tail_t* d, char** out) {
  return guarded([&] {
    need(d, "tail");
    need(out, "out");
    *out = dup(orlicz::atoms_to_csv(d->value));
  });
}

// ---- verification -----------------------------------------------------------

orlicz_status orlicz_roundtrip_max(const orlicz_function_t* f, double* sup_error) {
  return guarded([&] {
    need(f, "function");
    need(sup_error, "sup_error");
    *sup_error = orlicz::roundtrip_max_error(f->value);
  });
}

orlicz_status orlicz_roundtrip_p(const orlicz_function_t* f, double p, double* sup_error) {
  return guarded([&] {
    need(f, "function");
    need(sup_error, "sup_error");
    *sup_error = orlicz::roundtrip_p_error(f->value, p);
  });
}

orlicz_status orlicz_check_convolution(const orlicz_function_t* m, const orlicz_function_t* n, const orlicz_tail_t* mu,
                                       size_t count, double* sup, double* argmax) {
  return guarded([&] {
    need(m, "m");
    need(n, "n");
    need(mu, "mu");
    need(sup, "sup");
    if (count < 2) throw orlicz::InvalidArgument("need at least two grid points");
    if (!m->value.has_affine_tail()) throw orlicz::NotNormalizedError("M has no affine tail");
    const double floor = 1.0 / m->value.kink();
    const auto grid = orlicz::log_grid(0.5 * floor, 1e4 * floor, count);
    const auto r = orlicz::check_mult_convolution(m->value, n->value, mu->value, grid);
    *sup = r.sup;
    if (argmax) *argmax = r.argmax;
  });
}

orlicz_status orlicz_khintchine(const double* a, size_t n, uint64_t seed, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = orlicz::khintchine_check(vec(a, n), seed);
  });
}

orlicz_status orlicz_run_experiment(const orlicz_experiment_config* config, orlicz_report_t** out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    const auto& c = *config;
    const auto suite = make_suite(c);
    if (c.kind != ORLICZ_EXPERIMENT_PARETO) need(c.function, "config.function");
    switch (c.kind) {
      case ORLICZ_EXPERIMENT_MAX:
        *out = new orlicz_report{orlicz::max_equivalence_experiment(c.function->value, suite, c.n_mc, c.seed)};
        return;
      case ORLICZ_EXPERIMENT_LP:
        *out = new orlicz_report{orlicz::p_equivalence_experiment(c.function->value, c.p, suite, c.n_mc, c.seed)};
        return;
      case ORLICZ_EXPERIMENT_EMBEDDING:
        *out = new orlicz_report{orlicz::embedding_experiment(c.function->value, suite, c.n_mc, c.seed)};
        return;
      case ORLICZ_EXPERIMENT_PARETO:
        *out = new orlicz_report{orlicz::pareto_generates_lp(c.p, suite, c.n_mc, c.seed)};
        return;
    }
    throw orlicz::InvalidArgument("unknown experiment");
  });
}

void orlicz_report_free(orlicz_report_t* r) { delete r; }

orlicz_status orlicz_report_spread(const orlicz_report_t* r, double* spread, double* ratio_min, double* ratio_max) {
  return guarded([&] {
    need(r, "report");
    if (spread) *spread = r->value.spread;
    if (ratio_min) *ratio_min = r->value.ratio_min;
    if (ratio_max) *ratio_max = r->value.ratio_max;
  });
}

orlicz_status orlicz_report_entry_count(const orlicz_report_t* r, size_t* out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = r->value.entries.size();
  });
}

orlicz_status orlicz_report_entry(const orlicz_report_t* r, size_t i, const char** label, double* norm,
                                  double* mc_mean, double* mc_stderr, double* ratio) {
  return guarded([&] {
    need(r, "report");
    if (i >= r->value.entries.size()) throw orlicz::InvalidArgument("entry index out of range");
    const auto& e = r->value.entries[i];
    if (label) *label = e.label.c_str();
    if (norm) *norm = e.norm;
    if (mc_mean) *mc_mean = e.mc.mean;
    if (mc_stderr) *mc_stderr = e.mc.std_error;
    if (ratio) *ratio = e.ratio;
  });
}

orlicz_status orlicz_report_json(const orlicz_report_t* r, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = dup(orlicz::report_to_json(r->value));
  });
}

orlicz_status orlicz_report_csv(const orlicz_report_t* r, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = dup(orlicz::report_to_csv(r->value));
  });
}

}  // extern "C"
