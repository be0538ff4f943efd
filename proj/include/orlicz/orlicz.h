/* C interface of the orlicz library.
 *
 * All objects are opaque handles released with the matching *_free function.
 * Every call returns an orlicz_status; on failure orlicz_last_error() gives a
 * message for the calling thread. Strings returned through char** are owned
 * by the caller and released with orlicz_string_free(). */
#ifndef ORLICZ_ORLICZ_H
#define ORLICZ_ORLICZ_H

#include <stddef.h>
#include <stdint.h>

#if defined(ORLICZ_BUILDING_LIBRARY)
#define ORLICZ_API __attribute__((visibility("default")))
#else
#define ORLICZ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum orlicz_status {
  ORLICZ_OK = 0,
  ORLICZ_E_INVALID_ARGUMENT = 1,
  ORLICZ_E_PARSE = 2,
  ORLICZ_E_DOMAIN = 3,
  ORLICZ_E_NOT_NORMALIZED = 4,
  ORLICZ_E_NEGATIVE_DENSITY = 5,
  ORLICZ_E_IO = 6,
  ORLICZ_E_QUADRATURE = 7,
  ORLICZ_E_INTERNAL = 8
} orlicz_status;

typedef struct orlicz_function orlicz_function_t;
typedef struct orlicz_tail orlicz_tail_t;
typedef struct orlicz_report orlicz_report_t;

ORLICZ_API const char* orlicz_version(void);
ORLICZ_API const char* orlicz_status_name(orlicz_status status);
/* Message of the last failed call on this thread ("" if none). */
ORLICZ_API const char* orlicz_last_error(void);
/* Offset into the spec string for ORLICZ_E_PARSE, otherwise 0. */
ORLICZ_API size_t orlicz_last_error_position(void);
ORLICZ_API void orlicz_string_free(char* s);

/* ---- Orlicz functions ------------------------------------------------- */

/* Function mini-grammar, e.g. "power:q=1.5|normalize|smooth:c=1.1". */
ORLICZ_API orlicz_status orlicz_function_parse(const char* spec, orlicz_function_t** out);
ORLICZ_API void orlicz_function_free(orlicz_function_t* f);
ORLICZ_API orlicz_status orlicz_function_eval(const orlicz_function_t* f, double t, int order, double* out);
/* Kink abscissa; +inf when the function has no affine part. */
ORLICZ_API orlicz_status orlicz_function_kink(const orlicz_function_t* f, double* out);
ORLICZ_API orlicz_status orlicz_function_inverse_at_one(const orlicz_function_t* f, double* out);
ORLICZ_API orlicz_status orlicz_function_describe(const orlicz_function_t* f, char** out);
ORLICZ_API orlicz_status orlicz_normalization_integral(const orlicz_function_t* f, double* out);
ORLICZ_API orlicz_status orlicz_normalize(const orlicz_function_t* f, orlicz_function_t** out);
ORLICZ_API orlicz_status orlicz_linear_extension(const orlicz_function_t* f, double t, orlicz_function_t** out);
/* Kink smoothing with constant c > 1. With renormalize != 0 values are then
 * rescaled to keep the normalization integral. delta may be NULL. */
ORLICZ_API orlicz_status orlicz_smooth(const orlicz_function_t* f, double c, int renormalize,
                                       orlicz_function_t** out, double* delta);
/* CSV "t,M,N,M2,N2" of the (non-renormalized) smoothing on `count` points of
 * [0, T], preceded by "# delta=<value>". */
ORLICZ_API orlicz_status orlicz_smoothing_csv(const orlicz_function_t* f, double c, size_t count, char** out);
/* *out = 1 if M''' <= 0 on the default validation grid. */
ORLICZ_API orlicz_status orlicz_check_two_concave(const orlicz_function_t* f, int* out);

ORLICZ_API orlicz_status orlicz_norm(const orlicz_function_t* f, const double* x, size_t n, double tol,
                                     double* out);
/* ';'-separated function specs, one per coordinate. */
ORLICZ_API orlicz_status orlicz_musielak_norm(const char* family_spec, const double* x, size_t n, double tol,
                                              double* out);

/* ---- Distributions ---------------------------------------------------- */

typedef enum orlicz_law {
  ORLICZ_LAW_MAX = 0, /* E max |x_i X_i| */
  ORLICZ_LAW_LP = 1,  /* E ||(x_i X_i)||_p */
  ORLICZ_LAW_P2 = 2   /* p = 2 through the third-derivative formula */
} orlicz_law;

ORLICZ_API orlicz_status orlicz_tail_from_function(const orlicz_function_t* f, orlicz_law law, double p,
                                                   orlicz_tail_t** out);
/* "point:<a>", "loggamma:<p>", "max:<fn>", "lp:<p>:<fn>". */
ORLICZ_API orlicz_status orlicz_tail_parse(const char* spec, orlicz_tail_t** out);
ORLICZ_API void orlicz_tail_free(orlicz_tail_t* d);
/* P(X > t) and the density at t; either output may be NULL. */
ORLICZ_API orlicz_status orlicz_tail_eval(const orlicz_tail_t* d, double t, double* tail, double* pdf);
ORLICZ_API orlicz_status orlicz_tail_support_floor(const orlicz_tail_t* d, double* out);
ORLICZ_API orlicz_status orlicz_tail_mean(const orlicz_tail_t* d, double* out);
ORLICZ_API orlicz_status orlicz_tail_atom_count(const orlicz_tail_t* d, size_t* out);
ORLICZ_API orlicz_status orlicz_tail_atom(const orlicz_tail_t* d, size_t i, double* location, double* mass);
ORLICZ_API orlicz_status orlicz_tail_warning_count(const orlicz_tail_t* d, size_t* out);
ORLICZ_API const char* orlicz_tail_warning(const orlicz_tail_t* d, size_t i);
/* CSV "t,tail,pdf" on `count` log-spaced points over [floor/2, floor*range]. */
ORLICZ_API orlicz_status orlicz_tail_csv(const orlicz_tail_t* d, size_t count, double range, char** out);
/* CSV "location,mass". */
ORLICZ_API orlicz_status orlicz_tail_atoms_csv(const orlicz_tail_t* d, char** out);

/* ---- Verification ----------------------------------------------------- */

/* Sup-error on [0, T] of the function rebuilt from its generating law. */
ORLICZ_API orlicz_status orlicz_roundtrip_max(const orlicz_function_t* f, double* sup_error);
ORLICZ_API orlicz_status orlicz_roundtrip_p(const orlicz_function_t* f, double p, double* sup_error);
/* sup over `count` log-spaced t in [floor/2, floor*1e4] (floor of the law of
 * M) of |P(X_M > t) - P(X Y > t)|, X ~ mu, Y the max-law of N. */
ORLICZ_API orlicz_status orlicz_check_convolution(const orlicz_function_t* m, const orlicz_function_t* n,
                                                  const orlicz_tail_t* mu, size_t count, double* sup,
                                                  double* argmax);
/* E|sum a_i eps_i| / ||a||_2. */
ORLICZ_API orlicz_status orlicz_khintchine(const double* a, size_t n, uint64_t seed, double* out);

typedef enum orlicz_experiment {
  ORLICZ_EXPERIMENT_MAX = 0,
  ORLICZ_EXPERIMENT_LP = 1,
  ORLICZ_EXPERIMENT_EMBEDDING = 2,
  ORLICZ_EXPERIMENT_PARETO = 3
} orlicz_experiment;

typedef struct orlicz_experiment_config {
  orlicz_experiment kind;
  const orlicz_function_t* function; /* unused for PARETO */
  double p;                          /* LP and PARETO */
  size_t n;                          /* dimension of the default suite */
  size_t n_mc;
  uint64_t seed;
  /* NULL or "default" for the built-in suite, otherwise ';'-separated
   * comma lists (all of the same length, which overrides n). */
  const char* suite;
  double scale; /* every suite vector is multiplied by this (0 means 1) */
} orlicz_experiment_config;

ORLICZ_API orlicz_status orlicz_run_experiment(const orlicz_experiment_config* config, orlicz_report_t** out);
ORLICZ_API void orlicz_report_free(orlicz_report_t* r);
ORLICZ_API orlicz_status orlicz_report_spread(const orlicz_report_t* r, double* spread, double* ratio_min,
                                              double* ratio_max);
ORLICZ_API orlicz_status orlicz_report_entry_count(const orlicz_report_t* r, size_t* out);
/* Any output pointer may be NULL; *label stays owned by the report. */
ORLICZ_API orlicz_status orlicz_report_entry(const orlicz_report_t* r, size_t i, const char** label,
                                             double* norm, double* mc_mean, double* mc_stderr, double* ratio);
ORLICZ_API orlicz_status orlicz_report_json(const orlicz_report_t* r, char** out);
ORLICZ_API orlicz_status orlicz_report_csv(const orlicz_report_t* r, char** out);

#ifdef __cplusplus
}
#endif

#endif /* ORLICZ_ORLICZ_H */
