#ifndef ORBCONV_ORBCONV_H
#define ORBCONV_ORBCONV_H

/*
 * C interface to liborbconv: spherical functions, spherical transforms and
 * densities of orbital-measure convolutions on real hyperbolic spaces, with a
 * Monte Carlo sampler and the verification suite.
 *
 * Every function returns an orbconv_status. On failure the thread-local
 * message from orbconv_last_error() describes the problem. Strings returned
 * through char** outputs are owned by the caller and released with
 * orbconv_free_string(). Handles are released with their _destroy function;
 * passing NULL to a destroy function is a no-op.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define ORBCONV_API __declspec(dllexport)
#else
#  define ORBCONV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum orbconv_status {
  ORBCONV_OK = 0,
  ORBCONV_INVALID_ARGUMENT = 1,
  ORBCONV_UNSUPPORTED = 2,
  ORBCONV_BELOW_THRESHOLD = 3,
  ORBCONV_QUADRATURE_BUDGET = 4,
  ORBCONV_INVARIANT_VIOLATION = 5,
  ORBCONV_IO_ERROR = 6,
  ORBCONV_INTERNAL_ERROR = 7
} orbconv_status;

typedef enum orbconv_verdict {
  ORBCONV_VERDICT_FINITE = 0,
  ORBCONV_VERDICT_DIVERGENT = 1,
  ORBCONV_VERDICT_MARGINAL = 2
} orbconv_verdict;

typedef struct orbconv_space orbconv_space;
typedef struct orbconv_conv orbconv_conv;
typedef struct orbconv_product orbconv_product;

typedef struct orbconv_quadrature {
  int min_order;
  int max_order;
  double tolerance;
} orbconv_quadrature;

typedef struct orbconv_spectral {
  double lambda_max;
  size_t lambda_points;
  double heat_time;       /* negative: 30 / lambda_max^2 */
  int max_order;          /* polar order cap for phi at the generators */
  int density_max_order;  /* polar order cap at density points */
  unsigned threads;       /* 0: ORBCONV_THREADS or hardware concurrency */
} orbconv_spectral;

typedef struct orbconv_l2_report {
  double tail_exponent;
  double tail_exponent_stderr;
  double tail_amplitude;
  orbconv_verdict verdict;
  int has_value;
  double value;
  double truncated_value;
  double tail_completion;
  int threshold_r;
} orbconv_l2_report;

typedef struct orbconv_regularity {
  int l2_threshold_met;
  int ck_max;
  int threshold_r;
  int max_dim;
  int absolute_continuity_met;
} orbconv_regularity;

typedef struct orbconv_comparison {
  double l1;
  double sup;
  double ks;
} orbconv_comparison;

ORBCONV_API const char* orbconv_last_error(void);
ORBCONV_API const char* orbconv_status_name(orbconv_status status);
ORBCONV_API const char* orbconv_verdict_name(orbconv_verdict verdict);
ORBCONV_API const char* orbconv_version(void);
ORBCONV_API void orbconv_free_string(char* s);

ORBCONV_API void orbconv_quadrature_defaults(orbconv_quadrature* quad);
ORBCONV_API void orbconv_spectral_l2_defaults(orbconv_spectral* config);
ORBCONV_API void orbconv_spectral_density_defaults(orbconv_spectral* config);

/* Spaces. family: "real-hyperbolic" {n}, "complex-hyperbolic" {m},
 * "generic-rank-one" {m_alpha, m_2alpha}. */
ORBCONV_API orbconv_status orbconv_space_create(const char* family, const int* params, size_t count,
                                                orbconv_space** out);
ORBCONV_API orbconv_status orbconv_space_from_json(const char* json, orbconv_space** out);
ORBCONV_API orbconv_status orbconv_space_to_json(const orbconv_space* space, char** json);
ORBCONV_API void orbconv_space_destroy(orbconv_space* space);
ORBCONV_API orbconv_status orbconv_space_dim(const orbconv_space* space, int* dim);
ORBCONV_API orbconv_status orbconv_space_rank(const orbconv_space* space, int* rank);
/* rho as a vector of length rank. */
ORBCONV_API orbconv_status orbconv_space_rho(const orbconv_space* space, double* rho, size_t capacity);
ORBCONV_API orbconv_status orbconv_radial_jacobian(const orbconv_space* space, double t, double* value);

/* Roots as a row-major count x rank array. */
ORBCONV_API orbconv_status orbconv_root_separation_constant(const double* roots, size_t count, size_t rank,
                                                            double* value);

/* Spherical functions and Plancherel weight (rank one). quad may be NULL. */
ORBCONV_API orbconv_status orbconv_spherical(const orbconv_space* space, double lambda, double t,
                                             const orbconv_quadrature* quad, double* re, double* im);
ORBCONV_API orbconv_status orbconv_plancherel_weight(const orbconv_space* space, double lambda, double* weight);
ORBCONV_API orbconv_status orbconv_decay_envelope(const orbconv_space* space, double t, double lambda,
                                                  double* value);

/* Orbital convolutions nu_{a_1} * ... * nu_{a_r}, t_i > 0. */
ORBCONV_API orbconv_status orbconv_conv_create(const orbconv_space* space, const double* generators, size_t r,
                                               orbconv_conv** out);
ORBCONV_API void orbconv_conv_destroy(orbconv_conv* conv);
ORBCONV_API orbconv_status orbconv_transform(const orbconv_conv* conv, double lambda,
                                             const orbconv_quadrature* quad, double* re, double* im);
ORBCONV_API orbconv_status orbconv_l2_norm_sq(const orbconv_conv* conv, const orbconv_spectral* config,
                                              orbconv_l2_report* report);
ORBCONV_API orbconv_status orbconv_density_at(const orbconv_conv* conv, double t, const orbconv_spectral* config,
                                              double* value);
ORBCONV_API orbconv_status orbconv_density_derivative(const orbconv_conv* conv, double t, int k,
                                                      const orbconv_spectral* config, double* value);
/* Uniform grid on [0, support + margin]; arrays hold `points` entries.
 * jacobian and mass may be NULL. */
ORBCONV_API orbconv_status orbconv_density_profile(const orbconv_conv* conv, const orbconv_spectral* config,
                                                   size_t points, double* grid, double* values, double* jacobian,
                                                   double* mass);
/* Profile on a caller-supplied increasing grid. */
ORBCONV_API orbconv_status orbconv_density_on_grid(const orbconv_conv* conv, const orbconv_spectral* config,
                                                   const double* grid, size_t points, double* values,
                                                   double* jacobian, double* mass);
/* k-th radial derivative on a caller-supplied grid (k >= 1). */
ORBCONV_API orbconv_status orbconv_density_derivative_on_grid(const orbconv_conv* conv, const orbconv_spectral* config,
                                                              int k, const double* grid, size_t points,
                                                              double* values);
/* Heat-window time s actually used by density evaluation under config. */
ORBCONV_API orbconv_status orbconv_effective_heat_time(const orbconv_spectral* config, double* s);
ORBCONV_API orbconv_status orbconv_regularity_report(const orbconv_conv* conv, orbconv_regularity* report);

/* Monte Carlo. */
ORBCONV_API orbconv_status orbconv_sample(const orbconv_conv* conv, size_t n, uint64_t seed, unsigned threads,
                                          double* samples);
/* bins >= 10 on [lo, hi]; hi <= lo selects [0, max sample]. Arrays hold
 * `bins` entries. */
ORBCONV_API orbconv_status orbconv_histogram(const orbconv_space* space, const double* samples, size_t n, int bins,
                                             double lo, double hi, double* centers, uint64_t* counts,
                                             double* density_estimate);
ORBCONV_API orbconv_status orbconv_compare(const orbconv_conv* conv, const double* samples, size_t n, int bins,
                                           const orbconv_spectral* config, size_t profile_points,
                                           orbconv_comparison* out);
ORBCONV_API orbconv_status orbconv_empirical_transform(const orbconv_space* space, const double* samples, size_t n,
                                                       double lambda, double* mean_re, double* mean_im,
                                                       double* standard_error);

/* Products of rank-one spaces; generators is row-major r x s. */
ORBCONV_API orbconv_status orbconv_product_create(const orbconv_space* const* factors, size_t s,
                                                  const double* generators, size_t r, orbconv_product** out);
ORBCONV_API void orbconv_product_destroy(orbconv_product* product);
ORBCONV_API orbconv_status orbconv_product_density_at(const orbconv_product* product, const double* t,
                                                      const orbconv_spectral* config, double* value);
ORBCONV_API orbconv_status orbconv_product_l2_norm_sq(const orbconv_product* product, const orbconv_spectral* config,
                                                      orbconv_verdict* verdict, double* value);
ORBCONV_API orbconv_status orbconv_product_mass(const orbconv_product* product, const orbconv_spectral* config,
                                                size_t points, double* mass);
ORBCONV_API orbconv_status orbconv_product_regularity_report(const orbconv_product* product,
                                                             orbconv_regularity* report);

/* Verification suite. criterion in 1..10; quick selects the scaled-down
 * variant. report receives a JSON object {criterion, name, quick, passed,
 * seconds, checks: [{name, value, bound, relation, passed}], note,
 * error_kind}; free it with orbconv_free_string. */
ORBCONV_API int orbconv_criterion_count(void);
ORBCONV_API orbconv_status orbconv_verify(int criterion, int quick, int* passed, char** report);

#ifdef __cplusplus
}
#endif

#endif
