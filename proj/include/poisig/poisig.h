/*
 * Copyright 2026 The poisig Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libpoisig.
 *
 * Every object is an opaque handle created by a poisig_*_create / generate
 * function and released by the matching poisig_*_destroy. Destroy functions
 * accept NULL. Handles are immutable after creation and may be shared across
 * threads; poisig_last_error() is per thread.
 *
 * Every fallible function returns a poisig_status. On failure the output
 * arguments are left untouched and poisig_last_error() describes the cause.
 */

#ifndef POISIG_POISIG_H_
#define POISIG_POISIG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(POISIG_BUILDING_LIBRARY)
#    define POISIG_API __declspec(dllexport)
#  else
#    define POISIG_API __declspec(dllimport)
#  endif
#else
#  define POISIG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum poisig_status {
  POISIG_OK = 0,
  POISIG_ERR_PARAMETER = 1, /* invalid model, pattern or config parameter */
  POISIG_ERR_DOMAIN = 2,    /* argument outside the function's domain */
  POISIG_ERR_NUMERIC = 3,   /* quadrature missed tolerance */
  POISIG_ERR_CAPACITY = 4,  /* input larger than the routine supports */
  POISIG_ERR_SAMPLING = 5,  /* fading draw was not strictly positive */
  POISIG_ERR_IO = 6,
  POISIG_ERR_NULL = 7,      /* required pointer argument was NULL */
  POISIG_ERR_BUFFER = 8,    /* caller buffer too small; required size returned */
  POISIG_ERR_INTERNAL = 9
} poisig_status;

/* Message for the last failure on this thread; "" after success. */
POISIG_API const char* poisig_last_error(void);
/* Best estimate carried by the last POISIG_ERR_NUMERIC on this thread. */
POISIG_API double poisig_last_numeric_estimate(void);
POISIG_API const char* poisig_version(void);

/* 0 selects hardware concurrency. Results never depend on this value. */
POISIG_API void poisig_set_threads(unsigned n);

/* Seed of stream (index, lane) under a master seed. */
POISIG_API uint64_t poisig_derive_seed(uint64_t master, uint64_t index, uint64_t lane);

/* ---------------------------------------------------------------- patterns */

typedef struct poisig_pattern_spec poisig_pattern_spec;
typedef struct poisig_pattern poisig_pattern;

POISIG_API poisig_status poisig_spec_poisson_disk(double density, double radius,
                                                  poisig_pattern_spec** out);
POISIG_API poisig_status poisig_spec_square_lattice(double spacing, double radius,
                                                    double offset_x, double offset_y,
                                                    poisig_pattern_spec** out);
POISIG_API poisig_status poisig_spec_hex_lattice(double spacing, double radius,
                                                 double offset_x, double offset_y,
                                                 poisig_pattern_spec** out);
POISIG_API poisig_status poisig_spec_perturbed_lattice(double spacing, double radius,
                                                       double jitter,
                                                       poisig_pattern_spec** out);
POISIG_API poisig_status poisig_spec_explicit(const double* xs, const double* ys, size_t n,
                                              poisig_pattern_spec** out);
POISIG_API void poisig_spec_destroy(poisig_pattern_spec* spec);

POISIG_API poisig_status poisig_pattern_generate(const poisig_pattern_spec* spec,
                                                 uint64_t seed, poisig_pattern** out);
POISIG_API poisig_status poisig_pattern_read_csv(const char* path, poisig_pattern** out);
POISIG_API poisig_status poisig_pattern_write_csv(const poisig_pattern* pattern,
                                                  const char* path);
POISIG_API void poisig_pattern_destroy(poisig_pattern* pattern);

POISIG_API size_t poisig_pattern_size(const poisig_pattern* pattern);
POISIG_API double poisig_pattern_density(const poisig_pattern* pattern);
POISIG_API double poisig_pattern_window_radius(const poisig_pattern* pattern);
/* Copies min(capacity, size) points in canonical order. */
POISIG_API poisig_status poisig_pattern_points(const poisig_pattern* pattern, double* xs,
                                               double* ys, size_t capacity);
POISIG_API poisig_status poisig_pattern_count_in_disk(const poisig_pattern* pattern, double r,
                                                      size_t* out);
POISIG_API poisig_status poisig_pattern_density_ratio(const poisig_pattern* pattern, double r,
                                                      double* out);

/* --------------------------------------------------------------- path loss */

typedef struct poisig_pathloss poisig_pathloss;

POISIG_API poisig_status poisig_pathloss_power_law(double beta, poisig_pathloss** out);
POISIG_API poisig_status poisig_pathloss_exponential(double beta, poisig_pathloss** out);
/* k breakpoints, k + 1 exponents; b_2.. follow from continuity. */
POISIG_API poisig_status poisig_pathloss_multi_slope(const double* breakpoints, size_t k,
                                                     const double* exponents, double b1,
                                                     poisig_pathloss** out);
POISIG_API void poisig_pathloss_destroy(poisig_pathloss* pl);

POISIG_API poisig_status poisig_pathloss_h(const poisig_pathloss* pl, double r, double* out);
POISIG_API poisig_status poisig_pathloss_h_inv(const poisig_pathloss* pl, double y,
                                               double* out);

/* ------------------------------------------------------------------ fading */

typedef struct poisig_fading poisig_fading;

POISIG_API poisig_status poisig_fading_constant(double s, poisig_fading** out);
POISIG_API poisig_status poisig_fading_exponential(double rate, poisig_fading** out);
POISIG_API poisig_status poisig_fading_lognormal(double mu, double sigma, poisig_fading** out);
POISIG_API poisig_status poisig_fading_lognormal_normalized(double v, double beta,
                                                            poisig_fading** out);
POISIG_API poisig_status poisig_fading_tabulated(const double* values, const double* cdf,
                                                 size_t n, poisig_fading** out);
POISIG_API void poisig_fading_destroy(poisig_fading* f);

POISIG_API poisig_status poisig_fading_cdf(const poisig_fading* f, double x, double* out);
/* E[S^p], 0 < p < 1. */
POISIG_API poisig_status poisig_moment_frac(const poisig_fading* f, double p, double* out);

/* ------------------------------------------------------------- propagation */

/* Writes the pattern-size sorted inverse powers and transmitter indices.
 * Either output may be NULL. */
POISIG_API poisig_status poisig_sample_signals(const poisig_pattern* pattern,
                                               const poisig_pathloss* pl,
                                               const poisig_fading* f, uint64_t seed,
                                               double* inverse_powers, size_t* transmitters,
                                               size_t capacity);
POISIG_API poisig_status poisig_signal_cdf(const poisig_pathloss* pl, const poisig_fading* f,
                                           double r, double t, double* out);

/* --------------------------------------------------------------- intensity */

typedef struct poisig_intensity poisig_intensity;

POISIG_API poisig_status poisig_intensity_power_law(double density, double beta,
                                                    double moment, poisig_intensity** out);
/* window_radius <= 0 or infinite selects the unbounded plane. */
POISIG_API poisig_status poisig_intensity_stationary(double density, const poisig_pathloss* pl,
                                                     const poisig_fading* f,
                                                     double window_radius,
                                                     poisig_intensity** out);
POISIG_API poisig_status poisig_intensity_pattern(const poisig_pattern* pattern,
                                                  const poisig_pathloss* pl,
                                                  const poisig_fading* f, size_t n_mc,
                                                  uint64_t seed, double observer_jitter,
                                                  poisig_intensity** out);
POISIG_API poisig_status poisig_intensity_tabulated(const double* t, const double* m, size_t n,
                                                    poisig_intensity** out);
POISIG_API void poisig_intensity_destroy(poisig_intensity* m);

/* std_error may be NULL; it is 0 for deterministic backends. */
POISIG_API poisig_status poisig_intensity_eval(const poisig_intensity* m, double t,
                                               double* value, double* std_error);
POISIG_API poisig_status poisig_power_intensity(const poisig_intensity* m, double t_prime,
                                                double* value, double* std_error);

POISIG_API poisig_status poisig_multislope_intensity(double density, const poisig_pathloss* pl,
                                                     const poisig_fading* f, double t,
                                                     double* out);
/* substituted may be NULL; *has_substituted is 0 when S has no density. */
POISIG_API poisig_status poisig_exponential_pl_intensity(double density, double beta,
                                                         const poisig_fading* f, double t,
                                                         double* value, double* substituted,
                                                         int* has_substituted);
POISIG_API poisig_status poisig_sum_signal_cdf(const poisig_pattern* pattern,
                                               const poisig_pathloss* pl,
                                               const poisig_fading* f, double t, double* out);

/* ------------------------------------------------------------------ bounds */

typedef struct poisig_tv_bounds {
  double tau;
  double m_tau;
  double sum_p_sq;
  double max_p;
  double lower;
  double upper;
  double upper_coarse;
} poisig_tv_bounds;

typedef struct poisig_order_stat_bound {
  double tau;
  int k;
  double m_tau;
  double sum_p_sq;
  double poisson_tail;
  double total;
} poisig_order_stat_bound;

POISIG_API poisig_status poisig_theorem1_bounds(const poisig_pattern* pattern,
                                                const poisig_pathloss* pl,
                                                const poisig_fading* f, double tau,
                                                poisig_tv_bounds* out);
POISIG_API poisig_status poisig_theorem3_bound(const poisig_pattern* pattern,
                                               const poisig_pathloss* pl,
                                               const poisig_fading* f, double tau, int k,
                                               poisig_order_stat_bound* out);
POISIG_API poisig_status poisig_optimize_theorem3_tau(const poisig_pattern* pattern,
                                                      const poisig_pathloss* pl,
                                                      const poisig_fading* f, int k,
                                                      const double* tau_grid, size_t n,
                                                      poisig_order_stat_bound* out);
POISIG_API poisig_status poisig_count_tv_oracle(const poisig_pattern* pattern,
                                                const poisig_pathloss* pl,
                                                const poisig_fading* f, double tau,
                                                double* out);
/* Same oracle for explicit Bernoulli parameters. */
POISIG_API poisig_status poisig_count_tv(const double* p, size_t n, double* out);

/* ---------------------------------------------------------------- empirics */

typedef struct poisig_order_stats poisig_order_stats;

POISIG_API poisig_status poisig_simulate_fixed(const poisig_pattern* pattern,
                                               const poisig_pathloss* pl,
                                               const poisig_fading* f, int k, size_t n,
                                               uint64_t master_seed, poisig_order_stats** out);
POISIG_API poisig_status poisig_simulate_random(const poisig_pattern_spec* spec,
                                                const poisig_pathloss* pl,
                                                const poisig_fading* f, int k, size_t n,
                                                uint64_t master_seed, poisig_order_stats** out);
POISIG_API void poisig_order_stats_destroy(poisig_order_stats* m);

POISIG_API size_t poisig_order_stats_rows(const poisig_order_stats* m);
POISIG_API int poisig_order_stats_k(const poisig_order_stats* m);
POISIG_API size_t poisig_order_stats_partial_rows(const poisig_order_stats* m);
/* Row r, k values; missing entries are NaN. *partial may be NULL. */
POISIG_API poisig_status poisig_order_stats_row(const poisig_order_stats* m, size_t r,
                                                double* values, int* partial);
/* Sorted samples of V_(i). On POISIG_ERR_BUFFER, *count holds the size needed. */
POISIG_API poisig_status poisig_order_stats_column(const poisig_order_stats* m, int i,
                                                   double* out, size_t capacity,
                                                   size_t* count);
POISIG_API poisig_status poisig_order_stats_write_csv(const poisig_order_stats* m,
                                                      const char* path);

POISIG_API poisig_status poisig_poisson_order_cdf(const poisig_intensity* m, int k, double t,
                                                  double* out);

typedef double (*poisig_cdf_fn)(double x, void* user);

POISIG_API poisig_status poisig_ks_distance(const double* sorted_samples, size_t n,
                                            poisig_cdf_fn cdf, void* user, double* out);
/* KS distance of sorted samples against P(Y_(k) <= t) under m. */
POISIG_API poisig_status poisig_ks_poisson_order(const double* sorted_samples, size_t n,
                                                 const poisig_intensity* m, int k,
                                                 double* out);

/* m_hat[j] is NaN where E-hat = 1. *censored_above is NaN when every grid
 * point is censored. e_hat may be NULL. */
POISIG_API poisig_status poisig_estimate_intensity(const double* min_samples, size_t n,
                                                   const double* grid, size_t grid_n,
                                                   double* e_hat, double* m_hat,
                                                   double* censored_above);
POISIG_API poisig_status poisig_tv_density_estimate(const double* a, size_t na,
                                                    const double* b, size_t nb, int bins,
                                                    double* out);

typedef enum poisig_sweep_family {
  POISIG_SWEEP_LOGNORMAL = 0,
  POISIG_SWEEP_RAYLEIGH = 1
} poisig_sweep_family;

typedef struct poisig_sweep_row {
  double v;
  int order_index;
  double ks; /* NaN when no replicate had this order statistic */
  size_t n;
} poisig_sweep_row;

/* Rows are (v, order index) in ascending order: v_count * k rows. */
POISIG_API poisig_status poisig_convergence_sweep(const poisig_pattern_spec* spec,
                                                  int regenerate_pattern, double beta,
                                                  poisig_sweep_family family,
                                                  const double* v, size_t v_count, int k,
                                                  size_t n, uint64_t seed,
                                                  poisig_sweep_row* rows, size_t capacity);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* POISIG_POISIG_H_ */
