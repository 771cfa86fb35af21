// Copyright 2026 The poisig Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "poisig/poisig.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "poisig/empirics.hpp"
#include "poisig/errors.hpp"
#include "poisig/intensity.hpp"
#include "poisig/parallel.hpp"
#include "poisig/pointpattern.hpp"
#include "poisig/poissonbounds.hpp"
#include "poisig/propagation.hpp"
#include "poisig/random.hpp"

struct poisig_pattern_spec {
  poisig::PatternSpec spec;
};
struct poisig_pattern {
  std::shared_ptr<const poisig::PointPattern> pattern;
};
struct poisig_pathloss {
  poisig::PathLossModel model;
};
struct poisig_fading {
  poisig::FadingModel model;
};
struct poisig_intensity {
  poisig::IntensityMeasure measure;
};
struct poisig_order_stats {
  poisig::OrderStatMatrix matrix;
};

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

thread_local std::string g_error;
thread_local double g_numeric_estimate = kNaN;

poisig_status fail(poisig_status s, const char* what) {
  g_error = what;
  return s;
}

// Runs f, mapping library exceptions onto status codes.
template <class F>
poisig_status guarded(F&& f) {
  g_error.clear();
  g_numeric_estimate = kNaN;
  try {
    return f();
  } catch (const poisig::ParameterError& e) {
    return fail(POISIG_ERR_PARAMETER, e.what());
  } catch (const poisig::DomainError& e) {
    return fail(POISIG_ERR_DOMAIN, e.what());
  } catch (const poisig::NumericError& e) {
    g_numeric_estimate = e.best_estimate();
    return fail(POISIG_ERR_NUMERIC, e.what());
  } catch (const poisig::CapacityError& e) {
    return fail(POISIG_ERR_CAPACITY, e.what());
  } catch (const poisig::SamplingError& e) {
    return fail(POISIG_ERR_SAMPLING, e.what());
  } catch (const poisig::IoError& e) {
    return fail(POISIG_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(POISIG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(POISIG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(POISIG_ERR_INTERNAL, "unknown error");
  }
}

#define POISIG_REQUIRE(cond)                                               \
  do {                                                                     \
    if (!(cond)) return fail(POISIG_ERR_NULL, "null argument: " #cond);    \
  } while (0)

std::vector<double> copy_array(const double* p, size_t n) {
  return n == 0 ? std::vector<double>{} : std::vector<double>(p, p + n);
}

template <class Handle, class... Args>
poisig_status make(Handle** out, Args&&... args) {
  *out = new Handle{std::forward<Args>(args)...};
  return POISIG_OK;
}

poisig_status make_spec(poisig::PatternSpec spec, poisig_pattern_spec** out) {
  poisig::validate(spec);
  return make(out, std::move(spec));
}

}  // namespace

extern "C" {

const char* poisig_last_error(void) { return g_error.c_str(); }
double poisig_last_numeric_estimate(void) { return g_numeric_estimate; }
const char* poisig_version(void) { return "0.1.0"; }

void poisig_set_threads(unsigned n) { poisig::set_thread_count(n); }

uint64_t poisig_derive_seed(uint64_t master, uint64_t index, uint64_t lane) {
  return poisig::derive_seed(master, index, lane);
}

// ---------------------------------------------------------------- patterns

poisig_status poisig_spec_poisson_disk(double density, double radius, poisig_pattern_spec** out) {
  POISIG_REQUIRE(out);
  return guarded([&] { return make_spec(poisig::PoissonDiskSpec{density, radius}, out); });
}

poisig_status poisig_spec_square_lattice(double spacing, double radius, double offset_x,
                                         double offset_y, poisig_pattern_spec** out) {
  POISIG_REQUIRE(out);
  return guarded([&] {
    return make_spec(poisig::SquareLatticeSpec{spacing, radius, {offset_x, offset_y}}, out);
  });
}

poisig_status poisig_spec_hex_lattice(double spacing, double radius, double offset_x,
                                      double offset_y, poisig_pattern_spec** out) {
  POISIG_REQUIRE(out);
  return guarded([&] {
    return make_spec(poisig::HexLatticeSpec{spacing, radius, {offset_x, offset_y}}, out);
  });
}

poisig_status poisig_spec_perturbed_lattice(double spacing, double radius, double jitter,
                                            poisig_pattern_spec** out) {
  POISIG_REQUIRE(out);
  return guarded(
      [&] { return make_spec(poisig::PerturbedLatticeSpec{spacing, radius, jitter}, out); });
}

poisig_status poisig_spec_explicit(const double* xs, const double* ys, size_t n,
                                   poisig_pattern_spec** out) {
  POISIG_REQUIRE(out);
  POISIG_REQUIRE(n == 0 || (xs && ys));
  return guarded([&] {
    poisig::ExplicitSpec spec;
    spec.points.reserve(n);
    for (size_t i = 0; i < n; ++i) spec.points.push_back({xs[i], ys[i]});
    return make_spec(std::move(spec), out);
  });
}

void poisig_spec_destroy(poisig_pattern_spec* spec) { delete spec; }

poisig_status poisig_pattern_generate(const poisig_pattern_spec* spec, uint64_t seed,
                                      poisig_pattern** out) {
  POISIG_REQUIRE(spec && out);
  return guarded([&] {
    return make(out, std::make_shared<const poisig::PointPattern>(
                         poisig::generate(spec->spec, seed)));
  });
}

poisig_status poisig_pattern_read_csv(const char* path, poisig_pattern** out) {
  POISIG_REQUIRE(path && out);
  return guarded([&] {
    return make(out, std::make_shared<const poisig::PointPattern>(
                         poisig::read_pattern_csv(std::string(path))));
  });
}

poisig_status poisig_pattern_write_csv(const poisig_pattern* pattern, const char* path) {
  POISIG_REQUIRE(pattern && path);
  return guarded([&] {
    poisig::write_pattern_csv(std::string(path), *pattern->pattern);
    return POISIG_OK;
  });
}

void poisig_pattern_destroy(poisig_pattern* pattern) { delete pattern; }

size_t poisig_pattern_size(const poisig_pattern* pattern) {
  return pattern ? pattern->pattern->size() : 0;
}

double poisig_pattern_density(const poisig_pattern* pattern) {
  return pattern ? pattern->pattern->density() : kNaN;
}

double poisig_pattern_window_radius(const poisig_pattern* pattern) {
  return pattern ? pattern->pattern->window_radius() : kNaN;
}

poisig_status poisig_pattern_points(const poisig_pattern* pattern, double* xs, double* ys,
                                    size_t capacity) {
  POISIG_REQUIRE(pattern);
  POISIG_REQUIRE(capacity == 0 || (xs && ys));
  const auto pts = pattern->pattern->points();
  const size_t n = std::min(capacity, pts.size());
  for (size_t i = 0; i < n; ++i) {
    xs[i] = pts[i].x;
    ys[i] = pts[i].y;
  }
  g_error.clear();
  return POISIG_OK;
}

poisig_status poisig_pattern_count_in_disk(const poisig_pattern* pattern, double r, size_t* out) {
  POISIG_REQUIRE(pattern && out);
  return guarded([&] {
    *out = pattern->pattern->count_in_disk(r);
    return POISIG_OK;
  });
}

poisig_status poisig_pattern_density_ratio(const poisig_pattern* pattern, double r,
                                           double* out) {
  POISIG_REQUIRE(pattern && out);
  return guarded([&] {
    *out = pattern->pattern->density_ratio(r);
    return POISIG_OK;
  });
}

// --------------------------------------------------------------- path loss

poisig_status poisig_pathloss_power_law(double beta, poisig_pathloss** out) {
  POISIG_REQUIRE(out);
  return guarded([&] { return make(out, poisig::PathLossModel::power_law(beta)); });
}

poisig_status poisig_pathloss_exponential(double beta, poisig_pathloss** out) {
  POISIG_REQUIRE(out);
  return guarded([&] { return make(out, poisig::PathLossModel::exponential(beta)); });
}

poisig_status poisig_pathloss_multi_slope(const double* breakpoints, size_t k,
                                          const double* exponents, double b1,
                                          poisig_pathloss** out) {
  POISIG_REQUIRE(out && exponents);
  POISIG_REQUIRE(k == 0 || breakpoints);
  return guarded([&] {
    return make(out, poisig::PathLossModel::multi_slope(copy_array(breakpoints, k),
                                                        copy_array(exponents, k + 1), b1));
  });
}

void poisig_pathloss_destroy(poisig_pathloss* pl) { delete pl; }

poisig_status poisig_pathloss_h(const poisig_pathloss* pl, double r, double* out) {
  POISIG_REQUIRE(pl && out);
  return guarded([&] {
    *out = pl->model.h(r);
    return POISIG_OK;
  });
}

poisig_status poisig_pathloss_h_inv(const poisig_pathloss* pl, double y, double* out) {
  POISIG_REQUIRE(pl && out);
  return guarded([&] {
    *out = pl->model.h_inv(y);
    return POISIG_OK;
  });
}

// ------------------------------------------------------------------ fading

poisig_status poisig_fading_constant(double s, poisig_fading** out) {
  POISIG_REQUIRE(out);
  return guarded([&] { return make(out, poisig::FadingModel::constant(s)); });
}

poisig_status poisig_fading_exponential(double rate, poisig_fading** out) {
  POISIG_REQUIRE(out);
  return guarded([&] { return make(out, poisig::FadingModel::exponential(rate)); });
}

poisig_status poisig_fading_lognormal(double mu, double sigma, poisig_fading** out) {
  POISIG_REQUIRE(out);
  return guarded([&] { return make(out, poisig::FadingModel::lognormal(mu, sigma)); });
}

poisig_status poisig_fading_lognormal_normalized(double v, double beta, poisig_fading** out) {
  POISIG_REQUIRE(out);
  return guarded([&] { return make(out, poisig::FadingModel::lognormal_normalized(v, beta)); });
}

poisig_status poisig_fading_tabulated(const double* values, const double* cdf, size_t n,
                                      poisig_fading** out) {
  POISIG_REQUIRE(out);
  POISIG_REQUIRE(n == 0 || (values && cdf));
  return guarded([&] {
    return make(out, poisig::FadingModel::tabulated(copy_array(values, n), copy_array(cdf, n)));
  });
}

void poisig_fading_destroy(poisig_fading* f) { delete f; }

poisig_status poisig_fading_cdf(const poisig_fading* f, double x, double* out) {
  POISIG_REQUIRE(f && out);
  return guarded([&] {
    *out = f->model.cdf(x);
    return POISIG_OK;
  });
}

poisig_status poisig_moment_frac(const poisig_fading* f, double p, double* out) {
  POISIG_REQUIRE(f && out);
  return guarded([&] {
    *out = poisig::moment_frac(f->model, p);
    return POISIG_OK;
  });
}

// ------------------------------------------------------------- propagation

poisig_status poisig_sample_signals(const poisig_pattern* pattern, const poisig_pathloss* pl,
                                    const poisig_fading* f, uint64_t seed,
                                    double* inverse_powers, size_t* transmitters,
                                    size_t capacity) {
  POISIG_REQUIRE(pattern && pl && f);
  return guarded([&] {
    const size_t n = pattern->pattern->size();
    if ((inverse_powers || transmitters) && capacity < n) {
      return fail(POISIG_ERR_BUFFER, "sample_signals: capacity below pattern size");
    }
    const auto signals = poisig::sample_signals(*pattern->pattern, pl->model, f->model, seed);
    for (size_t i = 0; i < signals.size(); ++i) {
      if (inverse_powers) inverse_powers[i] = signals[i].inverse_power;
      if (transmitters) transmitters[i] = signals[i].transmitter;
    }
    return POISIG_OK;
  });
}

poisig_status poisig_signal_cdf(const poisig_pathloss* pl, const poisig_fading* f, double r,
                                double t, double* out) {
  POISIG_REQUIRE(pl && f && out);
  return guarded([&] {
    *out = poisig::signal_cdf(pl->model, f->model, r, t);
    return POISIG_OK;
  });
}

// --------------------------------------------------------------- intensity

poisig_status poisig_intensity_power_law(double density, double beta, double moment,
                                         poisig_intensity** out) {
  POISIG_REQUIRE(out);
  return guarded([&] {
    return make(out, poisig::IntensityMeasure(poisig::PowerLawStationary{density, beta, moment}));
  });
}

poisig_status poisig_intensity_stationary(double density, const poisig_pathloss* pl,
                                          const poisig_fading* f, double window_radius,
                                          poisig_intensity** out) {
  POISIG_REQUIRE(pl && f && out);
  return guarded([&] {
    const double w = window_radius > 0.0 ? window_radius : std::numeric_limits<double>::infinity();
    return make(out, poisig::IntensityMeasure(poisig::StationaryGeneral{
                         .density = density,
                         .pathloss = pl->model,
                         .fading = f->model,
                         .window_radius = w,
                         .quadrature = {}}));
  });
}

poisig_status poisig_intensity_pattern(const poisig_pattern* pattern, const poisig_pathloss* pl,
                                       const poisig_fading* f, size_t n_mc, uint64_t seed,
                                       double observer_jitter, poisig_intensity** out) {
  POISIG_REQUIRE(pattern && pl && f && out);
  return guarded([&] {
    return make(out, poisig::IntensityMeasure(poisig::DeterministicPattern{
                         .pattern = pattern->pattern,
                         .pathloss = pl->model,
                         .fading = f->model,
                         .n_mc = n_mc,
                         .seed = seed,
                         .observer_jitter = observer_jitter}));
  });
}

poisig_status poisig_intensity_tabulated(const double* t, const double* m, size_t n,
                                         poisig_intensity** out) {
  POISIG_REQUIRE(out);
  POISIG_REQUIRE(n == 0 || (t && m));
  return guarded([&] {
    return make(out, poisig::IntensityMeasure(
                         poisig::TabulatedMeasure(copy_array(t, n), copy_array(m, n))));
  });
}

void poisig_intensity_destroy(poisig_intensity* m) { delete m; }

poisig_status poisig_intensity_eval(const poisig_intensity* m, double t, double* value,
                                    double* std_error) {
  POISIG_REQUIRE(m && value);
  return guarded([&] {
    const auto e = m->measure.eval(t);
    *value = e.value;
    if (std_error) *std_error = e.std_error;
    return POISIG_OK;
  });
}

poisig_status poisig_power_intensity(const poisig_intensity* m, double t_prime, double* value,
                                     double* std_error) {
  POISIG_REQUIRE(m && value);
  return guarded([&] {
    const auto e = poisig::power_intensity(m->measure, t_prime);
    *value = e.value;
    if (std_error) *std_error = e.std_error;
    return POISIG_OK;
  });
}

poisig_status poisig_multislope_intensity(double density, const poisig_pathloss* pl,
                                          const poisig_fading* f, double t, double* out) {
  POISIG_REQUIRE(pl && f && out);
  return guarded([&] {
    const auto* ms = std::get_if<poisig::MultiSlope>(&pl->model.variant());
    if (!ms) return fail(POISIG_ERR_PARAMETER, "multislope_intensity: path loss is not multi-slope");
    *out = poisig::multislope_intensity(density, *ms, f->model, t);
    return POISIG_OK;
  });
}

poisig_status poisig_exponential_pl_intensity(double density, double beta,
                                              const poisig_fading* f, double t, double* value,
                                              double* substituted, int* has_substituted) {
  POISIG_REQUIRE(f && value);
  return guarded([&] {
    const auto r = poisig::exponential_pl_intensity(density, beta, f->model, t);
    *value = r.value;
    if (substituted) *substituted = r.substituted.value_or(kNaN);
    if (has_substituted) *has_substituted = r.substituted.has_value() ? 1 : 0;
    return POISIG_OK;
  });
}

poisig_status poisig_sum_signal_cdf(const poisig_pattern* pattern, const poisig_pathloss* pl,
                                    const poisig_fading* f, double t, double* out) {
  POISIG_REQUIRE(pattern && pl && f && out);
  return guarded([&] {
    *out = poisig::sum_signal_cdf(*pattern->pattern, pl->model, f->model, t);
    return POISIG_OK;
  });
}

// ------------------------------------------------------------------ bounds

namespace {

poisig_tv_bounds to_c_tv(const poisig::TvBounds& b) {
  return {b.tau, b.m_tau, b.sum_p_sq, b.max_p, b.lower, b.upper, b.upper_coarse};
}

poisig_order_stat_bound to_c_order(const poisig::OrderStatBound& b) {
  return {b.tau, b.k, b.m_tau, b.sum_p_sq, b.poisson_tail, b.total};
}

}  // namespace

poisig_status poisig_theorem1_bounds(const poisig_pattern* pattern, const poisig_pathloss* pl,
                                     const poisig_fading* f, double tau, poisig_tv_bounds* out) {
  POISIG_REQUIRE(pattern && pl && f && out);
  return guarded([&] {
    *out = to_c_tv(poisig::theorem1_bounds(*pattern->pattern, pl->model, f->model, tau));
    return POISIG_OK;
  });
}

poisig_status poisig_theorem3_bound(const poisig_pattern* pattern, const poisig_pathloss* pl,
                                    const poisig_fading* f, double tau, int k,
                                    poisig_order_stat_bound* out) {
  POISIG_REQUIRE(pattern && pl && f && out);
  return guarded([&] {
    *out = to_c_order(poisig::theorem3_bound(*pattern->pattern, pl->model, f->model, tau, k));
    return POISIG_OK;
  });
}

poisig_status poisig_optimize_theorem3_tau(const poisig_pattern* pattern,
                                           const poisig_pathloss* pl, const poisig_fading* f,
                                           int k, const double* tau_grid, size_t n,
                                           poisig_order_stat_bound* out) {
  POISIG_REQUIRE(pattern && pl && f && out);
  POISIG_REQUIRE(n == 0 || tau_grid);
  return guarded([&] {
    const auto r = poisig::optimize_theorem3_tau(*pattern->pattern, pl->model, f->model, k,
                                                 std::span<const double>(tau_grid, n));
    *out = to_c_order(r.second);
    return POISIG_OK;
  });
}

poisig_status poisig_count_tv_oracle(const poisig_pattern* pattern, const poisig_pathloss* pl,
                                     const poisig_fading* f, double tau, double* out) {
  POISIG_REQUIRE(pattern && pl && f && out);
  return guarded([&] {
    *out = poisig::count_tv_oracle(*pattern->pattern, pl->model, f->model, tau);
    return POISIG_OK;
  });
}

poisig_status poisig_count_tv(const double* p, size_t n, double* out) {
  POISIG_REQUIRE(out);
  POISIG_REQUIRE(n == 0 || p);
  return guarded([&] {
    *out = poisig::count_tv(std::span<const double>(p, n));
    return POISIG_OK;
  });
}

// ---------------------------------------------------------------- empirics

poisig_status poisig_simulate_fixed(const poisig_pattern* pattern, const poisig_pathloss* pl,
                                    const poisig_fading* f, int k, size_t n,
                                    uint64_t master_seed, poisig_order_stats** out) {
  POISIG_REQUIRE(pattern && pl && f && out);
  return guarded([&] {
    return make(out, poisig::simulate_order_stats(*pattern->pattern, pl->model, f->model, k, n,
                                                  master_seed));
  });
}

poisig_status poisig_simulate_random(const poisig_pattern_spec* spec, const poisig_pathloss* pl,
                                     const poisig_fading* f, int k, size_t n,
                                     uint64_t master_seed, poisig_order_stats** out) {
  POISIG_REQUIRE(spec && pl && f && out);
  return guarded([&] {
    return make(out,
                poisig::simulate_order_stats(spec->spec, pl->model, f->model, k, n, master_seed));
  });
}

void poisig_order_stats_destroy(poisig_order_stats* m) { delete m; }

size_t poisig_order_stats_rows(const poisig_order_stats* m) { return m ? m->matrix.rows() : 0; }

int poisig_order_stats_k(const poisig_order_stats* m) { return m ? m->matrix.k() : 0; }

size_t poisig_order_stats_partial_rows(const poisig_order_stats* m) {
  return m ? m->matrix.partial_rows() : 0;
}

poisig_status poisig_order_stats_row(const poisig_order_stats* m, size_t r, double* values,
                                     int* partial) {
  POISIG_REQUIRE(m && values);
  return guarded([&] {
    if (r >= m->matrix.rows()) return fail(POISIG_ERR_DOMAIN, "order_stats_row: row out of range");
    const auto row = m->matrix.row(r);
    std::copy(row.begin(), row.end(), values);
    if (partial) *partial = m->matrix.partial(r) ? 1 : 0;
    return POISIG_OK;
  });
}

poisig_status poisig_order_stats_column(const poisig_order_stats* m, int i, double* out,
                                        size_t capacity, size_t* count) {
  POISIG_REQUIRE(m && count);
  return guarded([&] {
    const auto col = m->matrix.order_statistic(i);
    *count = col.size();
    if (capacity < col.size()) {
      return fail(POISIG_ERR_BUFFER, "order_stats_column: buffer too small");
    }
    if (!col.empty()) {
      if (!out) return fail(POISIG_ERR_NULL, "null argument: out");
      std::copy(col.begin(), col.end(), out);
    }
    return POISIG_OK;
  });
}

poisig_status poisig_order_stats_write_csv(const poisig_order_stats* m, const char* path) {
  POISIG_REQUIRE(m && path);
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) return fail(POISIG_ERR_IO, (std::string("cannot open ") + path).c_str());
    poisig::write_order_stats_csv(out, m->matrix);
    out.flush();
    if (!out) return fail(POISIG_ERR_IO, (std::string("write failed: ") + path).c_str());
    return POISIG_OK;
  });
}

poisig_status poisig_poisson_order_cdf(const poisig_intensity* m, int k, double t, double* out) {
  POISIG_REQUIRE(m && out);
  return guarded([&] {
    *out = poisig::poisson_order_cdf(m->measure, k, t);
    return POISIG_OK;
  });
}

poisig_status poisig_ks_distance(const double* sorted_samples, size_t n, poisig_cdf_fn cdf,
                                 void* user, double* out) {
  POISIG_REQUIRE(cdf && out);
  POISIG_REQUIRE(n == 0 || sorted_samples);
  return guarded([&] {
    *out = poisig::ks_distance(std::span<const double>(sorted_samples, n),
                               [&](double x) { return cdf(x, user); });
    return POISIG_OK;
  });
}

poisig_status poisig_ks_poisson_order(const double* sorted_samples, size_t n,
                                      const poisig_intensity* m, int k, double* out) {
  POISIG_REQUIRE(m && out);
  POISIG_REQUIRE(n == 0 || sorted_samples);
  return guarded([&] {
    *out = poisig::ks_distance(std::span<const double>(sorted_samples, n), [&](double x) {
      return x > 0.0 ? poisig::poisson_order_cdf(m->measure, k, x) : 0.0;
    });
    return POISIG_OK;
  });
}

poisig_status poisig_estimate_intensity(const double* min_samples, size_t n, const double* grid,
                                        size_t grid_n, double* e_hat, double* m_hat,
                                        double* censored_above) {
  POISIG_REQUIRE(m_hat);
  POISIG_REQUIRE(n == 0 || min_samples);
  POISIG_REQUIRE(grid_n == 0 || grid);
  return guarded([&] {
    const auto est = poisig::estimate_intensity(std::span<const double>(min_samples, n),
                                                std::span<const double>(grid, grid_n));
    for (size_t j = 0; j < grid_n; ++j) {
      if (e_hat) e_hat[j] = est.e_hat[j];
      m_hat[j] = est.m_hat[j].value_or(kNaN);
    }
    if (censored_above) *censored_above = est.censored_above.value_or(kNaN);
    return POISIG_OK;
  });
}

poisig_status poisig_tv_density_estimate(const double* a, size_t na, const double* b, size_t nb,
                                         int bins, double* out) {
  POISIG_REQUIRE(out);
  POISIG_REQUIRE((na == 0 || a) && (nb == 0 || b));
  return guarded([&] {
    *out = poisig::tv_density_estimate(std::span<const double>(a, na),
                                       std::span<const double>(b, nb), bins);
    return POISIG_OK;
  });
}

poisig_status poisig_convergence_sweep(const poisig_pattern_spec* spec, int regenerate_pattern,
                                       double beta, poisig_sweep_family family, const double* v,
                                       size_t v_count, int k, size_t n, uint64_t seed,
                                       poisig_sweep_row* rows, size_t capacity) {
  POISIG_REQUIRE(spec && rows);
  POISIG_REQUIRE(v_count == 0 || v);
  return guarded([&] {
    if (k < 1) return fail(POISIG_ERR_DOMAIN, "sweep: k must be >= 1");
    if (capacity < v_count * static_cast<size_t>(k)) {
      return fail(POISIG_ERR_BUFFER, "sweep: row buffer too small");
    }
    poisig::SweepConfig config;
    config.pattern = spec->spec;
    config.regenerate_pattern = regenerate_pattern != 0;
    config.beta = beta;
    config.family = family == POISIG_SWEEP_RAYLEIGH ? poisig::SweepFamily::kRayleigh
                                                    : poisig::SweepFamily::kLogNormalNormalized;
    config.v = copy_array(v, v_count);
    config.k = k;
    config.n = n;
    config.seed = seed;
    const auto result = poisig::convergence_sweep(config);
    for (size_t i = 0; i < result.size(); ++i) {
      rows[i] = {result[i].v, result[i].order_index, result[i].ks, result[i].n};
    }
    return POISIG_OK;
  });
}

}  // extern "C"
