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


// Exercises the shared library through its C interface only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "poisig/poisig.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Models {
  poisig_pathloss* pl = nullptr;
  poisig_fading* f = nullptr;
  Models(double beta, double rate) {
    REQUIRE(poisig_pathloss_power_law(beta, &pl) == POISIG_OK);
    REQUIRE(poisig_fading_exponential(rate, &f) == POISIG_OK);
  }
  ~Models() {
    poisig_pathloss_destroy(pl);
    poisig_fading_destroy(f);
  }
};

poisig_pattern* lattice(double spacing, double radius) {
  poisig_pattern_spec* spec = nullptr;
  REQUIRE(poisig_spec_square_lattice(spacing, radius, spacing / 2, spacing / 2, &spec) ==
          POISIG_OK);
  poisig_pattern* p = nullptr;
  REQUIRE(poisig_pattern_generate(spec, 0, &p) == POISIG_OK);
  poisig_spec_destroy(spec);
  return p;
}

double expo_cdf(double x, void* user) { return -std::expm1(-x * *static_cast<double*>(user)); }

}  // namespace

TEST_CASE("version and seeds") {
  CHECK(std::string(poisig_version()) == "0.1.0");
  CHECK(poisig_derive_seed(1, 2, 3) == poisig_derive_seed(1, 2, 3));
  CHECK(poisig_derive_seed(1, 2, 3) != poisig_derive_seed(1, 2, 4));
  CHECK(poisig_derive_seed(1, 2, 3) != poisig_derive_seed(1, 3, 3));
}

TEST_CASE("error reporting") {
  poisig_pathloss* pl = nullptr;
  CHECK(poisig_pathloss_power_law(1.5, &pl) == POISIG_ERR_PARAMETER);
  CHECK(pl == nullptr);
  CHECK(std::strlen(poisig_last_error()) > 0);
  CHECK(poisig_pathloss_power_law(4.0, nullptr) == POISIG_ERR_NULL);
  REQUIRE(poisig_pathloss_power_law(4.0, &pl) == POISIG_OK);
  CHECK(std::string(poisig_last_error()).empty());

  poisig_intensity* m = nullptr;
  REQUIRE(poisig_intensity_power_law(1.0 / kPi, 4.0, 1.0, &m) == POISIG_OK);
  double value = -1.0;
  CHECK(poisig_intensity_eval(m, 0.0, &value, nullptr) == POISIG_ERR_DOMAIN);
  CHECK(value == -1.0);
  CHECK(poisig_intensity_eval(nullptr, 1.0, &value, nullptr) == POISIG_ERR_NULL);

  poisig_pathloss_destroy(pl);
  poisig_intensity_destroy(m);
  poisig_pathloss_destroy(nullptr);
  poisig_fading_destroy(nullptr);
  poisig_pattern_destroy(nullptr);
  poisig_spec_destroy(nullptr);
  poisig_intensity_destroy(nullptr);
  poisig_order_stats_destroy(nullptr);
}

TEST_CASE("patterns") {
  poisig_pattern* p = lattice(1.0, 1.5);
  CHECK(poisig_pattern_size(p) == 4);
  CHECK(poisig_pattern_density(p) == 1.0);
  CHECK(poisig_pattern_window_radius(p) == 1.5);
  std::vector<double> xs(4);
  std::vector<double> ys(4);
  REQUIRE(poisig_pattern_points(p, xs.data(), ys.data(), 4) == POISIG_OK);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::hypot(xs[i], ys[i]) == doctest::Approx(std::sqrt(0.5)));
  size_t count = 0;
  REQUIRE(poisig_pattern_count_in_disk(p, 1.0, &count) == POISIG_OK);
  CHECK(count == 4);
  double ratio = 0.0;
  CHECK(poisig_pattern_density_ratio(p, 2.0, &ratio) == POISIG_ERR_DOMAIN);

  const auto path = (std::filesystem::temp_directory_path() / "poisig_capi_pattern.csv").string();
  REQUIRE(poisig_pattern_write_csv(p, path.c_str()) == POISIG_OK);
  poisig_pattern* q = nullptr;
  REQUIRE(poisig_pattern_read_csv(path.c_str(), &q) == POISIG_OK);
  CHECK(poisig_pattern_size(q) == 4);
  CHECK(poisig_pattern_density(q) == 0.0);
  CHECK(std::isinf(poisig_pattern_window_radius(q)));
  std::filesystem::remove(path);
  CHECK(poisig_pattern_read_csv(path.c_str(), &q) == POISIG_ERR_IO);

  const double ex[] = {0.0};
  const double ey[] = {0.0};
  poisig_pattern_spec* bad = nullptr;
  CHECK(poisig_spec_explicit(ex, ey, 1, &bad) == POISIG_ERR_PARAMETER);
  poisig_pattern_destroy(p);
  poisig_pattern_destroy(q);
}

TEST_CASE("propagation models") {
  poisig_pathloss* pl = nullptr;
  REQUIRE(poisig_pathloss_exponential(1.0, &pl) == POISIG_OK);
  double y = 0.0;
  REQUIRE(poisig_pathloss_h_inv(pl, 0.5, &y) == POISIG_OK);
  CHECK(y == 0.0);
  REQUIRE(poisig_pathloss_h_inv(pl, std::exp(2.0), &y) == POISIG_OK);
  CHECK(y == doctest::Approx(2.0));
  poisig_pathloss_destroy(pl);

  const double breaks[] = {1.0};
  const double exps[] = {2.0, 4.0};
  REQUIRE(poisig_pathloss_multi_slope(breaks, 1, exps, 1.0, &pl) == POISIG_OK);
  REQUIRE(poisig_pathloss_h(pl, 2.0, &y) == POISIG_OK);
  CHECK(y == doctest::Approx(16.0));
  poisig_pathloss_destroy(pl);

  Models mo(4.0, 1.0);
  double c = 0.0;
  REQUIRE(poisig_fading_cdf(mo.f, 1.0, &c) == POISIG_OK);
  CHECK(c == doctest::Approx(1.0 - std::exp(-1.0)));
  REQUIRE(poisig_moment_frac(mo.f, 0.5, &c) == POISIG_OK);
  CHECK(c == doctest::Approx(std::tgamma(1.5)).epsilon(1e-12));
  REQUIRE(poisig_signal_cdf(mo.pl, mo.f, 1.0, 1.0, &c) == POISIG_OK);
  CHECK(c == doctest::Approx(std::exp(-1.0)));

  poisig_pattern* p = lattice(1.0, 3.0);
  const size_t n = poisig_pattern_size(p);
  std::vector<double> v(n);
  std::vector<size_t> idx(n);
  REQUIRE(poisig_sample_signals(p, mo.pl, mo.f, 5, v.data(), idx.data(), n) == POISIG_OK);
  for (size_t i = 1; i < n; ++i) CHECK(v[i - 1] <= v[i]);
  CHECK(poisig_sample_signals(p, mo.pl, mo.f, 5, v.data(), nullptr, n - 1) == POISIG_ERR_BUFFER);
  poisig_pattern_destroy(p);
}

TEST_CASE("intensity backends") {
  Models mo(4.0, 1.0);
  poisig_intensity* exact = nullptr;
  poisig_intensity* quad = nullptr;
  REQUIRE(poisig_intensity_power_law(1.0 / kPi, 4.0, std::tgamma(1.5), &exact) == POISIG_OK);
  REQUIRE(poisig_intensity_stationary(1.0 / kPi, mo.pl, mo.f, 0.0, &quad) == POISIG_OK);
  double a = 0.0;
  double b = 0.0;
  double se = -1.0;
  REQUIRE(poisig_intensity_eval(exact, 4.0, &a, &se) == POISIG_OK);
  CHECK(se == 0.0);
  REQUIRE(poisig_intensity_eval(quad, 4.0, &b, nullptr) == POISIG_OK);
  CHECK(a == doctest::Approx(2.0 * std::tgamma(1.5)).epsilon(1e-14));
  CHECK(b == doctest::Approx(a).epsilon(1e-6));
  REQUIRE(poisig_power_intensity(exact, 0.25, &b, nullptr) == POISIG_OK);
  CHECK(b == doctest::Approx(a));

  // Two equal slopes reduce to the power law.
  const double breaks[] = {2.0};
  const double exps[] = {4.0, 4.0};
  poisig_pathloss* flat = nullptr;
  REQUIRE(poisig_pathloss_multi_slope(breaks, 1, exps, 1.0, &flat) == POISIG_OK);
  double ms = 0.0;
  REQUIRE(poisig_multislope_intensity(1.0 / kPi, flat, mo.f, 4.0, &ms) == POISIG_OK);
  CHECK(ms == doctest::Approx(a).epsilon(1e-10));
  CHECK(poisig_multislope_intensity(1.0 / kPi, mo.pl, mo.f, 4.0, &ms) == POISIG_ERR_PARAMETER);
  poisig_pathloss_destroy(flat);

  poisig_pattern* p = lattice(1.0, 20.0);
  poisig_intensity* mc = nullptr;
  CHECK(poisig_intensity_pattern(p, mo.pl, mo.f, 1, 3, 0.0, &mc) == POISIG_ERR_PARAMETER);
  REQUIRE(poisig_intensity_pattern(p, mo.pl, mo.f, 20000, 3, 0.5, &mc) == POISIG_OK);
  REQUIRE(poisig_intensity_eval(mc, 1.0, &b, &se) == POISIG_OK);
  CHECK(se > 0.0);
  CHECK(std::abs(b - kPi * std::tgamma(1.5)) < 4.0 * se + 1e-3);

  const double ts[] = {1.0, 2.0};
  const double ms_tab[] = {0.5, 1.0};
  poisig_intensity* tab = nullptr;
  REQUIRE(poisig_intensity_tabulated(ts, ms_tab, 2, &tab) == POISIG_OK);
  REQUIRE(poisig_intensity_eval(tab, 1.5, &b, nullptr) == POISIG_OK);
  CHECK(b == doctest::Approx(0.75));
  CHECK(poisig_intensity_eval(tab, 3.0, &b, nullptr) == POISIG_ERR_DOMAIN);

  double value = 0.0;
  double sub = 0.0;
  int has = -1;
  REQUIRE(poisig_exponential_pl_intensity(1.0 / kPi, 1.0, mo.f, 2.0, &value, &sub, &has) ==
          POISIG_OK);
  CHECK(has == 1);
  CHECK(sub == doctest::Approx(value).epsilon(1e-6));

  REQUIRE(poisig_sum_signal_cdf(p, mo.pl, mo.f, 0.01, &value) == POISIG_OK);
  CHECK(value > 0.0);

  poisig_intensity_destroy(exact);
  poisig_intensity_destroy(quad);
  poisig_intensity_destroy(mc);
  poisig_intensity_destroy(tab);
  poisig_pattern_destroy(p);
}

TEST_CASE("bounds") {
  Models mo(4.0, 1.0);
  poisig_pattern* p = lattice(1.0, 8.0);
  poisig_tv_bounds tv{};
  REQUIRE(poisig_theorem1_bounds(p, mo.pl, mo.f, 1.0, &tv) == POISIG_OK);
  CHECK(tv.tau == 1.0);
  CHECK(tv.lower <= tv.upper);
  CHECK(tv.upper <= tv.upper_coarse);
  CHECK(tv.sum_p_sq <= tv.max_p * tv.m_tau + 1e-15);

  double count_tv = 0.0;
  REQUIRE(poisig_count_tv_oracle(p, mo.pl, mo.f, 1.0, &count_tv) == POISIG_OK);
  CHECK(count_tv <= tv.sum_p_sq);

  poisig_order_stat_bound ob{};
  REQUIRE(poisig_theorem3_bound(p, mo.pl, mo.f, 1.0, 1, &ob) == POISIG_OK);
  CHECK(ob.total == doctest::Approx(ob.sum_p_sq + ob.poisson_tail));
  const double grid[] = {0.5, 1.0, 2.0, 4.0};
  REQUIRE(poisig_optimize_theorem3_tau(p, mo.pl, mo.f, 1, grid, 4, &ob) == POISIG_OK);
  for (double tau : grid) {
    poisig_order_stat_bound other{};
    REQUIRE(poisig_theorem3_bound(p, mo.pl, mo.f, tau, 1, &other) == POISIG_OK);
    CHECK(ob.total <= other.total);
  }
  CHECK(poisig_optimize_theorem3_tau(p, mo.pl, mo.f, 1, grid, 0, &ob) == POISIG_ERR_DOMAIN);

  const double probs[] = {0.5, 0.5};
  REQUIRE(poisig_count_tv(probs, 2, &count_tv) == POISIG_OK);
  // Binomial(2, 1/2) against Poisson(1).
  const double e1 = std::exp(-1.0);
  const double expected =
      0.5 * (std::abs(0.25 - e1) + std::abs(0.5 - e1) + std::abs(0.25 - e1 / 2) + (1 - 2.5 * e1));
  CHECK(count_tv == doctest::Approx(expected).epsilon(1e-12));
  poisig_pattern_destroy(p);
}

TEST_CASE("simulation and empirics") {
  Models mo(4.0, 1.0);
  const double xs[] = {1.0};
  const double ys[] = {0.0};
  poisig_pattern_spec* spec = nullptr;
  REQUIRE(poisig_spec_explicit(xs, ys, 1, &spec) == POISIG_OK);
  poisig_pattern* p = nullptr;
  REQUIRE(poisig_pattern_generate(spec, 0, &p) == POISIG_OK);

  poisig_order_stats* m = nullptr;
  REQUIRE(poisig_simulate_fixed(p, mo.pl, mo.f, 2, 5000, 11, &m) == POISIG_OK);
  CHECK(poisig_order_stats_rows(m) == 5000);
  CHECK(poisig_order_stats_k(m) == 2);
  CHECK(poisig_order_stats_partial_rows(m) == 5000);
  double row[2];
  int partial = 0;
  REQUIRE(poisig_order_stats_row(m, 0, row, &partial) == POISIG_OK);
  CHECK(partial == 1);
  CHECK(std::isnan(row[1]));
  CHECK(poisig_order_stats_row(m, 5000, row, &partial) == POISIG_ERR_DOMAIN);

  size_t count = 0;
  std::vector<double> col(10);
  CHECK(poisig_order_stats_column(m, 1, col.data(), col.size(), &count) == POISIG_ERR_BUFFER);
  CHECK(count == 5000);
  col.resize(count);
  REQUIRE(poisig_order_stats_column(m, 1, col.data(), col.size(), &count) == POISIG_OK);
  double rate = 1.0;
  double ks = 0.0;
  // V = 1/S, so P(V <= t) = exp(-1/t): compare 1/V against Exp(1) via its own law.
  std::vector<double> s(col.rbegin(), col.rend());
  for (double& x : s) x = 1.0 / x;
  REQUIRE(poisig_ks_distance(s.data(), s.size(), expo_cdf, &rate, &ks) == POISIG_OK);
  CHECK(ks < 4.0 / std::sqrt(5000.0));
  CHECK(poisig_ks_distance(col.data(), 0, expo_cdf, &rate, &ks) == POISIG_ERR_DOMAIN);

  const auto path = (std::filesystem::temp_directory_path() / "poisig_capi_os.csv").string();
  REQUIRE(poisig_order_stats_write_csv(m, path.c_str()) == POISIG_OK);
  CHECK(std::filesystem::file_size(path) > 0);
  std::filesystem::remove(path);
  poisig_order_stats_destroy(m);

  poisig_pattern_spec* disk = nullptr;
  REQUIRE(poisig_spec_poisson_disk(1.0 / kPi, 20.0, &disk) == POISIG_OK);
  REQUIRE(poisig_simulate_random(disk, mo.pl, mo.f, 1, 4000, 12, &m) == POISIG_OK);
  col.resize(4000);
  REQUIRE(poisig_order_stats_column(m, 1, col.data(), col.size(), &count) == POISIG_OK);
  poisig_intensity* ref = nullptr;
  REQUIRE(poisig_intensity_power_law(1.0 / kPi, 4.0, std::tgamma(1.5), &ref) == POISIG_OK);
  REQUIRE(poisig_ks_poisson_order(col.data(), count, ref, 1, &ks) == POISIG_OK);
  CHECK(ks < 4.0 / std::sqrt(4000.0));
  double c = 0.0;
  REQUIRE(poisig_poisson_order_cdf(ref, 1, 1.0, &c) == POISIG_OK);
  CHECK(c == doctest::Approx(-std::expm1(-std::tgamma(1.5))));

  const double mins[] = {0.5, 3.0, 1.5, 4.0};
  const double grid[] = {1.0, 2.0, 4.0};
  double e_hat[3];
  double m_hat[3];
  double censored = 0.0;
  REQUIRE(poisig_estimate_intensity(mins, 4, grid, 3, e_hat, m_hat, &censored) == POISIG_OK);
  CHECK(e_hat[0] == 0.25);
  CHECK(m_hat[1] == doctest::Approx(std::log(2.0)));
  CHECK(std::isnan(m_hat[2]));
  CHECK(censored == 2.0);

  double tv = -1.0;
  REQUIRE(poisig_tv_density_estimate(mins, 2, mins + 2, 2, 4, &tv) == POISIG_OK);
  CHECK(tv >= 0.0);
  CHECK(tv <= 1.0);

  poisig_pattern_spec* lat = nullptr;
  REQUIRE(poisig_spec_square_lattice(1.0, 10.0, 0.5, 0.5, &lat) == POISIG_OK);
  const double vs[] = {1.0, 2.0};
  poisig_sweep_row rows[4];
  CHECK(poisig_convergence_sweep(lat, 0, 4.0, POISIG_SWEEP_LOGNORMAL, vs, 2, 2, 300, 1, rows, 3) ==
        POISIG_ERR_BUFFER);
  REQUIRE(poisig_convergence_sweep(lat, 0, 4.0, POISIG_SWEEP_LOGNORMAL, vs, 2, 2, 300, 1, rows,
                                   4) == POISIG_OK);
  CHECK(rows[0].v == 1.0);
  CHECK(rows[0].order_index == 1);
  CHECK(rows[3].v == 2.0);
  CHECK(rows[3].order_index == 2);

  poisig_order_stats_destroy(m);
  poisig_intensity_destroy(ref);
  poisig_spec_destroy(spec);
  poisig_spec_destroy(disk);
  poisig_spec_destroy(lat);
  poisig_pattern_destroy(p);
}
