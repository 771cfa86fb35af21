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


#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "poisig/empirics.hpp"
#include "poisig/errors.hpp"
#include "poisig/parallel.hpp"

using namespace poisig;

namespace {

constexpr double kPi = std::numbers::pi;

PointPattern single_at_unit_radius() {
  return generate(ExplicitSpec{{{1.0, 0.0}}}, 0);
}

}  // namespace

TEST_SUITE("empirics") {

TEST_CASE("first order statistic of one transmitter is 1/S") {
  const auto stats = simulate_order_stats(single_at_unit_radius(), PathLossModel::power_law(4.0),
                                          FadingModel::exponential(1.0), 1, 100000, 2024);
  CHECK(stats.rows() == 100000);
  CHECK(stats.partial_rows() == 0);
  const auto v1 = stats.order_statistic(1);
  CHECK(v1.size() == 100000);
  const double d = oracle::ks(v1, [](double t) { return std::exp(-1.0 / t); });
  CHECK(d < 0.01);
}

TEST_CASE("k beyond pattern size gives partial rows") {
  const PointPattern p = generate(SquareLatticeSpec{1.0, 1.5, {0.5, 0.5}}, 0);
  REQUIRE(p.size() == 4);
  const auto stats = simulate_order_stats(p, PathLossModel::power_law(4.0),
                                          FadingModel::constant(1.0), 6, 50, 1);
  CHECK(stats.partial_rows() == 50);
  for (std::size_t r = 0; r < stats.rows(); ++r) {
    CHECK(stats.count(r) == 4);
    CHECK(stats.partial(r));
    const auto row = stats.row(r);
    for (int j = 0; j < 4; ++j) CHECK(row[static_cast<std::size_t>(j)] == doctest::Approx(0.25));
    CHECK(std::isnan(row[4]));
    CHECK(std::isnan(row[5]));
  }
  CHECK(stats.order_statistic(4).size() == 50);
  CHECK(stats.order_statistic(5).empty());
  CHECK_THROWS_AS(stats.order_statistic(7), DomainError);
  CHECK_THROWS_AS(stats.order_statistic(0), DomainError);
}

TEST_CASE("fixed pattern is held across rows, spec is regenerated") {
  const PoissonDiskSpec spec{1.0 / kPi, 5.0};
  const auto pl = PathLossModel::power_law(4.0);
  const auto f = FadingModel::constant(1.0);
  const PointPattern fixed = generate(spec, 77);

  const auto held = simulate_order_stats(fixed, pl, f, 3, 40, 77);
  for (std::size_t r = 1; r < held.rows(); ++r) {
    for (int j = 0; j < held.count(0); ++j) {
      CHECK(held.row(r)[static_cast<std::size_t>(j)] == held.row(0)[static_cast<std::size_t>(j)]);
    }
  }

  const auto fresh = simulate_order_stats(PatternSpec{spec}, pl, f, 3, 40, 77);
  int differing = 0;
  for (std::size_t r = 1; r < fresh.rows(); ++r) {
    if (fresh.row(r)[0] != fresh.row(0)[0]) ++differing;
  }
  CHECK(differing == 39);
}

TEST_CASE("rows are ascending and flags match signal counts") {
  const PoissonDiskSpec spec{0.05, 6.0};  // mean 5.65 points, some replicates short of k
  const auto stats = simulate_order_stats(PatternSpec{spec}, PathLossModel::power_law(3.0),
                                          FadingModel::exponential(1.0), 8, 2000, 5);
  std::size_t partial = 0;
  for (std::size_t r = 0; r < stats.rows(); ++r) {
    const PointPattern p = generate(spec, derive_seed(5, r, 1));
    const int expected = static_cast<int>(std::min<std::size_t>(p.size(), 8));
    CHECK(stats.count(r) == expected);
    CHECK(stats.partial(r) == (p.size() < 8));
    if (stats.partial(r)) ++partial;
    const auto row = stats.row(r);
    for (int j = 0; j < stats.count(r); ++j) {
      CHECK(row[static_cast<std::size_t>(j)] > 0.0);
      if (j > 0) CHECK(row[static_cast<std::size_t>(j - 1)] <= row[static_cast<std::size_t>(j)]);
    }
  }
  CHECK(partial == stats.partial_rows());
  CHECK(partial > 0);
  CHECK(partial < stats.rows());
}

TEST_CASE("simulation is independent of thread count") {
  const PoissonDiskSpec spec{1.0 / kPi, 10.0};
  const auto pl = PathLossModel::power_law(4.0);
  const auto f = FadingModel::lognormal(0.0, 1.0);
  set_thread_count(1);
  const auto one = simulate_order_stats(PatternSpec{spec}, pl, f, 3, 3000, 9);
  set_thread_count(4);
  const auto four = simulate_order_stats(PatternSpec{spec}, pl, f, 3, 3000, 9);
  set_thread_count(0);
  for (std::size_t r = 0; r < one.rows(); ++r) {
    REQUIRE(one.count(r) == four.count(r));
    for (int j = 0; j < one.count(r); ++j) {
      CHECK(one.row(r)[static_cast<std::size_t>(j)] == four.row(r)[static_cast<std::size_t>(j)]);
    }
  }
}

TEST_CASE("simulation argument validation") {
  const auto pl = PathLossModel::power_law(4.0);
  const auto f = FadingModel::constant(1.0);
  CHECK_THROWS_AS(simulate_order_stats(single_at_unit_radius(), pl, f, 0, 10, 1), ParameterError);
  CHECK_THROWS_AS(simulate_order_stats(single_at_unit_radius(), pl, f, 1, 0, 1), ParameterError);
  CHECK_THROWS_AS(simulate_order_stats(PatternSpec{PoissonDiskSpec{-1.0, 2.0}}, pl, f, 1, 10, 1),
                  ParameterError);
}

TEST_CASE("Poisson pattern gives exact Poisson law for the strongest signal") {
  // lambda pi R^2 = 400; M(t) = Gamma(1.5) t^{1/2} for Exponential(1) fading.
  const std::size_t n = 20000;
  const PoissonDiskSpec spec{1.0 / kPi, 20.0};
  const auto stats = simulate_order_stats(PatternSpec{spec}, PathLossModel::power_law(4.0),
                                          FadingModel::exponential(1.0), 2, n, 31);
  const double g = std::tgamma(1.5);
  const double d1 = oracle::ks(stats.order_statistic(1),
                               [&](double t) { return -std::expm1(-g * std::sqrt(t)); });
  CHECK(d1 < 4.0 / std::sqrt(static_cast<double>(n)));
  const double d2 = oracle::ks(stats.order_statistic(2), [&](double t) {
    return oracle::poisson_at_least(g * std::sqrt(t), 2);
  });
  CHECK(d2 < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("order statistics CSV") {
  OrderStatMatrix m(2, 2);
  m.row(0)[0] = 0.5;
  m.row(0)[1] = 1.25;
  m.set_count(0, 2);
  m.row(1)[0] = 0.1;
  m.set_count(1, 1);
  std::ostringstream out;
  write_order_stats_csv(out, m);
  CHECK(out.str() ==
        "replicate,order_index,value,partial\n"
        "0,1,0.5,0\n"
        "0,2,1.25,0\n"
        "1,1,0.10000000000000001,1\n"
        "1,2,,1\n");
  CHECK_THROWS_AS(OrderStatMatrix(0, 3), ParameterError);
}

TEST_CASE("Poisson order CDF") {
  CHECK(poisson_order_cdf(std::log(2.0), 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(poisson_order_cdf(1.0, 2) == doctest::Approx(1.0 - 2.0 / std::exp(1.0)).epsilon(1e-14));
  CHECK(poisson_order_cdf(1.0, 2) == doctest::Approx(0.26424).epsilon(1e-5));
  CHECK(poisson_order_cdf(0.0, 3) == 0.0);
  CHECK(poisson_order_cdf(std::numeric_limits<double>::infinity(), 3) == 1.0);
  CHECK_THROWS_AS(poisson_order_cdf(1.0, 0), DomainError);
  CHECK_THROWS_AS(poisson_order_cdf(-1.0, 1), DomainError);

  for (double m : {1e-12, 1e-6, 0.01, 0.3, 1.0, 7.5, 40.0}) {
    CHECK(poisson_order_cdf(m, 1) == -std::expm1(-m));
    for (int k = 1; k <= 6; ++k) {
      CHECK(poisson_order_cdf(m, k) ==
            doctest::Approx(oracle::poisson_at_least(m, k)).epsilon(1e-10).scale(1e-300));
      CHECK(poisson_order_cdf(m, k + 1) <= poisson_order_cdf(m, k));
    }
  }

  const IntensityMeasure measure(PowerLawStationary{1.0 / kPi, 4.0, 1.0});
  double prev = 0.0;
  for (double t = 1e-8; t < 100.0; t *= 1.7) {
    const double c = poisson_order_cdf(measure, 3, t);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK(poisson_order_cdf(measure, 1, 1e-12) < 1e-5);
  CHECK_THROWS_AS(poisson_order_cdf(measure, 1, 0.0), DomainError);
}

TEST_CASE("KS distance") {
  const std::vector<double> one{3.0};
  CHECK(ks_distance(one, [](double) { return 0.5; }) == 0.5);
  const std::vector<double> many{1.0, 2.0, 3.0};
  CHECK(ks_distance(many, [](double) { return 1.0; }) == 1.0);
  CHECK(ks_distance(many, [](double) { return 0.0; }) == 1.0);

  std::mt19937_64 gen(17);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> xs(100000);
  for (auto& x : xs) x = expo(gen);
  std::sort(xs.begin(), xs.end());
  auto cdf = [](double x) { return -std::expm1(-x); };
  const double d = ks_distance(xs, cdf);
  CHECK(d < 0.01);
  CHECK(d == doctest::Approx(oracle::ks(xs, cdf)).epsilon(1e-15));

  CHECK_THROWS_AS(ks_distance(std::vector<double>{}, cdf), DomainError);
  CHECK_THROWS_AS(ks_distance(std::vector<double>{2.0, 1.0}, cdf), DomainError);
}

TEST_CASE("intensity estimator inverts the Poisson CDF exactly") {
  CHECK(intensity_from_ecdf(-std::expm1(-2.0)) == doctest::Approx(2.0).epsilon(1e-12));
  // Up to M = 5 the rounding of E-hat to a double costs less than 1e-12.
  for (double m : {1e-9, 0.01, 0.2, 1.0, 2.0, 5.0}) {
    const double e = -std::expm1(-m);
    CHECK(std::abs(intensity_from_ecdf(e) - m) <= 1e-12 * m);
  }
  // Through the estimator: E-hat = j / n exactly.
  std::vector<double> samples(1000);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = static_cast<double>(i + 1);
  const std::vector<double> grid{1.0, 10.0, 250.0, 500.0, 999.0};
  const auto est = estimate_intensity(samples, grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double expected = std::log(1000.0 / (1000.0 - grid[j]));
    CHECK(std::abs(*est.m_hat[j] - expected) <= 1e-12 * expected);
  }
  CHECK(intensity_from_ecdf(0.0) == 0.0);
  CHECK(std::isinf(intensity_from_ecdf(1.0)));
  CHECK_THROWS_AS(intensity_from_ecdf(1.5), DomainError);
}

TEST_CASE("intensity estimator on fixed samples") {
  const std::vector<double> grid{1.0, 2.0, 3.0, 4.0};

  const std::vector<double> high{5.0, 6.0, 7.0};
  const auto none = estimate_intensity(high, grid);
  for (const auto& m : none.m_hat) {
    REQUIRE(m.has_value());
    CHECK(*m == 0.0);
  }
  CHECK(none.censored_above == 4.0);
  CHECK(none.n_samples == 3);

  // Four samples: E-hat = 1/4, 2/4, 3/4, 1 at t = 1, 2, 3, 4.
  const std::vector<double> mins{3.0, 0.5, 4.0, 1.5};
  const auto est = estimate_intensity(mins, grid);
  CHECK(est.e_hat == std::vector<double>{0.25, 0.5, 0.75, 1.0});
  CHECK(*est.m_hat[0] == doctest::Approx(std::log(4.0 / 3.0)));
  CHECK(*est.m_hat[1] == doctest::Approx(std::log(2.0)));
  CHECK(*est.m_hat[2] == doctest::Approx(std::log(4.0)));
  CHECK_FALSE(est.m_hat[3].has_value());
  CHECK(est.censored_above == 3.0);

  const std::vector<double> low{0.1, 0.2};
  const auto all = estimate_intensity(low, grid);
  CHECK_FALSE(all.censored_above.has_value());
  for (const auto& m : all.m_hat) CHECK_FALSE(m.has_value());

  const std::vector<double> inf_mins{0.5, std::numeric_limits<double>::infinity()};
  const auto with_inf = estimate_intensity(inf_mins, grid);
  CHECK(*with_inf.m_hat[3] == doctest::Approx(std::log(2.0)));

  CHECK_THROWS_AS(estimate_intensity(std::vector<double>{}, grid), DomainError);
  CHECK_THROWS_AS(estimate_intensity(mins, std::vector<double>{2.0, 1.0}), DomainError);
}

TEST_CASE("intensity estimator recovers a Poisson network") {
  // lambda pi = 1, beta = 4, no fading: M(t) = t^{1/2} inside the window.
  const std::size_t n = 100000;
  const auto stats = simulate_order_stats(PatternSpec{PoissonDiskSpec{1.0 / kPi, 10.0}},
                                          PathLossModel::power_law(4.0),
                                          FadingModel::constant(1.0), 1, n, 4242);
  std::vector<double> mins(n, std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < n; ++r) {
    if (stats.count(r) > 0) mins[r] = stats.row(r)[0];
  }
  std::vector<double> grid;
  for (double m = 0.2; m <= 2.0 + 1e-12; m += 0.1) grid.push_back(m * m);
  const auto est = estimate_intensity(mins, grid);
  double prev = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    REQUIRE(est.m_hat[j].has_value());
    const double m = *est.m_hat[j];
    CHECK(m >= prev);
    prev = m;
    CHECK(std::abs(m - std::sqrt(grid[j])) < 0.05 * std::sqrt(grid[j]));
  }
}

TEST_CASE("histogram TV estimate") {
  const std::vector<double> a{0.1, 0.5, 0.7, 2.0};
  CHECK(tv_density_estimate(a, a, 10) == 0.0);
  const std::vector<double> lo{0.0, 0.1, 0.2};
  const std::vector<double> hi{5.0, 5.5, 6.0};
  CHECK(tv_density_estimate(lo, hi, 2) == doctest::Approx(1.0));
  const std::vector<double> same{1.0, 1.0};
  CHECK(tv_density_estimate(same, same, 4) == 0.0);

  std::mt19937_64 gen(99);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> x(100000);
  std::vector<double> y(100000);
  for (auto& v : x) v = expo(gen);
  for (auto& v : y) v = expo(gen);
  const double tv = tv_density_estimate(x, y, 50);
  CHECK(tv >= 0.0);
  CHECK(tv < 0.02);

  CHECK_THROWS_AS(tv_density_estimate(std::vector<double>{}, a, 10), DomainError);
  CHECK_THROWS_AS(tv_density_estimate(a, a, 1), DomainError);
}

TEST_CASE("sweep with one v gives one group") {
  SweepConfig c;
  c.pattern = SquareLatticeSpec{1.0, 10.0, {0.5, 0.5}};
  c.v = {2.0};
  c.k = 3;
  c.n = 500;
  c.seed = 8;
  const auto rows = convergence_sweep(c);
  REQUIRE(rows.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(rows[static_cast<std::size_t>(i)].v == 2.0);
    CHECK(rows[static_cast<std::size_t>(i)].order_index == i + 1);
    CHECK(rows[static_cast<std::size_t>(i)].n == 500);
    CHECK(rows[static_cast<std::size_t>(i)].ks >= 0.0);
    CHECK(rows[static_cast<std::size_t>(i)].ks <= 1.0);
  }
  c.k = 1;
  CHECK(convergence_sweep(c).size() == 1);
}

TEST_CASE("log-normal sweep follows the exact lattice law") {
  SweepConfig c;
  c.pattern = SquareLatticeSpec{1.0, 30.0, {0.5, 0.5}};
  c.beta = 4.0;
  c.v = {1.0, 2.0, 4.0};
  c.n = 20000;
  c.seed = 123;
  const auto rows = convergence_sweep(c);
  REQUIRE(rows.size() == 3);
  const double noise = 2.0 / std::sqrt(static_cast<double>(c.n));
  CHECK(rows[1].ks <= rows[0].ks + noise);
  CHECK(rows[2].ks <= rows[1].ks + noise);

  // For a fixed lattice P(V_(1) > t) = prod_i Phi((ln(r_i^4 / t) + v^2 / 4) / v).
  const PointPattern lattice = generate(c.pattern, derive_seed(123, 0, 3));
  for (std::size_t vi = 0; vi < c.v.size(); ++vi) {
    const double v = c.v[vi];
    auto exact = [&](double t) {
      double log_sf = 0.0;
      for (double r : lattice.radii()) {
        log_sf += std::log(oracle::normal_cdf((4.0 * std::log(r) - std::log(t) + v * v / 4.0) / v));
      }
      return -std::expm1(log_sf);
    };
    const auto stats = simulate_order_stats(lattice, PathLossModel::power_law(4.0),
                                            FadingModel::lognormal_normalized(v, 4.0), 1, c.n,
                                            derive_seed(123, vi, 4));
    const auto v1 = stats.order_statistic(1);
    CHECK(oracle::ks(v1, exact) < 4.0 / std::sqrt(static_cast<double>(c.n)));
    const double limit_ks =
        oracle::ks(v1, [](double t) { return -std::expm1(-kPi * std::sqrt(t)); });
    CHECK(limit_ks == doctest::Approx(rows[vi].ks).epsilon(1e-12));
  }
}

TEST_CASE("Rayleigh sweep matches its Poisson reference") {
  SweepConfig c;
  c.pattern = PoissonDiskSpec{1.0, 12.0};  // about 450 points per replicate
  c.regenerate_pattern = true;
  c.family = SweepFamily::kRayleigh;
  c.v = {0.5, 1.0, 4.0};
  c.k = 2;
  c.n = 10000;
  c.seed = 55;
  const auto rows = convergence_sweep(c);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.n == c.n);
    CHECK(r.ks < 0.02);
  }
}

TEST_CASE("sweep validation and CSV") {
  SweepConfig c;
  c.pattern = SquareLatticeSpec{1.0, 5.0, {0.5, 0.5}};
  c.v = {};
  CHECK_THROWS_AS(convergence_sweep(c), ParameterError);
  c.v = {2.0, 1.0};
  CHECK_THROWS_AS(convergence_sweep(c), ParameterError);
  c.v = {0.0};
  CHECK_THROWS_AS(convergence_sweep(c), ParameterError);
  c.v = {1.0};
  c.k = 0;
  CHECK_THROWS_AS(convergence_sweep(c), ParameterError);
  c.k = 1;
  c.pattern = ExplicitSpec{{{1.0, 1.0}}};
  CHECK_THROWS_AS(convergence_sweep(c), ParameterError);

  const std::vector<SweepRow> rows{{1.0, 1, 0.125, 10},
                                   {1.0, 2, std::numeric_limits<double>::quiet_NaN(), 0}};
  std::ostringstream out;
  write_sweep_csv(out, rows);
  CHECK(out.str() == "v,order_index,ks,n\n1,1,0.125,10\n1,2,,0\n");
}

}  // TEST_SUITE
