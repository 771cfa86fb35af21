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
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "poisig/errors.hpp"
#include "poisig/intensity.hpp"

using namespace poisig;

namespace {

constexpr double kPi = std::numbers::pi;

IntensityMeasure stationary(double density, const PathLossModel& pl, const FadingModel& f) {
  return IntensityMeasure(StationaryGeneral{.density = density, .pathloss = pl, .fading = f, .quadrature = {}});
}

IntensityMeasure pattern_mc(const PointPattern& p, const PathLossModel& pl, const FadingModel& f,
                            std::size_t n, std::uint64_t seed, double jitter = 0.0) {
  return IntensityMeasure(DeterministicPattern{.pattern = std::make_shared<const PointPattern>(p),
                                               .pathloss = pl,
                                               .fading = f,
                                               .n_mc = n,
                                               .seed = seed,
                                               .observer_jitter = jitter});
}

// pi * lambda * E[h_inv(tS)^2] by Simpson's rule against the exponential
// density, cut at the kinks of h_inv.
double stationary_expo_oracle(double density, const PathLossModel& pl, double rate, double t,
                              std::vector<double> cuts) {
  cuts.push_back(0.0);
  cuts.push_back(60.0 / rate);
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    sum += oracle::simpson(
        [&](double s) {
          const double r = pl.h_inv(t * s);
          return r * r * rate * std::exp(-rate * s);
        },
        cuts[i], cuts[i + 1]);
  }
  return kPi * density * sum;
}

}  // namespace

TEST_SUITE("intensity") {

TEST_CASE("power-law closed form") {
  const IntensityMeasure m(PowerLawStationary{1.0 / kPi, 4.0, 1.0});
  CHECK(m(4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(m(1e-12) < 1e-5);
  CHECK_THROWS_AS(m.eval(0.0), DomainError);
  CHECK_THROWS_AS(m.eval(-1.0), DomainError);

  const auto q = stationary(1.0 / kPi, PathLossModel::power_law(4.0), FadingModel::constant(1.0));
  CHECK(q(4.0) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("normalized lognormal gives lambda pi t^{2/beta} for every v") {
  for (double v : {0.5, 1.0, 2.0, 4.0}) {
    for (double beta : {3.0, 4.0}) {
      const auto m = stationary(0.7, PathLossModel::power_law(beta),
                                FadingModel::lognormal_normalized(v, beta));
      for (double t : {0.1, 1.0, 7.0}) {
        CHECK(m(t) == doctest::Approx(0.7 * kPi * std::pow(t, 2.0 / beta)).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("stationary quadrature against an independent Simpson oracle") {
  const auto pl = PathLossModel::multi_slope({1.0, 2.5}, {2.0, 3.0, 4.5}, 1.0);
  const auto m = stationary(0.4, pl, FadingModel::exponential(1.3));
  for (double t : {0.3, 1.0, 5.0, 40.0}) {
    std::vector<double> cuts;
    for (double y : pl.inverse_kinks()) cuts.push_back(y / t);
    const double ref = stationary_expo_oracle(0.4, pl, 1.3, t, cuts);
    CHECK(m(t) == doctest::Approx(ref).epsilon(1e-5));
  }
}

TEST_CASE("stationary window caps the radius") {
  const auto pl = PathLossModel::power_law(4.0);
  const IntensityMeasure m(StationaryGeneral{.density = 1.0,
                                             .pathloss = pl,
                                             .fading = FadingModel::constant(1.0),
                                             .window_radius = 2.0,
                                             .quadrature = {}});
  CHECK(m(1.0) == doctest::Approx(kPi).epsilon(1e-6));
  CHECK(m(1e4) == doctest::Approx(4.0 * kPi).epsilon(1e-6));
}

TEST_CASE("moment_frac") {
  CHECK(moment_frac(FadingModel::exponential(1.0), 0.5) ==
        doctest::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-14));
  CHECK(moment_frac(FadingModel::constant(1.0), 0.3) == 1.0);
  CHECK(moment_frac(FadingModel::constant(4.0), 0.5) == doctest::Approx(2.0));
  CHECK(moment_frac(FadingModel::lognormal_normalized(2.0, 4.0), 0.5) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(moment_frac(FadingModel::lognormal(0.5, 0.3), 0.5) ==
        doctest::Approx(std::exp(0.25 + 0.25 * 0.09 / 2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(moment_frac(FadingModel::constant(1.0), 1.0), DomainError);
  CHECK_THROWS_AS(moment_frac(FadingModel::constant(1.0), 0.0), DomainError);
}

TEST_CASE("Rayleigh moment and scaling in v") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uv(0.1, 10.0);
  std::uniform_real_distribution<double> ub(2.1, 8.0);
  for (int i = 0; i < 20; ++i) {
    const double v = uv(rng);
    const double beta = ub(rng);
    const double p = 2.0 / beta;
    const double exact = std::tgamma(p + 1.0) / std::pow(v, p);
    CHECK(std::abs(moment_frac(FadingModel::exponential(v), p) - exact) <= 1e-10 * exact);
    const IntensityMeasure a(
        PowerLawStationary{1.0, beta, moment_frac(FadingModel::exponential(v), p)});
    const IntensityMeasure b(
        PowerLawStationary{1.0, beta, moment_frac(FadingModel::exponential(2 * v), p)});
    CHECK(std::abs(b(1.5) / a(1.5) - std::pow(2.0, -p)) <= 1e-6);
  }
}

TEST_CASE("multislope intensity examples") {
  const auto pl = PathLossModel::multi_slope({1.0}, {2.0, 4.0}, 1.0);
  const auto& ms = std::get<MultiSlope>(pl.variant());
  const auto c = FadingModel::constant(1.0);
  const double lambda = 0.8;
  CHECK(multislope_intensity(lambda, ms, c, 4.0) == doctest::Approx(kPi * lambda * 2.0));
  CHECK(multislope_intensity(lambda, ms, c, 0.25) == doctest::Approx(kPi * lambda * 0.25));
  CHECK(stationary(lambda, pl, c)(4.0) == doctest::Approx(kPi * lambda * 2.0).epsilon(1e-6));

  // No breakpoints: single slope.
  const MultiSlope single({}, {3.0}, 1.0);
  const auto e = FadingModel::exponential(2.0);
  CHECK(multislope_intensity(1.0, single, e, 2.0) ==
        doctest::Approx(kPi * std::pow(2.0, 2.0 / 3.0) * moment_frac(e, 2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("multislope intensity agrees with stationary quadrature") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    const int k = 1 + i % 2;
    std::vector<double> r;
    double x = 0.0;
    for (int j = 0; j < k; ++j) {
      x += 0.2 + 3.0 * u(rng);
      r.push_back(x);
    }
    std::vector<double> beta;
    for (int j = 0; j <= k; ++j) beta.push_back(1.0 + 5.0 * u(rng));
    beta.back() = std::max(beta.back(), 2.2);  // finite stationary intensity needs > 2 at infinity
    const auto pl = PathLossModel::multi_slope(r, beta, 0.5 + u(rng));
    const auto& ms = std::get<MultiSlope>(pl.variant());
    const FadingModel f =
        i % 3 == 0 ? FadingModel::constant(0.5 + u(rng))
                   : (i % 3 == 1 ? FadingModel::exponential(0.5 + u(rng))
                                 : FadingModel::lognormal(u(rng) - 0.5, 0.3 + u(rng)));
    const double t = std::exp(6.0 * u(rng) - 3.0);
    const double a = multislope_intensity(0.3, ms, f, t);
    const double b = stationary(0.3, pl, f)(t);
    CHECK(std::abs(a - b) <= 1e-3 * b);
  }
}

TEST_CASE("exponential path-loss intensity") {
  const auto c = FadingModel::constant(1.0);
  CHECK(exponential_pl_intensity(1.0, 2.0, c, 1.0).value == 0.0);
  CHECK(exponential_pl_intensity(1.0, 2.0, c, 0.5).value == 0.0);
  CHECK_FALSE(exponential_pl_intensity(1.0, 2.0, c, 0.5).substituted.has_value());
  CHECK(exponential_pl_intensity(1.0, 2.0, c, std::exp(2.0)).value ==
        doctest::Approx(kPi).epsilon(1e-12));

  // pi E[(ln+ S)^2] for S ~ Exp(1), by Monte Carlo.
  const auto e = FadingModel::exponential(1.0);
  const auto r = exponential_pl_intensity(1.0, 1.0, e, 1.0);
  REQUIRE(r.substituted.has_value());
  CHECK(*r.substituted == doctest::Approx(r.value).epsilon(1e-3));
  std::mt19937_64 rng(77);
  std::exponential_distribution<double> d(1.0);
  const int n = 1000000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double l = std::max(0.0, std::log(d(rng)));
    sum += l * l;
  }
  CHECK(r.value == doctest::Approx(kPi * sum / n).epsilon(0.01));

  // Matches stationary quadrature through h_inv = ln+ / beta.
  const auto ln = FadingModel::lognormal(0.2, 0.7);
  for (double t : {0.5, 2.0, 30.0}) {
    const auto x = exponential_pl_intensity(0.6, 1.5, ln, t);
    CHECK(x.value == doctest::Approx(stationary(0.6, PathLossModel::exponential(1.5), ln)(t))
                         .epsilon(1e-4));
    REQUIRE(x.substituted.has_value());
    CHECK(*x.substituted == doctest::Approx(x.value).epsilon(1e-3));
  }
}

TEST_CASE("power intensity") {
  const IntensityMeasure m(PowerLawStationary{1.0 / kPi, 4.0, 1.0});
  CHECK(power_intensity(m, 0.25).value == doctest::Approx(2.0));
  CHECK(power_intensity(m, std::numeric_limits<double>::infinity()).value == 0.0);
  CHECK(power_intensity(m, 1e12).value < 1e-5);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 50; ++i) {
    const double t = std::exp(u(rng));
    CHECK(power_intensity(m, 1.0 / t).value == doctest::Approx(m(t)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(power_intensity(m, 0.0), DomainError);
}

TEST_CASE("sum_signal_cdf examples") {
  const auto pl = PathLossModel::power_law(4.0);
  CHECK(sum_signal_cdf(generate(ExplicitSpec{}, 0), pl, FadingModel::exponential(1.0), 1.0) == 0.0);
  const auto one = generate(ExplicitSpec{{{0, 1.5}}}, 0);
  CHECK(sum_signal_cdf(one, pl, FadingModel::constant(1.0), std::pow(1.5, 4.0)) == 1.0);
  CHECK(sum_signal_cdf(one, pl, FadingModel::constant(1.0), 100.0) == 1.0);
}

TEST_CASE("sum_signal_cdf agrees with pattern Monte Carlo") {
  const auto pattern = generate(SquareLatticeSpec{1.0, 30.0, {0.5, 0.5}}, 0);
  const auto pl = PathLossModel::power_law(4.0);
  const auto f = FadingModel::exponential(1.0);
  const double exact = sum_signal_cdf(pattern, pl, f, 1.0);
  const auto est = pattern_mc(pattern, pl, f, 100000, 5).eval(1.0);
  CHECK(est.samples == 100000);
  CHECK(est.std_error > 0.0);
  CHECK(std::abs(est.value - exact) <= 3.0 * est.std_error);
}

TEST_CASE("pattern backend with constant fading counts exactly") {
  const auto pattern = generate(ExplicitSpec{{{1, 0}, {0, 2}, {3, 0}}}, 0);
  const auto m = pattern_mc(pattern, PathLossModel::power_law(4.0), FadingModel::constant(1.0), 10, 1);
  CHECK(m(15.9) == 1.0);
  CHECK(m(16.0) == 2.0);
  CHECK(m.eval(16.0).std_error == 0.0);
  CHECK(m(81.0) == 3.0);
}

TEST_CASE("pattern backend is deterministic and backends agree") {
  const auto pattern = generate(PoissonDiskSpec{1.0 / kPi, 40.0}, 8);
  const auto pl = PathLossModel::power_law(4.0);
  const auto f = FadingModel::exponential(1.0);
  const auto a = pattern_mc(pattern, pl, f, 50000, 3);
  const auto b = pattern_mc(pattern, pl, f, 50000, 3);
  CHECK(a.eval(2.0).value == b.eval(2.0).value);

  // Poisson pattern: its realization fluctuates around the stationary value.
  const IntensityMeasure closed(PowerLawStationary{1.0 / kPi, 4.0, moment_frac(f, 0.5)});
  const auto quad = stationary(1.0 / kPi, pl, f);
  for (double t : {0.5, 2.0, 8.0}) {
    CHECK(quad(t) == doctest::Approx(closed(t)).epsilon(1e-5));
    const auto e = a.eval(t);
    CHECK(std::abs(e.value - closed(t)) <= 3.0 * e.std_error + 0.1 * closed(t) + 0.5);
  }
}

TEST_CASE("observer jitter over a lattice cell matches the stationary measure") {
  const double a = std::sqrt(kPi);
  const auto pattern = generate(SquareLatticeSpec{a, 50.0, {a / 2, a / 2}}, 0);
  const auto pl = PathLossModel::power_law(4.0);
  const auto f = FadingModel::constant(1.0);
  const auto m = pattern_mc(pattern, pl, f, 200000, 9, a / 2);
  for (double t : {0.05, 0.5, 4.0}) {
    const auto e = m.eval(t);
    CHECK(std::abs(e.value - std::sqrt(t)) <= 4.0 * e.std_error + 1e-3);
  }
}

TEST_CASE("eval is nondecreasing in t for every backend") {
  const auto pattern = generate(PoissonDiskSpec{1.0, 10.0}, 2);
  const auto pl = PathLossModel::power_law(3.0);
  const auto f = FadingModel::lognormal(0.0, 0.5);
  const std::vector<IntensityMeasure> ms = {
      IntensityMeasure(PowerLawStationary{1.0, 3.0, moment_frac(f, 2.0 / 3.0)}),
      stationary(1.0, pl, f),
      pattern_mc(pattern, pl, f, 20000, 1),
      IntensityMeasure(TabulatedMeasure({0.5, 1.0, 100.0}, {0.1, 0.1, 4.0})),
  };
  for (const auto& m : ms) {
    double prev = 0.0;
    for (double t = 0.01; t <= 100.0; t *= 1.5) {
      const double v = m(t);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("tabulated measure interpolation and validation") {
  const TabulatedMeasure tm({1.0, 2.0, 4.0}, {1.0, 1.5, 3.5});
  CHECK(tm.eval(0.5) == doctest::Approx(0.5));
  CHECK(tm.eval(1.5) == doctest::Approx(1.25));
  CHECK(tm.eval(4.0) == doctest::Approx(3.5));
  CHECK_THROWS_AS(tm.eval(4.5), DomainError);
  CHECK_THROWS_AS(TabulatedMeasure({1.0, 1.0}, {0.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(TabulatedMeasure({1.0, 2.0}, {1.0, 0.5}), ParameterError);
  CHECK_THROWS_AS(TabulatedMeasure({}, {}), ParameterError);

  std::stringstream ss;
  write_measure_csv(ss, tm);
  CHECK(ss.str().rfind("t,M\n", 0) == 0);
  const auto back = read_measure_csv(ss);
  REQUIRE(back.t().size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(back.t()[j] == tm.t()[j]);
    CHECK(back.m()[j] == tm.m()[j]);
  }
}

TEST_CASE("backend validation") {
  CHECK_THROWS_AS(IntensityMeasure(PowerLawStationary{1.0, 2.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(IntensityMeasure(PowerLawStationary{-1.0, 4.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(IntensityMeasure(DeterministicPattern{.pattern = nullptr,
                                                        .pathloss = PathLossModel::power_law(4),
                                                        .fading = FadingModel::constant(1)}),
                  ParameterError);
}

}  // TEST_SUITE
