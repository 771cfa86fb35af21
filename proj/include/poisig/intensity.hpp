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

#ifndef POISIG_INTENSITY_HPP_
#define POISIG_INTENSITY_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "poisig/pointpattern.hpp"
#include "poisig/propagation.hpp"
#include "poisig/quadrature.hpp"

namespace poisig {

// A value with its Monte Carlo standard error. Deterministic backends report
// std_error = 0 and samples = 0.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

// M(t) = density * pi * t^{2/beta} * moment, moment = E[S^{2/beta}].
struct PowerLawStationary {
  double density = 0.0;
  double beta = 4.0;
  double moment = 1.0;
};

// M(t) = pi * density * E[min(h^-1(tS), window_radius)^2] by quadrature.
// An infinite window gives the stationary measure; a finite one gives the
// exact measure of a homogeneous process restricted to the disk.
struct StationaryGeneral {
  double density = 0.0;
  PathLossModel pathloss;
  FadingModel fading;
  double window_radius = std::numeric_limits<double>::infinity();
  QuadratureOptions quadrature;
};

// M(t) = E[phi(h^-1(tS))] for a fixed pattern, estimated from n_mc fading
// draws. Every t reuses the same draws, so the estimate is nondecreasing in t.
//
// With observer_jitter = w > 0 the observer is moved to a uniform point of
// [-w, w]^2 on each draw. For a square lattice of spacing a and w = a / 2 this
// averages the pattern over its own translations, which makes it stationary.
struct DeterministicPattern {
  std::shared_ptr<const PointPattern> pattern;
  PathLossModel pathloss;
  FadingModel fading;
  std::size_t n_mc = 100000;
  std::uint64_t seed = 0;
  double observer_jitter = 0.0;
};

// Piecewise-linear through (0, 0) and the (t, M) table; t strictly increasing,
// M nondecreasing and >= 0. Evaluation past the last t is a DomainError.
class TabulatedMeasure {
 public:
  TabulatedMeasure(std::vector<double> t, std::vector<double> m);

  std::span<const double> t() const noexcept { return t_; }
  std::span<const double> m() const noexcept { return m_; }
  double eval(double t) const;

 private:
  std::vector<double> t_;
  std::vector<double> m_;
};

class IntensityMeasure {
 public:
  using Backend =
      std::variant<PowerLawStationary, StationaryGeneral, DeterministicPattern, TabulatedMeasure>;

  // Validates backend parameters; throws ParameterError.
  explicit IntensityMeasure(Backend backend);

  const Backend& backend() const noexcept { return backend_; }

  // M((0, t]). Throws DomainError for t <= 0 and NumericError when
  // quadrature misses its tolerance.
  Estimate eval(double t) const;
  double operator()(double t) const { return eval(t).value; }

 private:
  Backend backend_;
};

// Mean power-value measure of [t', inf): eval(1 / t').
Estimate power_intensity(const IntensityMeasure& m, double t_prime);

// E[S^p] for 0 < p < 1. Closed forms for every fading family.
double moment_frac(const FadingModel& fading, double p);

// pi * density * sum_i c_i^2 t^{2/beta_i} E[S^{2/beta_i} 1(s_{i-1} <= tS < s_i)]
// over all k + 1 pieces, using closed-form partial moments.
double multislope_intensity(double density, const MultiSlope& pathloss,
                            const FadingModel& fading, double t);

struct ExponentialPathLossIntensity {
  // (density pi / beta^2) E[(ln+(tS))^2], quadrature in the fading variable.
  double value = 0.0;
  // (density pi / (t beta^2)) int_1^inf (ln x)^2 f_S(x / t) dx, present when S
  // has a density. Checked against value to relative 1e-3.
  std::optional<double> substituted;
};

ExponentialPathLossIntensity exponential_pl_intensity(double density, double beta,
                                                      const FadingModel& fading, double t);

// sum_i p_{x_i}(t), evaluated transmitter by transmitter.
double sum_signal_cdf(const PointPattern& pattern, const PathLossModel& pathloss,
                      const FadingModel& fading, double t);

// CSV `t,M`.
void write_measure_csv(std::ostream& out, const TabulatedMeasure& m);
TabulatedMeasure read_measure_csv(std::istream& in);

}  // namespace poisig

#endif  // POISIG_INTENSITY_HPP_
