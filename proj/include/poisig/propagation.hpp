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

#ifndef POISIG_PROPAGATION_HPP_
#define POISIG_PROPAGATION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "poisig/pointpattern.hpp"
#include "poisig/random.hpp"

namespace poisig {

// ---------------------------------------------------------------------------
// Path loss. Each model is the inverse attenuation h(r) = 1 / l(r), a
// nondecreasing, left-continuous function of distance, together with its
// generalized inverse h^-1(y) = inf{x : h(x) > y}. The pair satisfies
//     h(x) <= y  <=>  x <= h^-1(y).
// ---------------------------------------------------------------------------

// h(r) = r^beta, beta > 2.
struct PowerLaw {
  double beta = 4.0;
};

// h(r) = exp(beta r), beta > 0. h^-1(y) = ln+(y) / beta.
struct ExponentialPathLoss {
  double beta = 1.0;
};

// Piecewise power law with k breakpoints 0 < r_1 < ... < r_k and k + 1
// pieces: h(r) = r^{beta_i} / b_i on [r_{i-1}, r_i). Coefficients past b_1
// follow from continuity, b_{i+1} = b_i r_i^{beta_{i+1} - beta_i}.
class MultiSlope {
 public:
  // Derives b_2..b_{k+1} from b_1.
  MultiSlope(std::vector<double> breakpoints, std::vector<double> exponents, double b1);
  // Takes every coefficient and checks continuity to relative 1e-12.
  MultiSlope(std::vector<double> breakpoints, std::vector<double> exponents,
             std::vector<double> coefficients);

  std::size_t pieces() const noexcept { return exponents_.size(); }
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> exponents() const noexcept { return exponents_; }
  std::span<const double> coefficients() const noexcept { return b_; }
  // s_i = h(r_i), i = 1..k. Strictly increasing.
  std::span<const double> levels() const noexcept { return s_; }
  // c_i = b_i^{1/beta_i}, i = 1..k+1.
  std::span<const double> inverse_scales() const noexcept { return c_; }

  double h(double r) const;
  double h_inv(double y) const;

 private:
  void finish();

  std::vector<double> breakpoints_;
  std::vector<double> exponents_;
  std::vector<double> b_;
  std::vector<double> s_;
  std::vector<double> c_;
};

class PathLossModel {
 public:
  using Variant = std::variant<PowerLaw, MultiSlope, ExponentialPathLoss>;

  // Validates parameters; throws ParameterError.
  explicit PathLossModel(Variant v);

  static PathLossModel power_law(double beta) { return PathLossModel(PowerLaw{beta}); }
  static PathLossModel exponential(double beta) {
    return PathLossModel(ExponentialPathLoss{beta});
  }
  static PathLossModel multi_slope(std::vector<double> breakpoints,
                                   std::vector<double> exponents, double b1) {
    return PathLossModel(MultiSlope(std::move(breakpoints), std::move(exponents), b1));
  }

  const Variant& variant() const noexcept { return v_; }

  double h(double r) const;
  double h_inv(double y) const;

  // Values of y where h_inv changes formula.
  std::vector<double> inverse_kinks() const;

 private:
  Variant v_;
};

// ---------------------------------------------------------------------------
// Fading: the strictly positive multiplicative propagation effect S.
// ---------------------------------------------------------------------------

struct ConstantFading {
  double value = 1.0;
};

// Exponential with rate v (mean 1/v); Rayleigh fading in power.
struct ExponentialFading {
  double rate = 1.0;
};

// S = exp(mu + sigma B), B standard normal.
struct LogNormalFading {
  double mu = 0.0;
  double sigma = 1.0;
};

// S = exp(v B - v^2 / beta), so that E[S^{2/beta}] = 1.
struct NormalizedLogNormalFading {
  double v = 1.0;
  double beta = 4.0;

  double mu() const noexcept { return -v * v / beta; }
  double sigma() const noexcept { return v; }
};

// Piecewise-linear CDF through (value_j, cdf_j). Mass cdf_0 sits as an atom
// at value_0; the CDF is 0 below value_0 and 1 from the last value on.
// Sampling inverts the CDF.
class TabulatedFading {
 public:
  TabulatedFading(std::vector<double> values, std::vector<double> cdf);

  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> cdf_values() const noexcept { return cdf_; }

  double cdf(double x) const;
  double cdf_left(double x) const;
  double quantile(double u) const;

 private:
  std::vector<double> values_;
  std::vector<double> cdf_;
};

class FadingModel {
 public:
  using Variant = std::variant<ConstantFading, ExponentialFading, LogNormalFading,
                               NormalizedLogNormalFading, TabulatedFading>;

  // Validates parameters; throws ParameterError.
  explicit FadingModel(Variant v);

  static FadingModel constant(double s) { return FadingModel(ConstantFading{s}); }
  static FadingModel exponential(double rate) { return FadingModel(ExponentialFading{rate}); }
  static FadingModel lognormal(double mu, double sigma) {
    return FadingModel(LogNormalFading{mu, sigma});
  }
  static FadingModel lognormal_normalized(double v, double beta) {
    return FadingModel(NormalizedLogNormalFading{v, beta});
  }
  static FadingModel tabulated(std::vector<double> values, std::vector<double> cdf) {
    return FadingModel(TabulatedFading(std::move(values), std::move(cdf)));
  }

  const Variant& variant() const noexcept { return v_; }

  // Fills out with i.i.d. draws. Throws SamplingError on a draw <= 0.
  void sample(Rng& rng, std::span<double> out) const;
  double sample(Rng& rng) const;

  // P(S <= x) and its left limit P(S < x).
  double cdf(double x) const;
  double cdf_left(double x) const;
  // P(S >= x) = 1 - cdf_left(x), computed without cancellation in the tail.
  double tail(double x) const;

  // True when S has a Lebesgue density (no atoms).
  bool has_density() const noexcept;
  double density(double x) const;

  // E[S^p] in closed form, p > 0.
  double moment(double p) const;
  // E[S^p 1(lo <= S < hi)] in closed form, p >= 0.
  double partial_moment(double p, double lo, double hi) const;

 private:
  Variant v_;
};

// ---------------------------------------------------------------------------
// Propagation process N = {V_i = h(|x_i|) / S_i}.
// ---------------------------------------------------------------------------

struct Signal {
  double inverse_power = 0.0;  // V_i; the received power is 1 / V_i
  std::size_t transmitter = 0;  // canonical index in the pattern
};

// Sorted ascending by inverse_power.
using PropagationSample = std::vector<Signal>;

PropagationSample sample_signals(const PointPattern& pattern, const PathLossModel& pathloss,
                                 const FadingModel& fading, std::uint64_t seed);

// p_x(t) = P(0 < V <= t) = P(S >= h(r) / t), using the CDF's left limit so an
// atom of S exactly at h(r) / t is counted.
double signal_cdf(const PathLossModel& pathloss, const FadingModel& fading, double r, double t);

}  // namespace poisig

#endif  // POISIG_PROPAGATION_HPP_
