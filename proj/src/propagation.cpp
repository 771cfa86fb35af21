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

#include "poisig/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/special_functions/gamma.hpp>

#include "poisig/errors.hpp"

namespace poisig {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void require(bool ok, const char* what) {
  if (!ok) throw ParameterError(what);
}

// P(lo <= Z < hi) for standard normal Z, accurate in both tails.
double normal_mass(double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  if (lo >= 0.0) return 0.5 * (std::erfc(lo / std::numbers::sqrt2) -
                               std::erfc(hi / std::numbers::sqrt2));
  if (hi <= 0.0) return 0.5 * (std::erfc(-hi / std::numbers::sqrt2) -
                               std::erfc(-lo / std::numbers::sqrt2));
  return 1.0 - 0.5 * std::erfc(-lo / std::numbers::sqrt2) -
         0.5 * std::erfc(hi / std::numbers::sqrt2);
}

// Integral of u^a e^-u over [x0, x1], 0 <= x0 <= x1 <= inf, divided by Gamma(a + 1).
double regularized_gamma_mass(double a, double x0, double x1) {
  if (!(x1 > x0)) return 0.0;
  const double shape = a + 1.0;
  if (x0 > shape) {
    const double q1 = std::isinf(x1) ? 0.0 : boost::math::gamma_q(shape, x1);
    return boost::math::gamma_q(shape, x0) - q1;
  }
  const double p0 = x0 > 0.0 ? boost::math::gamma_p(shape, x0) : 0.0;
  const double p1 = std::isinf(x1) ? 1.0 : boost::math::gamma_p(shape, x1);
  return p1 - p0;
}

double lognormal_cdf(double mu, double sigma, double x) {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  return 0.5 * std::erfc(-(std::log(x) - mu) / (sigma * std::numbers::sqrt2));
}

double lognormal_density(double mu, double sigma, double x) {
  if (!(x > 0.0) || std::isinf(x)) return 0.0;
  const double z = (std::log(x) - mu) / sigma;
  return std::exp(-0.5 * z * z) / (x * sigma * std::sqrt(2.0 * std::numbers::pi));
}

// E[S^p 1(lo <= S < hi)] for S = exp(mu + sigma B).
double lognormal_partial(double mu, double sigma, double p, double lo, double hi) {
  const double scale = std::exp(p * mu + 0.5 * p * p * sigma * sigma);
  auto z = [&](double b) {
    if (!(b > 0.0)) return -kInf;
    if (std::isinf(b)) return kInf;
    return (std::log(b) - mu - p * sigma * sigma) / sigma;
  };
  return scale * normal_mass(z(lo), z(hi));
}

}  // namespace

// --- MultiSlope ------------------------------------------------------------

MultiSlope::MultiSlope(std::vector<double> breakpoints, std::vector<double> exponents,
                       double b1)
    : breakpoints_(std::move(breakpoints)), exponents_(std::move(exponents)) {
  require(exponents_.size() == breakpoints_.size() + 1,
          "multi-slope: need one more exponent than breakpoints");
  require(positive_finite(b1), "multi-slope: b_1 must be > 0");
  b_.assign(exponents_.size(), b1);
  for (double beta : exponents_) require(positive_finite(beta), "multi-slope: exponents must be > 0");
  for (double r : breakpoints_) require(positive_finite(r), "multi-slope: breakpoints must be > 0");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    b_[i + 1] = b_[i] * std::pow(breakpoints_[i], exponents_[i + 1] - exponents_[i]);
  }
  finish();
}

MultiSlope::MultiSlope(std::vector<double> breakpoints, std::vector<double> exponents,
                       std::vector<double> coefficients)
    : breakpoints_(std::move(breakpoints)),
      exponents_(std::move(exponents)),
      b_(std::move(coefficients)) {
  require(exponents_.size() == breakpoints_.size() + 1,
          "multi-slope: need one more exponent than breakpoints");
  require(b_.size() == exponents_.size(), "multi-slope: need one coefficient per piece");
  for (double beta : exponents_) require(positive_finite(beta), "multi-slope: exponents must be > 0");
  for (double r : breakpoints_) require(positive_finite(r), "multi-slope: breakpoints must be > 0");
  for (double b : b_) require(positive_finite(b), "multi-slope: coefficients must be > 0");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double expected = b_[i] * std::pow(breakpoints_[i], exponents_[i + 1] - exponents_[i]);
    require(std::abs(b_[i + 1] - expected) <= 1e-12 * std::abs(expected),
            "multi-slope: coefficients violate continuity");
  }
  finish();
}

void MultiSlope::finish() {
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    require(breakpoints_[i] > breakpoints_[i - 1], "multi-slope: breakpoints must increase");
  }
  s_.clear();
  c_.clear();
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    s_.push_back(std::pow(breakpoints_[i], exponents_[i]) / b_[i]);
  }
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    c_.push_back(std::pow(b_[i], 1.0 / exponents_[i]));
  }
  for (std::size_t i = 1; i < s_.size(); ++i) {
    require(s_[i] > s_[i - 1], "multi-slope: levels h(r_i) must increase");
  }
}

double MultiSlope::h(double r) const {
  if (!(r > 0.0)) return 0.0;
  const auto piece = static_cast<std::size_t>(
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r) - breakpoints_.begin());
  return std::pow(r, exponents_[piece]) / b_[piece];
}

double MultiSlope::h_inv(double y) const {
  if (!(y > 0.0)) return 0.0;
  const auto piece =
      static_cast<std::size_t>(std::upper_bound(s_.begin(), s_.end(), y) - s_.begin());
  return c_[piece] * std::pow(y, 1.0 / exponents_[piece]);
}

// --- PathLossModel ---------------------------------------------------------

PathLossModel::PathLossModel(Variant v) : v_(std::move(v)) {
  if (const auto* p = std::get_if<PowerLaw>(&v_)) {
    require(std::isfinite(p->beta) && p->beta > 2.0, "power law: beta must be > 2");
  } else if (const auto* e = std::get_if<ExponentialPathLoss>(&v_)) {
    require(positive_finite(e->beta), "exponential path loss: beta must be > 0");
  }
}

double PathLossModel::h(double r) const {
  return std::visit(
      [r](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
          return r > 0.0 ? std::pow(r, m.beta) : 0.0;
        } else if constexpr (std::is_same_v<T, ExponentialPathLoss>) {
          return std::exp(m.beta * std::max(r, 0.0));
        } else {
          return m.h(r);
        }
      },
      v_);
}

double PathLossModel::h_inv(double y) const {
  return std::visit(
      [y](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
          return y > 0.0 ? std::pow(y, 1.0 / m.beta) : 0.0;
        } else if constexpr (std::is_same_v<T, ExponentialPathLoss>) {
          // ln+, not ln: every x >= 0 has h(x) >= 1 > y when y < 1.
          return y > 1.0 ? std::log(y) / m.beta : 0.0;
        } else {
          return m.h_inv(y);
        }
      },
      v_);
}

std::vector<double> PathLossModel::inverse_kinks() const {
  if (const auto* m = std::get_if<MultiSlope>(&v_)) {
    return {m->levels().begin(), m->levels().end()};
  }
  if (std::holds_alternative<ExponentialPathLoss>(v_)) return {1.0};
  return {};
}

// --- TabulatedFading -------------------------------------------------------

TabulatedFading::TabulatedFading(std::vector<double> values, std::vector<double> cdf)
    : values_(std::move(values)), cdf_(std::move(cdf)) {
  require(!values_.empty(), "tabulated fading: empty table");
  require(values_.size() == cdf_.size(), "tabulated fading: values and cdf differ in length");
  for (std::size_t j = 0; j < values_.size(); ++j) {
    require(std::isfinite(values_[j]) && values_[j] >= 0.0,
            "tabulated fading: values must be finite and >= 0");
    require(std::isfinite(cdf_[j]) && cdf_[j] >= 0.0 && cdf_[j] <= 1.0,
            "tabulated fading: cdf must lie in [0, 1]");
    if (j > 0) {
      require(values_[j] > values_[j - 1], "tabulated fading: values must increase strictly");
      require(cdf_[j] >= cdf_[j - 1], "tabulated fading: cdf must be nondecreasing");
    }
  }
  require(cdf_.back() == 1.0, "tabulated fading: last cdf value must be 1");
}

double TabulatedFading::cdf(double x) const {
  if (x < values_.front()) return 0.0;
  if (x >= values_.back()) return 1.0;
  const auto j = static_cast<std::size_t>(
      std::upper_bound(values_.begin(), values_.end(), x) - values_.begin());
  const double w = (x - values_[j - 1]) / (values_[j] - values_[j - 1]);
  return cdf_[j - 1] + w * (cdf_[j] - cdf_[j - 1]);
}

double TabulatedFading::cdf_left(double x) const {
  // Only value_0 can carry an atom.
  return x <= values_.front() ? 0.0 : cdf(x);
}

double TabulatedFading::quantile(double u) const {
  const auto j = static_cast<std::size_t>(
      std::lower_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
  if (j == 0) return values_.front();
  if (j >= cdf_.size()) return values_.back();
  const double w = (u - cdf_[j - 1]) / (cdf_[j] - cdf_[j - 1]);
  return values_[j - 1] + w * (values_[j] - values_[j - 1]);
}

// --- FadingModel -----------------------------------------------------------

FadingModel::FadingModel(Variant v) : v_(std::move(v)) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantFading>) {
          require(positive_finite(m.value), "constant fading: value must be > 0");
        } else if constexpr (std::is_same_v<T, ExponentialFading>) {
          require(positive_finite(m.rate), "exponential fading: rate must be > 0");
        } else if constexpr (std::is_same_v<T, LogNormalFading>) {
          require(std::isfinite(m.mu), "lognormal fading: mu must be finite");
          require(positive_finite(m.sigma), "lognormal fading: sigma must be > 0");
        } else if constexpr (std::is_same_v<T, NormalizedLogNormalFading>) {
          require(positive_finite(m.v), "normalized lognormal fading: v must be > 0");
          require(std::isfinite(m.beta) && m.beta > 2.0,
                  "normalized lognormal fading: beta must be > 2");
        }
      },
      v_);
}

void FadingModel::sample(Rng& rng, std::span<double> out) const {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantFading>) {
          std::fill(out.begin(), out.end(), m.value);
        } else if constexpr (std::is_same_v<T, ExponentialFading>) {
          std::exponential_distribution<double> dist(m.rate);
          for (auto& s : out) {
            do {
              s = dist(rng);
            } while (s == 0.0);
          }
        } else if constexpr (std::is_same_v<T, TabulatedFading>) {
          std::uniform_real_distribution<double> unit(0.0, 1.0);
          for (auto& s : out) {
            s = m.quantile(1.0 - unit(rng));
            if (!(s > 0.0)) throw SamplingError("tabulated fading drew S = 0");
          }
        } else {
          double mu = 0.0;
          double sigma = 0.0;
          if constexpr (std::is_same_v<T, LogNormalFading>) {
            mu = m.mu;
            sigma = m.sigma;
          } else {
            mu = m.mu();
            sigma = m.sigma();
          }
          std::normal_distribution<double> normal(0.0, 1.0);
          for (auto& s : out) {
            s = std::exp(mu + sigma * normal(rng));
            if (!(s > 0.0) || std::isinf(s)) {
              throw SamplingError("lognormal fading draw under- or overflowed");
            }
          }
        }
      },
      v_);
}

double FadingModel::sample(Rng& rng) const {
  double s = 0.0;
  sample(rng, std::span<double>(&s, 1));
  return s;
}

double FadingModel::cdf(double x) const {
  return std::visit(
      [x](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantFading>) {
          return x >= m.value ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, ExponentialFading>) {
          return x > 0.0 ? -std::expm1(-m.rate * x) : 0.0;
        } else if constexpr (std::is_same_v<T, LogNormalFading>) {
          return lognormal_cdf(m.mu, m.sigma, x);
        } else if constexpr (std::is_same_v<T, NormalizedLogNormalFading>) {
          return lognormal_cdf(m.mu(), m.sigma(), x);
        } else {
          return m.cdf(x);
        }
      },
      v_);
}

double FadingModel::cdf_left(double x) const {
  if (const auto* c = std::get_if<ConstantFading>(&v_)) return x > c->value ? 1.0 : 0.0;
  if (const auto* t = std::get_if<TabulatedFading>(&v_)) return t->cdf_left(x);
  return cdf(x);
}

double FadingModel::tail(double x) const {
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  return std::visit(
      [x](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantFading>) {
          return x <= m.value ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, ExponentialFading>) {
          return std::exp(-m.rate * x);
        } else if constexpr (std::is_same_v<T, LogNormalFading>) {
          return 0.5 * std::erfc((std::log(x) - m.mu) / (m.sigma * std::numbers::sqrt2));
        } else if constexpr (std::is_same_v<T, NormalizedLogNormalFading>) {
          return 0.5 * std::erfc((std::log(x) - m.mu()) / (m.sigma() * std::numbers::sqrt2));
        } else {
          return 1.0 - m.cdf_left(x);
        }
      },
      v_);
}

bool FadingModel::has_density() const noexcept {
  if (std::holds_alternative<ConstantFading>(v_)) return false;
  if (const auto* t = std::get_if<TabulatedFading>(&v_)) return t->cdf_values().front() == 0.0;
  return true;
}

double FadingModel::density(double x) const {
  if (!has_density()) throw DomainError("fading distribution has an atom and no density");
  return std::visit(
      [x](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantFading>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, ExponentialFading>) {
          return x >= 0.0 ? m.rate * std::exp(-m.rate * x) : 0.0;
        } else if constexpr (std::is_same_v<T, LogNormalFading>) {
          return lognormal_density(m.mu, m.sigma, x);
        } else if constexpr (std::is_same_v<T, NormalizedLogNormalFading>) {
          return lognormal_density(m.mu(), m.sigma(), x);
        } else {
          const auto v = m.values();
          const auto c = m.cdf_values();
          if (x < v.front() || x >= v.back()) return 0.0;
          const auto j = static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), x) - v.begin());
          return (c[j] - c[j - 1]) / (v[j] - v[j - 1]);
        }
      },
      v_);
}

double FadingModel::moment(double p) const {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("moment order must be > 0");
  return std::visit(
      [p](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantFading>) {
          return std::pow(m.value, p);
        } else if constexpr (std::is_same_v<T, ExponentialFading>) {
          return std::tgamma(p + 1.0) / std::pow(m.rate, p);
        } else if constexpr (std::is_same_v<T, LogNormalFading>) {
          return std::exp(p * m.mu + 0.5 * p * p * m.sigma * m.sigma);
        } else if constexpr (std::is_same_v<T, NormalizedLogNormalFading>) {
          if (p == 2.0 / m.beta) return 1.0;
          return std::exp(p * m.mu() + 0.5 * p * p * m.sigma() * m.sigma());
        } else {
          const auto v = m.values();
          const auto c = m.cdf_values();
          double sum = c.front() * std::pow(v.front(), p);
          for (std::size_t j = 1; j < v.size(); ++j) {
            const double slope = (c[j] - c[j - 1]) / (v[j] - v[j - 1]);
            sum += slope * (std::pow(v[j], p + 1.0) - std::pow(v[j - 1], p + 1.0)) / (p + 1.0);
          }
          return sum;
        }
      },
      v_);
}

double FadingModel::partial_moment(double p, double lo, double hi) const {
  if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("moment order must be >= 0");
  lo = std::max(lo, 0.0);
  if (!(hi > lo)) return 0.0;
  return std::visit(
      [=](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantFading>) {
          return (lo <= m.value && m.value < hi) ? std::pow(m.value, p) : 0.0;
        } else if constexpr (std::is_same_v<T, ExponentialFading>) {
          const double mass = regularized_gamma_mass(p, m.rate * lo, m.rate * hi);
          return std::tgamma(p + 1.0) / std::pow(m.rate, p) * mass;
        } else if constexpr (std::is_same_v<T, LogNormalFading>) {
          return lognormal_partial(m.mu, m.sigma, p, lo, hi);
        } else if constexpr (std::is_same_v<T, NormalizedLogNormalFading>) {
          return lognormal_partial(m.mu(), m.sigma(), p, lo, hi);
        } else {
          const auto v = m.values();
          const auto c = m.cdf_values();
          double sum = (lo <= v.front() && v.front() < hi) ? c.front() * std::pow(v.front(), p)
                                                           : 0.0;
          for (std::size_t j = 1; j < v.size(); ++j) {
            const double a = std::max(v[j - 1], lo);
            const double b = std::min(v[j], hi);
            if (!(b > a)) continue;
            const double slope = (c[j] - c[j - 1]) / (v[j] - v[j - 1]);
            sum += slope * (std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) / (p + 1.0);
          }
          return sum;
        }
      },
      v_);
}

// --- Propagation process ---------------------------------------------------

PropagationSample sample_signals(const PointPattern& pattern, const PathLossModel& pathloss,
                                 const FadingModel& fading, std::uint64_t seed) {
  const auto radii = pattern.radii();
  std::vector<double> s(radii.size());
  Rng rng = make_rng(seed, 0);
  fading.sample(rng, s);
  PropagationSample out(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    out[i] = {pathloss.h(radii[i]) / s[i], i};
  }
  std::stable_sort(out.begin(), out.end(), [](const Signal& a, const Signal& b) {
    return a.inverse_power < b.inverse_power;
  });
  return out;
}

double signal_cdf(const PathLossModel& pathloss, const FadingModel& fading, double r, double t) {
  if (!(t > 0.0)) return 0.0;
  return std::clamp(fading.tail(pathloss.h(r) / t), 0.0, 1.0);
}

}  // namespace poisig
