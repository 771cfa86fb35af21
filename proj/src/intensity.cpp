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

#include "poisig/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>

#include "csv.hpp"
#include "poisig/errors.hpp"
#include "poisig/parallel.hpp"

namespace poisig {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 8192;

void require(bool ok, const char* what) {
  if (!ok) throw ParameterError(what);
}

void require_t(double t) {
  if (!(t > 0.0) || std::isnan(t)) throw DomainError("intensity: t must be > 0");
}

double eval_stationary(const StationaryGeneral& m, double t) {
  const double window = m.window_radius;
  auto g = [&](double s) {
    const double r = std::min(m.pathloss.h_inv(t * s), window);
    return r * r;
  };
  std::vector<double> kinks;
  for (double y : m.pathloss.inverse_kinks()) kinks.push_back(y / t);
  if (std::isfinite(window)) kinks.push_back(m.pathloss.h(window) / t);
  const Integral e = [&] {
    try {
      return expectation(m.fading, g, kinks, m.quadrature);
    } catch (const NumericError& err) {
      throw NumericError(err.what(), kPi * m.density * err.best_estimate(),
                         kPi * m.density * err.error_estimate());
    }
  }();
  return kPi * m.density * e.value;
}

Estimate eval_pattern(const DeterministicPattern& m, double t) {
  const std::size_t chunks = (m.n_mc + kChunk - 1) / kChunk;
  struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  std::vector<Partial> partial(chunks);
  const PointPattern& pattern = *m.pattern;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * kChunk;
    const std::size_t count = std::min(kChunk, m.n_mc - begin);
    Rng rng = make_rng(m.seed, c);
    std::vector<double> s(count);
    m.fading.sample(rng, s);
    std::uniform_real_distribution<double> shift(-m.observer_jitter, m.observer_jitter);
    Partial p;
    for (std::size_t i = 0; i < count; ++i) {
      const double radius = m.pathloss.h_inv(t * s[i]);
      double n = 0.0;
      if (m.observer_jitter > 0.0) {
        const Point2 observer{shift(rng), shift(rng)};
        n = static_cast<double>(pattern.count_in_disk(observer, radius));
      } else {
        n = static_cast<double>(pattern.count_in_disk(radius));
      }
      p.sum += n;
      p.sum_sq += n * n;
    }
    partial[c] = p;
  });
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& p : partial) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const auto n = static_cast<double>(m.n_mc);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n), m.n_mc};
}

}  // namespace

TabulatedMeasure::TabulatedMeasure(std::vector<double> t, std::vector<double> m)
    : t_(std::move(t)), m_(std::move(m)) {
  require(!t_.empty(), "tabulated measure: empty table");
  require(t_.size() == m_.size(), "tabulated measure: t and M differ in length");
  for (std::size_t j = 0; j < t_.size(); ++j) {
    require(std::isfinite(t_[j]) && t_[j] > 0.0, "tabulated measure: t must be > 0");
    require(std::isfinite(m_[j]) && m_[j] >= 0.0, "tabulated measure: M must be >= 0");
    if (j > 0) {
      require(t_[j] > t_[j - 1], "tabulated measure: t must increase strictly");
      require(m_[j] >= m_[j - 1], "tabulated measure: M must be nondecreasing");
    }
  }
}

double TabulatedMeasure::eval(double t) const {
  require_t(t);
  if (t > t_.back()) throw DomainError("tabulated measure: t beyond the table");
  const auto j =
      static_cast<std::size_t>(std::lower_bound(t_.begin(), t_.end(), t) - t_.begin());
  const double t0 = j == 0 ? 0.0 : t_[j - 1];
  const double m0 = j == 0 ? 0.0 : m_[j - 1];
  const double w = (t - t0) / (t_[j] - t0);
  return m0 + w * (m_[j] - m0);
}

IntensityMeasure::IntensityMeasure(Backend backend) : backend_(std::move(backend)) {
  std::visit(
      [](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, PowerLawStationary>) {
          require(std::isfinite(b.density) && b.density >= 0.0, "intensity: density must be >= 0");
          require(std::isfinite(b.beta) && b.beta > 2.0, "intensity: beta must be > 2");
          require(std::isfinite(b.moment) && b.moment >= 0.0, "intensity: moment must be >= 0");
        } else if constexpr (std::is_same_v<T, StationaryGeneral>) {
          require(std::isfinite(b.density) && b.density >= 0.0, "intensity: density must be >= 0");
          require(b.window_radius > 0.0, "intensity: window radius must be > 0");
          require(b.quadrature.abs_tol > 0.0 && b.quadrature.rel_tol > 0.0,
                  "intensity: quadrature tolerances must be > 0");
        } else if constexpr (std::is_same_v<T, DeterministicPattern>) {
          require(b.pattern != nullptr, "intensity: missing pattern");
          require(b.n_mc >= 2, "intensity: n_mc must be >= 2");
          require(std::isfinite(b.observer_jitter) && b.observer_jitter >= 0.0,
                  "intensity: observer jitter must be >= 0");
        }
      },
      backend_);
}

Estimate IntensityMeasure::eval(double t) const {
  require_t(t);
  return std::visit(
      [t](const auto& b) -> Estimate {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, PowerLawStationary>) {
          return {b.density * kPi * std::pow(t, 2.0 / b.beta) * b.moment};
        } else if constexpr (std::is_same_v<T, StationaryGeneral>) {
          return {eval_stationary(b, t)};
        } else if constexpr (std::is_same_v<T, DeterministicPattern>) {
          return eval_pattern(b, t);
        } else {
          return {b.eval(t)};
        }
      },
      backend_);
}

Estimate power_intensity(const IntensityMeasure& m, double t_prime) {
  if (!(t_prime > 0.0)) throw DomainError("power_intensity: t' must be > 0");
  if (std::isinf(t_prime)) return {};
  return m.eval(1.0 / t_prime);
}

double moment_frac(const FadingModel& fading, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("moment_frac: p must lie in (0, 1)");
  return fading.moment(p);
}

double multislope_intensity(double density, const MultiSlope& pathloss,
                            const FadingModel& fading, double t) {
  require_t(t);
  const auto levels = pathloss.levels();
  const auto exps = pathloss.exponents();
  const auto scales = pathloss.inverse_scales();
  double sum = 0.0;
  for (std::size_t i = 0; i < pathloss.pieces(); ++i) {
    const double lo = i == 0 ? 0.0 : levels[i - 1] / t;
    const double hi = i < levels.size() ? levels[i] / t : std::numeric_limits<double>::infinity();
    const double p = 2.0 / exps[i];
    sum += scales[i] * scales[i] * std::pow(t, p) * fading.partial_moment(p, lo, hi);
  }
  return kPi * density * sum;
}

ExponentialPathLossIntensity exponential_pl_intensity(double density, double beta,
                                                      const FadingModel& fading, double t) {
  require_t(t);
  require(std::isfinite(beta) && beta > 0.0, "exponential path loss: beta must be > 0");
  const double scale = density * kPi / (beta * beta);

  auto g = [t](double s) {
    const double l = std::log(t * s);
    return l > 0.0 ? l * l : 0.0;
  };
  const double kink = 1.0 / t;
  ExponentialPathLossIntensity out;
  out.value = scale * expectation(fading, g, std::span<const double>(&kink, 1)).value;
  if (!fading.has_density()) return out;

  // int_1^inf (ln x)^2 f_S(x / t) dx / t, integrated in y = ln x.
  auto f = [&](double y) {
    const double x = std::exp(y);
    return std::isinf(x) ? 0.0 : y * y * fading.density(x / t) * x / t;
  };
  double upper = 1.0;
  while (fading.tail(upper) > 1e-18 && upper < 1e300) upper *= 2.0;
  const double y_max = std::max(1.0, std::log(t * upper) + 1.0);
  std::vector<double> cuts;
  if (const auto* tab = std::get_if<TabulatedFading>(&fading.variant())) {
    for (double v : tab->values()) {
      if (v > 0.0) cuts.push_back(std::log(t * v));
    }
  }
  const double step = std::max(0.25, y_max / 400.0);
  for (double y = step; y < y_max; y += step) cuts.push_back(y);
  std::erase_if(cuts, [&](double y) { return !(y > 0.0 && y < y_max); });
  std::sort(cuts.begin(), cuts.end());
  double sub = 0.0;
  double a = 0.0;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    const double b = i < cuts.size() ? cuts[i] : y_max;
    if (b > a) sub += integrate(f, a, b).value;
    a = b;
  }
  sub += integrate(f, y_max, std::numeric_limits<double>::infinity()).value;
  sub *= scale;
  out.substituted = sub;
  if (std::abs(sub - out.value) > 1e-3 * std::abs(out.value) + 1e-12) {
    throw NumericError("exponential path-loss intensity: integral forms disagree", out.value,
                       std::abs(sub - out.value));
  }
  return out;
}

double sum_signal_cdf(const PointPattern& pattern, const PathLossModel& pathloss,
                      const FadingModel& fading, double t) {
  double sum = 0.0;
  for (double r : pattern.radii()) sum += signal_cdf(pathloss, fading, r, t);
  return sum;
}

void write_measure_csv(std::ostream& out, const TabulatedMeasure& m) {
  out << "t,M\n";
  for (std::size_t j = 0; j < m.t().size(); ++j) {
    out << csv::format_real(m.t()[j]) << ',' << csv::format_real(m.m()[j]) << '\n';
  }
}

TabulatedMeasure read_measure_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("measure csv: missing header");
  const auto header = csv::split_line(line);
  if (header.size() != 2 || header[0] != "t" || header[1] != "M") {
    throw IoError("measure csv: header must be 't,M'");
  }
  std::vector<double> t;
  std::vector<double> m;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = csv::split_line(line);
    if (f.size() != 2) {
      throw IoError("measure csv line " + std::to_string(line_no) + ": expected 2 fields");
    }
    t.push_back(csv::parse_real(f[0], line_no));
    m.push_back(csv::parse_real(f[1], line_no));
  }
  return TabulatedMeasure(std::move(t), std::move(m));
}

}  // namespace poisig
