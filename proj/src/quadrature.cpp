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

#include "poisig/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "poisig/errors.hpp"

namespace poisig {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr unsigned kMaxDepth = 20;
constexpr double kTargetTol = 1e-12;
// Lognormal integrals run over z in [-kZMax, kZMax]; the Gaussian weight at
// the cut is below the smallest double.
constexpr double kZMax = 40.0;

// Sorted, deduplicated cut points strictly inside (lo, hi).
std::vector<double> cuts_between(std::vector<double> pts, double lo, double hi) {
  std::erase_if(pts, [&](double p) { return !(p > lo && p < hi) || std::isnan(p); });
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Integral integrate_pieces(const std::function<double(double)>& f, double lo, double hi,
                          const std::vector<double>& cuts) {
  Integral total;
  double a = lo;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    const double b = i < cuts.size() ? cuts[i] : hi;
    if (b > a) {
      const Integral piece = integrate(f, a, b);
      total.value += piece.value;
      total.error += piece.error;
    }
    a = b;
  }
  return total;
}

Integral check(Integral r, const QuadratureOptions& opts) {
  if (!std::isfinite(r.value) ||
      r.error > std::max(opts.abs_tol, opts.rel_tol * std::abs(r.value))) {
    throw NumericError("quadrature did not reach tolerance", r.value, r.error);
  }
  return r;
}

Integral lognormal_expectation(double mu, double sigma, const std::function<double(double)>& g,
                               std::span<const double> kinks) {
  std::vector<double> pts;
  for (double z = -kZMax; z <= kZMax; z += 4.0) pts.push_back(z);
  for (double k : kinks) {
    if (k > 0.0 && std::isfinite(k)) pts.push_back((std::log(k) - mu) / sigma);
  }
  const auto cuts = cuts_between(std::move(pts), -kZMax, kZMax);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  auto f = [&](double z) {
    const double w = norm * std::exp(-0.5 * z * z);
    return w == 0.0 ? 0.0 : g(std::exp(mu + sigma * z)) * w;
  };
  return integrate_pieces(f, -kZMax, kZMax, cuts);
}

}  // namespace

Integral integrate(const std::function<double(double)>& f, double a, double b) {
  Integral r;
  if (a == 0.0 && std::isfinite(b)) {
    // Integrands such as s^{2/beta} e^{-s} are not smooth at 0, where the
    // Gauss-Kronrod error estimate is far too pessimistic.
    // One integrator per thread: it extends its abscissa tables lazily.
    thread_local boost::math::quadrature::tanh_sinh<double> ts(15);
    double l1 = 0.0;
    r.value = ts.integrate([&](double x) { return f(x); }, a, b, std::sqrt(std::numeric_limits<double>::epsilon()), &r.error,
                           &l1);
    return r;
  }
  r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, kMaxDepth, kTargetTol, &r.error);
  return r;
}

Integral expectation(const FadingModel& fading, const std::function<double(double)>& g,
                     std::span<const double> kinks, const QuadratureOptions& opts) {
  const auto& v = fading.variant();
  if (const auto* c = std::get_if<ConstantFading>(&v)) {
    return {g(c->value), 0.0};
  }
  if (const auto* e = std::get_if<ExponentialFading>(&v)) {
    std::vector<double> pts{1.0, 5.0, 20.0, 60.0};
    for (double k : kinks) pts.push_back(e->rate * k);
    const auto cuts = cuts_between(std::move(pts), 0.0, kInf);
    auto f = [&](double u) {
      const double w = std::exp(-u);
      return w == 0.0 ? 0.0 : g(u / e->rate) * w;
    };
    return check(integrate_pieces(f, 0.0, kInf, cuts), opts);
  }
  if (const auto* l = std::get_if<LogNormalFading>(&v)) {
    return check(lognormal_expectation(l->mu, l->sigma, g, kinks), opts);
  }
  if (const auto* n = std::get_if<NormalizedLogNormalFading>(&v)) {
    return check(lognormal_expectation(n->mu(), n->sigma(), g, kinks), opts);
  }
  const auto& t = std::get<TabulatedFading>(v);
  const auto vals = t.values();
  const auto cdf = t.cdf_values();
  Integral total{cdf.front() > 0.0 ? cdf.front() * g(vals.front()) : 0.0, 0.0};
  for (std::size_t j = 1; j < vals.size(); ++j) {
    const double mass = cdf[j] - cdf[j - 1];
    if (mass == 0.0) continue;
    const double slope = mass / (vals[j] - vals[j - 1]);
    const auto cuts = cuts_between({kinks.begin(), kinks.end()}, vals[j - 1], vals[j]);
    const Integral piece = integrate_pieces(g, vals[j - 1], vals[j], cuts);
    total.value += slope * piece.value;
    total.error += slope * piece.error;
  }
  return check(total, opts);
}

}  // namespace poisig
