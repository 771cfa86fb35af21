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

#include "poisig/poissonbounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "poisig/errors.hpp"

namespace poisig {
namespace {

void require_tau(double tau) {
  if (!(tau > 0.0) || std::isnan(tau)) throw DomainError("bounds: tau must be > 0");
}

void require_k(int k) {
  if (k < 1) throw DomainError("bounds: k must be >= 1");
}

}  // namespace

std::vector<double> signal_probabilities(const PointPattern& pattern,
                                         const PathLossModel& pathloss,
                                         const FadingModel& fading, double tau) {
  require_tau(tau);
  std::vector<double> p;
  p.reserve(pattern.size());
  for (double r : pattern.radii()) p.push_back(signal_cdf(pathloss, fading, r, tau));
  return p;
}

double poisson_lower_tail(double m, int k) {
  require_k(k);
  if (m == 0.0) return 1.0;
  // Terms in log space so large m does not underflow e^-m before scaling.
  const double log_m = std::log(m);
  double sum = 0.0;
  for (int j = 0; j < k; ++j) {
    sum += std::exp(-m + j * log_m - std::lgamma(j + 1.0));
  }
  return std::min(sum, 1.0);
}

TvBounds theorem1_bounds(std::span<const double> p, double tau) {
  require_tau(tau);
  TvBounds b;
  b.tau = tau;
  for (double pi : p) {
    b.m_tau += pi;
    b.sum_p_sq += pi * pi;
    b.max_p = std::max(b.max_p, pi);
  }
  const double factor = b.m_tau > 1.0 ? 1.0 / b.m_tau : 1.0;
  b.lower = factor * b.sum_p_sq / 32.0;
  b.upper = b.sum_p_sq;
  b.upper_coarse = b.m_tau * b.max_p;
  return b;
}

TvBounds theorem1_bounds(const PointPattern& pattern, const PathLossModel& pathloss,
                         const FadingModel& fading, double tau) {
  // max_p is a scan, not the nearest transmitter: with tabulated fading and
  // multi-slope h the nearest one need not dominate.
  return theorem1_bounds(signal_probabilities(pattern, pathloss, fading, tau), tau);
}

OrderStatBound theorem3_bound(std::span<const double> p, double tau, int k) {
  require_tau(tau);
  require_k(k);
  OrderStatBound b;
  b.tau = tau;
  b.k = k;
  for (double pi : p) {
    b.m_tau += pi;
    b.sum_p_sq += pi * pi;
  }
  b.poisson_tail = poisson_lower_tail(b.m_tau, k);
  b.total = b.sum_p_sq + b.poisson_tail;
  return b;
}

OrderStatBound theorem3_bound(const PointPattern& pattern, const PathLossModel& pathloss,
                              const FadingModel& fading, double tau, int k) {
  return theorem3_bound(signal_probabilities(pattern, pathloss, fading, tau), tau, k);
}

std::pair<double, OrderStatBound> optimize_theorem3_tau(const PointPattern& pattern,
                                                        const PathLossModel& pathloss,
                                                        const FadingModel& fading, int k,
                                                        std::span<const double> tau_grid) {
  if (tau_grid.empty()) throw DomainError("optimize: empty tau grid");
  for (std::size_t i = 1; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > tau_grid[i - 1])) throw DomainError("optimize: tau grid must increase");
  }
  OrderStatBound best = theorem3_bound(pattern, pathloss, fading, tau_grid[0], k);
  for (std::size_t i = 1; i < tau_grid.size(); ++i) {
    const OrderStatBound b = theorem3_bound(pattern, pathloss, fading, tau_grid[i], k);
    if (b.total < best.total) best = b;
  }
  return {best.tau, best};
}

std::vector<double> poisson_binomial_pmf(std::span<const double> p) {
  std::vector<double> pmf(p.size() + 1, 0.0);
  pmf[0] = 1.0;
  std::size_t n = 0;
  for (double q : p) {
    // Convolve with Bernoulli(q), updating in place from the top down.
    ++n;
    pmf[n] = pmf[n - 1] * q;
    for (std::size_t j = n - 1; j > 0; --j) pmf[j] = pmf[j] * (1.0 - q) + pmf[j - 1] * q;
    pmf[0] *= 1.0 - q;
  }
  return pmf;
}

double count_tv(std::span<const double> p) {
  if (p.size() > kCountTvCapacity) {
    throw CapacityError("count_tv: more than " + std::to_string(kCountTvCapacity) +
                        " transmitters");
  }
  const auto pb = poisson_binomial_pmf(p);
  double mean = 0.0;
  for (double q : p) mean += q;

  double tv2 = 0.0;
  double cumulative = 0.0;
  const double log_mean = mean > 0.0 ? std::log(mean) : 0.0;
  // Hard stop far past the mode in case rounding keeps the sum below 1 - 1e-12.
  const auto j_max = static_cast<std::size_t>(mean + 50.0 * std::sqrt(mean) + 100.0);
  for (std::size_t j = 0;; ++j) {
    double po = 0.0;
    if (mean == 0.0) {
      po = j == 0 ? 1.0 : 0.0;
    } else {
      const double jd = static_cast<double>(j);
      po = std::exp(-mean + jd * log_mean - std::lgamma(jd + 1.0));
    }
    const double b = j < pb.size() ? pb[j] : 0.0;
    tv2 += std::abs(b - po);
    cumulative += po;
    if (j + 1 >= pb.size() && (cumulative > 1.0 - 1e-12 || j >= j_max)) break;
  }
  tv2 += std::max(0.0, 1.0 - cumulative);
  return 0.5 * tv2;
}

double count_tv_oracle(const PointPattern& pattern, const PathLossModel& pathloss,
                       const FadingModel& fading, double tau) {
  if (pattern.size() > kCountTvCapacity) {
    throw CapacityError("count_tv_oracle: more than " + std::to_string(kCountTvCapacity) +
                        " transmitters");
  }
  return count_tv(signal_probabilities(pattern, pathloss, fading, tau));
}

}  // namespace poisig
