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

#ifndef POISIG_POISSONBOUNDS_HPP_
#define POISIG_POISSONBOUNDS_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "poisig/pointpattern.hpp"
#include "poisig/propagation.hpp"

namespace poisig {

// Total-variation bounds between the propagation process and the Poisson
// process with the same mean measure, both restricted to (0, tau]:
//
//   lower = min(1, 1/M(tau)) * sum p_i^2 / 32
//   upper = sum p_i^2
//   upper_coarse = M(tau) * max p_i
struct TvBounds {
  double tau = 0.0;
  double m_tau = 0.0;
  double sum_p_sq = 0.0;
  double max_p = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double upper_coarse = 0.0;
};

// Bound on the TV distance between the first k order statistics of the
// propagation process and of the matching Poisson process:
//   total = sum p_i(tau)^2 + P(Poisson(M(tau)) <= k - 1).
struct OrderStatBound {
  double tau = 0.0;
  int k = 1;
  double m_tau = 0.0;
  double sum_p_sq = 0.0;
  double poisson_tail = 0.0;
  double total = 0.0;
};

// p_i(tau) for every transmitter, in canonical order.
std::vector<double> signal_probabilities(const PointPattern& pattern,
                                         const PathLossModel& pathloss,
                                         const FadingModel& fading, double tau);

// sum_{j < k} e^{-m} m^j / j!.
double poisson_lower_tail(double m, int k);

TvBounds theorem1_bounds(std::span<const double> p, double tau);
TvBounds theorem1_bounds(const PointPattern& pattern, const PathLossModel& pathloss,
                         const FadingModel& fading, double tau);

OrderStatBound theorem3_bound(std::span<const double> p, double tau, int k);
OrderStatBound theorem3_bound(const PointPattern& pattern, const PathLossModel& pathloss,
                              const FadingModel& fading, double tau, int k);

// Grid point minimizing the order-statistic bound; ties go to the smaller tau.
std::pair<double, OrderStatBound> optimize_theorem3_tau(const PointPattern& pattern,
                                                        const PathLossModel& pathloss,
                                                        const FadingModel& fading, int k,
                                                        std::span<const double> tau_grid);

inline constexpr std::size_t kCountTvCapacity = 10000;

// Exact TV distance between the Poisson-binomial law with parameters p and
// Poisson(sum p). The Poisson PMF is cut once its cumulative mass exceeds
// 1 - 1e-12; the cut tail is added back as mismatch. Throws CapacityError
// for more than kCountTvCapacity parameters.
double count_tv(std::span<const double> p);
double count_tv_oracle(const PointPattern& pattern, const PathLossModel& pathloss,
                       const FadingModel& fading, double tau);

// PMF of a sum of independent Bernoulli(p_i), by repeated convolution.
std::vector<double> poisson_binomial_pmf(std::span<const double> p);

}  // namespace poisig

#endif  // POISIG_POISSONBOUNDS_HPP_
