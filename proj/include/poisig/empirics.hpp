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

#ifndef POISIG_EMPIRICS_HPP_
#define POISIG_EMPIRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "poisig/intensity.hpp"
#include "poisig/pointpattern.hpp"
#include "poisig/propagation.hpp"

namespace poisig {

// n replicates of the k smallest inverse powers V_(1) <= ... <= V_(k).
// A replicate with fewer than k signals keeps what it has; the missing
// entries are NaN and the row is flagged partial.
class OrderStatMatrix {
 public:
  OrderStatMatrix(int k, std::size_t rows);

  int k() const noexcept { return k_; }
  std::size_t rows() const noexcept { return counts_.size(); }

  std::span<const double> row(std::size_t r) const;
  std::span<double> row(std::size_t r);
  // Number of order statistics present in row r.
  int count(std::size_t r) const { return counts_.at(r); }
  void set_count(std::size_t r, int c) { counts_.at(r) = c; }
  bool partial(std::size_t r) const { return counts_.at(r) < k_; }
  std::size_t partial_rows() const noexcept;

  // Sorted values of V_(i), 1 <= i <= k, over rows that have it.
  std::vector<double> order_statistic(int i) const;

 private:
  int k_;
  std::vector<double> data_;
  std::vector<int> counts_;
};

// Fixed transmitters: the same pattern in every replicate.
OrderStatMatrix simulate_order_stats(const PointPattern& pattern, const PathLossModel& pathloss,
                                     const FadingModel& fading, int k, std::size_t n,
                                     std::uint64_t master_seed);

// Random transmitters: the spec is regenerated for every replicate.
OrderStatMatrix simulate_order_stats(const PatternSpec& spec, const PathLossModel& pathloss,
                                     const FadingModel& fading, int k, std::size_t n,
                                     std::uint64_t master_seed);

// CSV `replicate,order_index,value,partial`; k lines per replicate, missing
// values left empty.
void write_order_stats_csv(std::ostream& out, const OrderStatMatrix& m);

// P(Y_(k) <= t) = P(Poisson(M(t)) >= k) for a Poisson process with mean
// measure M.
double poisson_order_cdf(double m_t, int k);
double poisson_order_cdf(const IntensityMeasure& m, int k, double t);

// sup_i max(|i/n - F(x_i)|, |(i-1)/n - F(x_i)|). samples must be nonempty
// and ascending.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

// M-hat = -log(1 - E-hat), computed as -log1p(-E-hat).
double intensity_from_ecdf(double e_hat);

struct EstimatedIntensity {
  std::vector<double> grid;
  std::vector<double> e_hat;
  // Empty where E-hat = 1.
  std::vector<std::optional<double>> m_hat;
  std::size_t n_samples = 0;
  // Largest grid point with E-hat < 1; empty if there is none.
  std::optional<double> censored_above;
};

// Fits M from observed minima V_(1) via M-hat(t) = -log(1 - E-hat(t)).
EstimatedIntensity estimate_intensity(std::span<const double> min_samples,
                                      std::span<const double> grid);

// Half the L1 distance between histograms of a and b on `bins` equal-width
// bins spanning the union of both ranges.
double tv_density_estimate(std::span<const double> a, std::span<const double> b, int bins);

enum class SweepFamily {
  // S(v) = exp(v B - v^2 / beta); compared against the limit L(t) = lambda pi t^{2/beta}.
  kLogNormalNormalized,
  // S(v) exponential with mean 1/v; compared against M^(v) since no limit exists.
  kRayleigh,
};

struct SweepConfig {
  PatternSpec pattern;
  // Regenerate the pattern per replicate instead of fixing one realization.
  bool regenerate_pattern = false;
  double beta = 4.0;  // power-law path loss
  SweepFamily family = SweepFamily::kLogNormalNormalized;
  std::vector<double> v;
  int k = 1;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
};

struct SweepRow {
  double v = 0.0;
  int order_index = 1;
  double ks = 0.0;
  std::size_t n = 0;  // replicates that had this order statistic
};

std::vector<SweepRow> convergence_sweep(const SweepConfig& config);

// Poisson reference measure used by the sweep for parameter v.
IntensityMeasure sweep_reference(const SweepConfig& config, double density, double v);

// CSV `v,order_index,ks,n`.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace poisig

#endif  // POISIG_EMPIRICS_HPP_
