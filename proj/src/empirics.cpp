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

#include "poisig/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <boost/math/special_functions/gamma.hpp>

#include "csv.hpp"
#include "poisig/errors.hpp"
#include "poisig/parallel.hpp"
#include "poisig/random.hpp"

namespace poisig {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kBlock = 256;

void require(bool ok, const char* what) {
  if (!ok) throw ParameterError(what);
}

// Keeps the k smallest values seen, ascending, in buf[0..count).
struct SmallestK {
  double* buf;
  int k;
  int count = 0;

  void push(double v) {
    if (count == k) {
      if (!(v < buf[k - 1])) return;
      --count;
    }
    int i = count++;
    while (i > 0 && buf[i - 1] > v) {
      buf[i] = buf[i - 1];
      --i;
    }
    buf[i] = v;
  }
};

void fill_row(OrderStatMatrix& out, std::size_t r, std::span<const double> h,
              std::span<double> fades, const FadingModel& fading, Rng& rng) {
  fading.sample(rng, fades);
  auto row = out.row(r);
  SmallestK best{row.data(), out.k()};
  for (std::size_t i = 0; i < h.size(); ++i) best.push(h[i] / fades[i]);
  for (int j = best.count; j < out.k(); ++j) row[static_cast<std::size_t>(j)] = kNaN;
  out.set_count(r, best.count);
}

template <typename Replicate>
void for_each_replicate(std::size_t n, Replicate&& replicate) {
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t r = b * kBlock; r < end; ++r) replicate(r);
  });
}

void check_sim_args(int k, std::size_t n) {
  require(k >= 1, "simulate: k must be >= 1");
  require(n >= 1, "simulate: n must be >= 1");
}

}  // namespace

// --- OrderStatMatrix --------------------------------------------------------

OrderStatMatrix::OrderStatMatrix(int k, std::size_t rows)
    : k_(k), data_(static_cast<std::size_t>(k) * rows, kNaN), counts_(rows, 0) {
  require(k >= 1, "order statistics: k must be >= 1");
}

std::span<const double> OrderStatMatrix::row(std::size_t r) const {
  return std::span<const double>(data_).subspan(r * static_cast<std::size_t>(k_),
                                                static_cast<std::size_t>(k_));
}

std::span<double> OrderStatMatrix::row(std::size_t r) {
  return std::span<double>(data_).subspan(r * static_cast<std::size_t>(k_),
                                          static_cast<std::size_t>(k_));
}

std::size_t OrderStatMatrix::partial_rows() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(counts_.begin(), counts_.end(), [this](int c) { return c < k_; }));
}

std::vector<double> OrderStatMatrix::order_statistic(int i) const {
  if (i < 1 || i > k_) throw DomainError("order statistic index out of range");
  std::vector<double> out;
  out.reserve(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    if (counts_[r] >= i) out.push_back(row(r)[static_cast<std::size_t>(i - 1)]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- Simulation -------------------------------------------------------------

OrderStatMatrix simulate_order_stats(const PointPattern& pattern, const PathLossModel& pathloss,
                                     const FadingModel& fading, int k, std::size_t n,
                                     std::uint64_t master_seed) {
  check_sim_args(k, n);
  std::vector<double> h;
  h.reserve(pattern.size());
  for (double r : pattern.radii()) h.push_back(pathloss.h(r));

  OrderStatMatrix out(k, n);
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t b) {
    std::vector<double> fades(h.size());
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t r = b * kBlock; r < end; ++r) {
      Rng rng = make_rng(master_seed, r, 2);
      fill_row(out, r, h, fades, fading, rng);
    }
  });
  return out;
}

OrderStatMatrix simulate_order_stats(const PatternSpec& spec, const PathLossModel& pathloss,
                                     const FadingModel& fading, int k, std::size_t n,
                                     std::uint64_t master_seed) {
  check_sim_args(k, n);
  validate(spec);
  OrderStatMatrix out(k, n);
  for_each_replicate(n, [&](std::size_t r) {
    const PointPattern pattern = generate(spec, derive_seed(master_seed, r, 1));
    std::vector<double> h;
    h.reserve(pattern.size());
    for (double radius : pattern.radii()) h.push_back(pathloss.h(radius));
    std::vector<double> fades(h.size());
    Rng rng = make_rng(master_seed, r, 2);
    fill_row(out, r, h, fades, fading, rng);
  });
  return out;
}

void write_order_stats_csv(std::ostream& out, const OrderStatMatrix& m) {
  out << "replicate,order_index,value,partial\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    const char* flag = m.partial(r) ? "1" : "0";
    for (int j = 0; j < m.k(); ++j) {
      out << r << ',' << (j + 1) << ',';
      if (j < m.count(r)) out << csv::format_real(row[static_cast<std::size_t>(j)]);
      out << ',' << flag << '\n';
    }
  }
}

// --- Distributions and distances ---------------------------------------------

double poisson_order_cdf(double m_t, int k) {
  if (k < 1) throw DomainError("poisson_order_cdf: k must be >= 1");
  if (!(m_t >= 0.0)) throw DomainError("poisson_order_cdf: M(t) must be >= 0");
  if (m_t == 0.0) return 0.0;
  if (std::isinf(m_t)) return 1.0;
  if (k == 1) return -std::expm1(-m_t);
  return boost::math::gamma_p(static_cast<double>(k), m_t);
}

double poisson_order_cdf(const IntensityMeasure& m, int k, double t) {
  return poisson_order_cdf(m.eval(t).value, k);
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_distance: no samples");
  if (!std::is_sorted(samples.begin(), samples.end())) {
    throw DomainError("ks_distance: samples must be ascending");
  }
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, std::abs(above), std::abs(below)});
  }
  return std::min(d, 1.0);
}

double intensity_from_ecdf(double e_hat) {
  if (!(e_hat >= 0.0 && e_hat <= 1.0)) throw DomainError("intensity_from_ecdf: E-hat outside [0, 1]");
  return -std::log1p(-e_hat);
}

EstimatedIntensity estimate_intensity(std::span<const double> min_samples,
                                      std::span<const double> grid) {
  if (min_samples.empty()) throw DomainError("estimate_intensity: no samples");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw DomainError("estimate_intensity: grid must be ascending");
  }
  std::vector<double> sorted(min_samples.begin(), min_samples.end());
  std::sort(sorted.begin(), sorted.end());
  EstimatedIntensity out;
  out.grid.assign(grid.begin(), grid.end());
  out.n_samples = sorted.size();
  const auto n = static_cast<double>(sorted.size());
  for (double t : grid) {
    const auto below = std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
    const double e = static_cast<double>(below) / n;
    out.e_hat.push_back(e);
    if (e < 1.0) {
      out.m_hat.emplace_back(intensity_from_ecdf(e));
      out.censored_above = t;
    } else {
      out.m_hat.emplace_back(std::nullopt);
    }
  }
  return out;
}

double tv_density_estimate(std::span<const double> a, std::span<const double> b, int bins) {
  if (a.empty() || b.empty()) throw DomainError("tv_density_estimate: empty sample set");
  if (bins < 2) throw DomainError("tv_density_estimate: need at least 2 bins");
  const auto [a_lo, a_hi] = std::minmax_element(a.begin(), a.end());
  const auto [b_lo, b_hi] = std::minmax_element(b.begin(), b.end());
  const double lo = std::min(*a_lo, *b_lo);
  const double hi = std::max(*a_hi, *b_hi);
  const auto nb = static_cast<std::size_t>(bins);
  std::vector<double> ha(nb, 0.0);
  std::vector<double> hb(nb, 0.0);
  const double width = (hi - lo) / static_cast<double>(bins);
  auto bin_of = [&](double x) -> std::size_t {
    if (!(width > 0.0)) return 0;
    const auto j = static_cast<std::size_t>((x - lo) / width);
    return std::min(j, nb - 1);
  };
  for (double x : a) ha[bin_of(x)] += 1.0 / static_cast<double>(a.size());
  for (double x : b) hb[bin_of(x)] += 1.0 / static_cast<double>(b.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < nb; ++j) sum += std::abs(ha[j] - hb[j]);
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

// --- Convergence sweeps ---------------------------------------------------------

IntensityMeasure sweep_reference(const SweepConfig& config, double density, double v) {
  const double moment = config.family == SweepFamily::kLogNormalNormalized
                            ? 1.0
                            : FadingModel::exponential(v).moment(2.0 / config.beta);
  return IntensityMeasure(PowerLawStationary{density, config.beta, moment});
}

std::vector<SweepRow> convergence_sweep(const SweepConfig& config) {
  require(!config.v.empty(), "sweep: no v values");
  for (std::size_t i = 0; i < config.v.size(); ++i) {
    require(std::isfinite(config.v[i]) && config.v[i] > 0.0, "sweep: v must be > 0");
    if (i > 0) require(config.v[i] > config.v[i - 1], "sweep: v must be ascending");
  }
  require(config.k >= 1, "sweep: k must be >= 1");
  require(config.n >= 1, "sweep: n must be >= 1");
  const PathLossModel pathloss = PathLossModel::power_law(config.beta);
  validate(config.pattern);
  const PointPattern fixed = generate(config.pattern, derive_seed(config.seed, 0, 3));
  const double density = fixed.density();
  require(density > 0.0, "sweep: pattern must have a known density");

  std::vector<SweepRow> rows;
  for (std::size_t vi = 0; vi < config.v.size(); ++vi) {
    const double v = config.v[vi];
    const FadingModel fading = config.family == SweepFamily::kLogNormalNormalized
                                   ? FadingModel::lognormal_normalized(v, config.beta)
                                   : FadingModel::exponential(v);
    const std::uint64_t seed = derive_seed(config.seed, vi, 4);
    const OrderStatMatrix stats =
        config.regenerate_pattern
            ? simulate_order_stats(config.pattern, pathloss, fading, config.k, config.n, seed)
            : simulate_order_stats(fixed, pathloss, fading, config.k, config.n, seed);
    const IntensityMeasure reference = sweep_reference(config, density, v);
    for (int i = 1; i <= config.k; ++i) {
      const auto samples = stats.order_statistic(i);
      SweepRow row{v, i, std::numeric_limits<double>::quiet_NaN(), samples.size()};
      if (!samples.empty()) {
        row.ks = ks_distance(samples,
                             [&](double t) { return poisson_order_cdf(reference, i, t); });
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "v,order_index,ks,n\n";
  for (const auto& r : rows) {
    out << csv::format_real(r.v) << ',' << r.order_index << ',';
    if (!std::isnan(r.ks)) out << csv::format_real(r.ks);
    out << ',' << r.n << '\n';
  }
}

}  // namespace poisig
