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

#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string_view>
#include <utility>
#include <vector>

#include "handles.hpp"
#include "json.hpp"

namespace poisig::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Seed lanes for the streams the runner derives from the config seed.
constexpr std::uint64_t kPatternLane = 10;
constexpr std::uint64_t kMonteCarloLane = 11;
constexpr std::uint64_t kEstimateLane = 12;

// ---- output

std::string format_real(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class CsvFile {
 public:
  CsvFile(const fs::path& path, std::string_view header) : path_(path) {
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw OutputError("cannot open " + path.string() + " for writing");
    out_ << header << '\n';
  }

  void row(std::initializer_list<std::string> fields) {
    bool first = true;
    for (const auto& f : fields) {
      if (!first) out_ << ',';
      out_ << f;
      first = false;
    }
    out_ << '\n';
    ++rows_;
  }

  std::size_t close() {
    out_.flush();
    if (!out_) throw OutputError("write failed: " + path_.string());
    out_.close();
    return rows_;
  }

 private:
  fs::path path_;
  std::ofstream out_;
  std::size_t rows_ = 0;
};

struct Manifest {
  ordered_json outputs = ordered_json::array();
  ordered_json results = ordered_json::object();

  void add_output(const fs::path& file, std::size_t rows) {
    outputs.push_back({{"file", file.filename().string()}, {"rows", rows}});
  }
};

// ---- model construction

// Model parameters the config parser cannot check are rejected by the
// library; report those against the config section that produced them.
class Builder {
 public:
  explicit Builder(const ParsedConfig& parsed)
      : parsed_(parsed), root_("/" + std::string(command_name(parsed.config))) {}

  template <class F>
  auto anchored(std::string_view key, F&& f) const {
    try {
      return f();
    } catch (const ApiError& e) {
      if (e.status() == POISIG_ERR_PARAMETER || e.status() == POISIG_ERR_DOMAIN ||
          e.status() == POISIG_ERR_CAPACITY) {
        const std::string pointer = root_ + "/" + std::string(key);
        throw ConfigError(std::string(key) + ": " + e.what(), parsed_.line_of(pointer));
      }
      throw;
    }
  }

  SpecHandle spec(const PatternDesc& d) const {
    return anchored("pattern", [&] {
      return std::visit(
          [&](const auto& p) -> SpecHandle {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PoissonDiskDesc>) {
              return make_handle<SpecHandle>(
                  [&](auto** o) { return poisig_spec_poisson_disk(p.density, p.radius, o); });
            } else if constexpr (std::is_same_v<T, SquareLatticeDesc>) {
              return make_handle<SpecHandle>([&](auto** o) {
                return poisig_spec_square_lattice(p.spacing, p.radius, p.offset[0], p.offset[1], o);
              });
            } else if constexpr (std::is_same_v<T, HexLatticeDesc>) {
              return make_handle<SpecHandle>([&](auto** o) {
                return poisig_spec_hex_lattice(p.spacing, p.radius, p.offset[0], p.offset[1], o);
              });
            } else if constexpr (std::is_same_v<T, PerturbedLatticeDesc>) {
              return make_handle<SpecHandle>([&](auto** o) {
                return poisig_spec_perturbed_lattice(p.spacing, p.radius, p.jitter, o);
              });
            } else if constexpr (std::is_same_v<T, ExplicitDesc>) {
              std::vector<double> xs, ys;
              for (const auto& xy : p.points) {
                xs.push_back(xy[0]);
                ys.push_back(xy[1]);
              }
              return make_handle<SpecHandle>([&](auto** o) {
                return poisig_spec_explicit(xs.data(), ys.data(), xs.size(), o);
              });
            } else {
              throw ApiError(POISIG_ERR_PARAMETER,
                             "a csv pattern is a fixed realization and cannot be regenerated");
            }
          },
          d);
    });
  }

  PatternHandle pattern(const PatternDesc& d, std::uint64_t seed) const {
    if (const auto* csv = std::get_if<CsvPatternDesc>(&d)) {
      return anchored("pattern", [&] {
        return make_handle<PatternHandle>(
            [&](auto** o) { return poisig_pattern_read_csv(csv->path.c_str(), o); });
      });
    }
    const SpecHandle s = spec(d);
    return anchored("pattern", [&] {
      return make_handle<PatternHandle>(
          [&](auto** o) { return poisig_pattern_generate(s.get(), seed, o); });
    });
  }

  PathLossHandle pathloss(const PathLossDesc& d) const {
    return anchored("pathloss", [&] {
      return std::visit(
          [&](const auto& p) -> PathLossHandle {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PowerLawDesc>) {
              return make_handle<PathLossHandle>(
                  [&](auto** o) { return poisig_pathloss_power_law(p.beta, o); });
            } else if constexpr (std::is_same_v<T, ExponentialPathLossDesc>) {
              return make_handle<PathLossHandle>(
                  [&](auto** o) { return poisig_pathloss_exponential(p.beta, o); });
            } else {
              return make_handle<PathLossHandle>([&](auto** o) {
                return poisig_pathloss_multi_slope(p.breakpoints.data(), p.breakpoints.size(),
                                                   p.exponents.data(), p.b1, o);
              });
            }
          },
          d);
    });
  }

  FadingHandle fading(const FadingDesc& d) const {
    return anchored("fading", [&] {
      return std::visit(
          [&](const auto& p) -> FadingHandle {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ConstantFadingDesc>) {
              return make_handle<FadingHandle>(
                  [&](auto** o) { return poisig_fading_constant(p.value, o); });
            } else if constexpr (std::is_same_v<T, ExponentialFadingDesc>) {
              return make_handle<FadingHandle>(
                  [&](auto** o) { return poisig_fading_exponential(p.rate, o); });
            } else if constexpr (std::is_same_v<T, LogNormalDesc>) {
              return make_handle<FadingHandle>(
                  [&](auto** o) { return poisig_fading_lognormal(p.mu, p.sigma, o); });
            } else if constexpr (std::is_same_v<T, LogNormalNormalizedDesc>) {
              return make_handle<FadingHandle>(
                  [&](auto** o) { return poisig_fading_lognormal_normalized(p.v, p.beta, o); });
            } else {
              return make_handle<FadingHandle>([&](auto** o) {
                return poisig_fading_tabulated(p.values.data(), p.cdf.data(), p.values.size(), o);
              });
            }
          },
          d);
    });
  }

 private:
  const ParsedConfig& parsed_;
  std::string root_;
};

// Closed-form stationary M(t) at the pattern's density, where one exists.
class AnalyticMeasure {
 public:
  AnalyticMeasure(double density, const PathLossDesc& pl_desc, const poisig_pathloss* pl,
                  const poisig_fading* fading)
      : density_(density), pl_(pl), fading_(fading) {
    if (!(density > 0.0)) return;
    if (const auto* p = std::get_if<PowerLawDesc>(&pl_desc)) {
      kind_ = Kind::kPowerLaw;
      beta_ = p->beta;
      double moment = 0.0;
      check(poisig_moment_frac(fading, 2.0 / p->beta, &moment));
      power_ = make_handle<IntensityHandle>(
          [&](auto** o) { return poisig_intensity_power_law(density, p->beta, moment, o); });
    } else if (const auto* e = std::get_if<ExponentialPathLossDesc>(&pl_desc)) {
      kind_ = Kind::kExponential;
      beta_ = e->beta;
    } else {
      kind_ = Kind::kMultiSlope;
    }
  }

  bool available() const { return kind_ != Kind::kNone; }

  double operator()(double t) const {
    double v = kNaN;
    switch (kind_) {
      case Kind::kNone:
        break;
      case Kind::kPowerLaw:
        check(poisig_intensity_eval(power_.get(), t, &v, nullptr));
        break;
      case Kind::kExponential:
        check(poisig_exponential_pl_intensity(density_, beta_, fading_, t, &v, nullptr, nullptr));
        break;
      case Kind::kMultiSlope:
        check(poisig_multislope_intensity(density_, pl_, fading_, t, &v));
        break;
    }
    return v;
  }

 private:
  enum class Kind { kNone, kPowerLaw, kExponential, kMultiSlope };
  Kind kind_ = Kind::kNone;
  double density_;
  double beta_ = 0.0;
  const poisig_pathloss* pl_;
  const poisig_fading* fading_;
  IntensityHandle power_;
};

// ---- subcommands

void run_intensity(const ParsedConfig& parsed, const IntensityConfig& c, const fs::path& dir,
                   Manifest& manifest) {
  const Builder b(parsed);
  const std::uint64_t seed = *c.seed;
  const auto pattern = b.pattern(c.pattern, poisig_derive_seed(seed, 0, kPatternLane));
  const auto pl = b.pathloss(c.pathloss);
  const auto fading = b.fading(c.fading);

  const AnalyticMeasure analytic(poisig_pattern_density(pattern.get()), c.pathloss, pl.get(),
                                 fading.get());
  const auto mc = b.anchored("n_mc", [&] {
    return make_handle<IntensityHandle>([&](auto** o) {
      return poisig_intensity_pattern(pattern.get(), pl.get(), fading.get(), c.n_mc,
                                      poisig_derive_seed(seed, 0, kMonteCarloLane),
                                      c.observer_jitter, o);
    });
  });

  const fs::path file = dir / "intensity.csv";
  CsvFile csv(file, "t,M_analytic,M_mc,M_mc_se");
  for (double t : c.t_grid) {
    double m = 0.0;
    double se = 0.0;
    check(poisig_intensity_eval(mc.get(), t, &m, &se));
    csv.row({format_real(t), format_real(analytic(t)), format_real(m), format_real(se)});
  }
  manifest.add_output(file, csv.close());
  manifest.results["transmitters"] = poisig_pattern_size(pattern.get());
  manifest.results["pattern_density"] = poisig_pattern_density(pattern.get());
  manifest.results["analytic_available"] = analytic.available();
}

void run_bounds(const ParsedConfig& parsed, const BoundsConfig& c, const fs::path& dir,
                Manifest& manifest) {
  const Builder b(parsed);
  const std::uint64_t seed = *c.seed;
  const auto pattern = b.pattern(c.pattern, poisig_derive_seed(seed, 0, kPatternLane));
  const auto pl = b.pathloss(c.pathloss);
  const auto fading = b.fading(c.fading);
  const std::size_t size = poisig_pattern_size(pattern.get());
  // The oracle is exact but quadratic; past its capacity the column is empty.
  const bool with_tv = c.count_tv && size <= 10000;

  const fs::path file = dir / "bounds.csv";
  CsvFile csv(file, "tau,M_tau,lower,upper,upper_coarse,count_tv,theorem3_total");
  for (double tau : c.tau_grid) {
    poisig_tv_bounds t1{};
    poisig_order_stat_bound t3{};
    check(poisig_theorem1_bounds(pattern.get(), pl.get(), fading.get(), tau, &t1));
    check(poisig_theorem3_bound(pattern.get(), pl.get(), fading.get(), tau, c.k, &t3));
    double tv = kNaN;
    if (with_tv) check(poisig_count_tv_oracle(pattern.get(), pl.get(), fading.get(), tau, &tv));
    csv.row({format_real(tau), format_real(t1.m_tau), format_real(t1.lower),
             format_real(t1.upper), format_real(t1.upper_coarse), format_real(tv),
             format_real(t3.total)});
  }
  manifest.add_output(file, csv.close());

  poisig_order_stat_bound best{};
  check(poisig_optimize_theorem3_tau(pattern.get(), pl.get(), fading.get(), c.k,
                                     c.tau_grid.data(), c.tau_grid.size(), &best));
  manifest.results["transmitters"] = size;
  manifest.results["k"] = c.k;
  manifest.results["theorem3_best_tau"] = best.tau;
  manifest.results["theorem3_best_total"] = best.total;
  manifest.results["count_tv_computed"] = with_tv;
}

OrderStatsHandle simulate(const Builder& b, const PatternDesc& pattern_desc, bool regenerate,
                          const poisig_pathloss* pl, const poisig_fading* fading, int k,
                          std::size_t n, std::uint64_t master, std::uint64_t pattern_seed,
                          const fs::path& dir, Manifest& manifest, bool write_pattern) {
  if (regenerate) {
    const auto spec = b.spec(pattern_desc);
    return b.anchored("n", [&] {
      return make_handle<OrderStatsHandle>([&](auto** o) {
        return poisig_simulate_random(spec.get(), pl, fading, k, n, master, o);
      });
    });
  }
  const auto pattern = b.pattern(pattern_desc, pattern_seed);
  if (write_pattern) {
    const fs::path file = dir / "pattern.csv";
    const poisig_status s = poisig_pattern_write_csv(pattern.get(), file.string().c_str());
    if (s != POISIG_OK) throw OutputError(poisig_last_error());
    manifest.add_output(file, poisig_pattern_size(pattern.get()));
  }
  manifest.results["transmitters"] = poisig_pattern_size(pattern.get());
  return b.anchored("n", [&] {
    return make_handle<OrderStatsHandle>([&](auto** o) {
      return poisig_simulate_fixed(pattern.get(), pl, fading, k, n, master, o);
    });
  });
}

void run_simulate(const ParsedConfig& parsed, const SimulateConfig& c, const fs::path& dir,
                  Manifest& manifest) {
  const Builder b(parsed);
  const std::uint64_t seed = *c.seed;
  const auto pl = b.pathloss(c.pathloss);
  const auto fading = b.fading(c.fading);
  const auto stats = simulate(b, c.pattern, c.regenerate_pattern, pl.get(), fading.get(), c.k,
                              c.n, seed, poisig_derive_seed(seed, 0, kPatternLane), dir, manifest,
                              true);
  const fs::path file = dir / "order_stats.csv";
  const poisig_status s = poisig_order_stats_write_csv(stats.get(), file.string().c_str());
  if (s != POISIG_OK) throw OutputError(poisig_last_error());
  manifest.add_output(file, c.n * static_cast<std::size_t>(c.k));
  manifest.results["partial_rows"] = poisig_order_stats_partial_rows(stats.get());
}

std::vector<double> read_samples(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiError(POISIG_ERR_IO, "cannot read samples file " + path);
  std::vector<double> out;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    const std::string field = line.substr(0, comma);
    char* end = nullptr;
    const double x = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0') {
      if (line_no == 1) continue;  // header
      throw ApiError(POISIG_ERR_IO, path + ":" + std::to_string(line_no) + ": not a number");
    }
    if (!(x > 0.0)) {
      throw ApiError(POISIG_ERR_IO, path + ":" + std::to_string(line_no) + ": minima must be > 0");
    }
    out.push_back(x);
  }
  if (out.empty()) throw ApiError(POISIG_ERR_IO, "no samples in " + path);
  return out;
}

void run_estimate(const ParsedConfig& parsed, const EstimateConfig& c, const fs::path& dir,
                  Manifest& manifest) {
  const Builder b(parsed);
  const std::uint64_t seed = *c.seed;
  std::vector<double> minima;
  std::optional<AnalyticMeasure> analytic;
  PathLossHandle pl;
  FadingHandle fading;
  if (c.samples_path) {
    minima = read_samples(*c.samples_path);
  } else {
    pl = b.pathloss(*c.pathloss);
    fading = b.fading(*c.fading);
    const auto stats = simulate(b, *c.pattern, c.regenerate_pattern, pl.get(), fading.get(), 1,
                                *c.n, poisig_derive_seed(seed, 0, kEstimateLane),
                                poisig_derive_seed(seed, 0, kPatternLane), dir, manifest, false);
    const std::size_t rows = poisig_order_stats_rows(stats.get());
    size_t count = 0;
    minima.resize(rows);
    check(poisig_order_stats_column(stats.get(), 1, minima.data(), minima.size(), &count));
    // A replicate with no transmitter sees no signal at any level.
    minima.resize(count);
    minima.resize(rows, std::numeric_limits<double>::infinity());

    double density = 0.0;
    if (std::holds_alternative<PoissonDiskDesc>(*c.pattern)) {
      density = std::get<PoissonDiskDesc>(*c.pattern).density;
    } else if (!std::holds_alternative<CsvPatternDesc>(*c.pattern) &&
               !std::holds_alternative<ExplicitDesc>(*c.pattern)) {
      const auto p = b.pattern(*c.pattern, poisig_derive_seed(seed, 0, kPatternLane));
      density = poisig_pattern_density(p.get());
    }
    analytic.emplace(density, *c.pathloss, pl.get(), fading.get());
  }

  std::vector<double> e_hat(c.t_grid.size());
  std::vector<double> m_hat(c.t_grid.size());
  double censored_above = kNaN;
  check(poisig_estimate_intensity(minima.data(), minima.size(), c.t_grid.data(), c.t_grid.size(),
                                  e_hat.data(), m_hat.data(), &censored_above));

  const fs::path file = dir / "estimate.csv";
  CsvFile csv(file, "t,E_hat,M_hat,M_analytic");
  for (std::size_t j = 0; j < c.t_grid.size(); ++j) {
    const double ref = analytic ? (*analytic)(c.t_grid[j]) : kNaN;
    csv.row({format_real(c.t_grid[j]), format_real(e_hat[j]), format_real(m_hat[j]),
             format_real(ref)});
  }
  manifest.add_output(file, csv.close());
  manifest.results["n_samples"] = minima.size();
  if (std::isnan(censored_above)) {
    manifest.results["censored_above"] = nullptr;
  } else {
    manifest.results["censored_above"] = censored_above;
  }
}

void run_sweep(const ParsedConfig& parsed, const SweepConfig& c, const fs::path& dir,
               Manifest& manifest) {
  const Builder b(parsed);
  const auto spec = b.spec(c.pattern);
  std::vector<poisig_sweep_row> rows(c.v.size() * static_cast<std::size_t>(c.k));
  b.anchored("v", [&] {
    check(poisig_convergence_sweep(
        spec.get(), c.regenerate_pattern ? 1 : 0, c.beta,
        c.family == SweepFamily::kRayleigh ? POISIG_SWEEP_RAYLEIGH : POISIG_SWEEP_LOGNORMAL,
        c.v.data(), c.v.size(), c.k, c.n, *c.seed, rows.data(), rows.size()));
    return 0;
  });
  const fs::path file = dir / "sweep.csv";
  CsvFile csv(file, "v,order_index,ks,n");
  for (const auto& r : rows) {
    csv.row({format_real(r.v), std::to_string(r.order_index), format_real(r.ks),
             std::to_string(r.n)});
  }
  manifest.add_output(file, csv.close());
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void run_experiment(const ParsedConfig& parsed, const RunOptions& options) {
  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec) throw OutputError("cannot create " + options.out_dir.string() + ": " + ec.message());
  poisig_set_threads(options.threads);

  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  Manifest manifest;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, IntensityConfig>) {
          run_intensity(parsed, c, options.out_dir, manifest);
        } else if constexpr (std::is_same_v<T, BoundsConfig>) {
          run_bounds(parsed, c, options.out_dir, manifest);
        } else if constexpr (std::is_same_v<T, SimulateConfig>) {
          run_simulate(parsed, c, options.out_dir, manifest);
        } else if constexpr (std::is_same_v<T, EstimateConfig>) {
          run_estimate(parsed, c, options.out_dir, manifest);
        } else {
          run_sweep(parsed, c, options.out_dir, manifest);
        }
      },
      parsed.config);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  ordered_json m;
  m["tool"] = "poisig";
  m["version"] = poisig_version();
  m["subcommand"] = command_name(parsed.config);
  m["seed"] = std::visit([](const auto& c) { return *c.seed; }, parsed.config);
  m["threads"] = options.threads;
  m["compiler"] = __VERSION__;
  m["started_utc"] = started;
  m["wall_time_seconds"] = wall;
  m["config"] = to_json(parsed.config);
  m["outputs"] = manifest.outputs;
  m["results"] = manifest.results;

  const fs::path path = options.out_dir / "run_manifest.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out << m.dump(2) << '\n';
  out.flush();
  if (!out) throw OutputError("write failed: " + path.string());
}

}  // namespace poisig::cli
