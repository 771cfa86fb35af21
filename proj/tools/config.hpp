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

// Experiment configuration for the command-line runner.
//
// A config file is one JSON object with a single key naming the subcommand:
//
//   {"intensity": {"pattern": {...}, "pathloss": {...}, "fading": {...},
//                  "t_grid": [0.5, 1, 2], "seed": 7}}
//
// Unknown keys are errors. Errors carry the 1-based line of the offending
// key or value.

#ifndef POISIG_TOOLS_CONFIG_HPP_
#define POISIG_TOOLS_CONFIG_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace poisig::cli {

class ConfigError : public std::runtime_error {
 public:
  // line 0 means no position is known.
  ConfigError(const std::string& message, int line);
  int line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  int line_;
};

// ---- model descriptions

struct PoissonDiskDesc {
  double density = 0.0;
  double radius = 0.0;
  friend bool operator==(const PoissonDiskDesc&, const PoissonDiskDesc&) = default;
};
struct SquareLatticeDesc {
  double spacing = 0.0;
  double radius = 0.0;
  std::array<double, 2> offset{0.0, 0.0};
  friend bool operator==(const SquareLatticeDesc&, const SquareLatticeDesc&) = default;
};
struct HexLatticeDesc {
  double spacing = 0.0;
  double radius = 0.0;
  std::array<double, 2> offset{0.0, 0.0};
  friend bool operator==(const HexLatticeDesc&, const HexLatticeDesc&) = default;
};
struct PerturbedLatticeDesc {
  double spacing = 0.0;
  double radius = 0.0;
  double jitter = 0.0;
  friend bool operator==(const PerturbedLatticeDesc&, const PerturbedLatticeDesc&) = default;
};
struct ExplicitDesc {
  std::vector<std::array<double, 2>> points;
  friend bool operator==(const ExplicitDesc&, const ExplicitDesc&) = default;
};
// Points read from an `x,y` CSV file.
struct CsvPatternDesc {
  std::string path;
  friend bool operator==(const CsvPatternDesc&, const CsvPatternDesc&) = default;
};
using PatternDesc = std::variant<PoissonDiskDesc, SquareLatticeDesc, HexLatticeDesc,
                                 PerturbedLatticeDesc, ExplicitDesc, CsvPatternDesc>;

struct PowerLawDesc {
  double beta = 0.0;
  friend bool operator==(const PowerLawDesc&, const PowerLawDesc&) = default;
};
struct ExponentialPathLossDesc {
  double beta = 0.0;
  friend bool operator==(const ExponentialPathLossDesc&, const ExponentialPathLossDesc&) = default;
};
struct MultiSlopeDesc {
  std::vector<double> breakpoints;
  std::vector<double> exponents;
  double b1 = 1.0;
  friend bool operator==(const MultiSlopeDesc&, const MultiSlopeDesc&) = default;
};
using PathLossDesc = std::variant<PowerLawDesc, ExponentialPathLossDesc, MultiSlopeDesc>;

struct ConstantFadingDesc {
  double value = 1.0;
  friend bool operator==(const ConstantFadingDesc&, const ConstantFadingDesc&) = default;
};
struct ExponentialFadingDesc {
  double rate = 1.0;
  friend bool operator==(const ExponentialFadingDesc&, const ExponentialFadingDesc&) = default;
};
struct LogNormalDesc {
  double mu = 0.0;
  double sigma = 1.0;
  friend bool operator==(const LogNormalDesc&, const LogNormalDesc&) = default;
};
struct LogNormalNormalizedDesc {
  double v = 1.0;
  double beta = 4.0;
  friend bool operator==(const LogNormalNormalizedDesc&, const LogNormalNormalizedDesc&) = default;
};
struct TabulatedDesc {
  std::vector<double> values;
  std::vector<double> cdf;
  friend bool operator==(const TabulatedDesc&, const TabulatedDesc&) = default;
};
using FadingDesc = std::variant<ConstantFadingDesc, ExponentialFadingDesc, LogNormalDesc,
                                LogNormalNormalizedDesc, TabulatedDesc>;

// ---- subcommands

struct IntensityConfig {
  PatternDesc pattern;
  PathLossDesc pathloss;
  FadingDesc fading;
  std::vector<double> t_grid;
  std::uint64_t n_mc = 100000;
  // Observer displacement half-width for the Monte Carlo column.
  double observer_jitter = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_path;
  friend bool operator==(const IntensityConfig&, const IntensityConfig&) = default;
};

struct BoundsConfig {
  PatternDesc pattern;
  PathLossDesc pathloss;
  FadingDesc fading;
  // `tau` in the file is read as a one-point grid.
  std::vector<double> tau_grid;
  int k = 1;
  bool count_tv = true;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_path;
  friend bool operator==(const BoundsConfig&, const BoundsConfig&) = default;
};

struct SimulateConfig {
  PatternDesc pattern;
  bool regenerate_pattern = false;
  PathLossDesc pathloss;
  FadingDesc fading;
  int k = 1;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_path;
  friend bool operator==(const SimulateConfig&, const SimulateConfig&) = default;
};

// Minima come from `samples_path` (one value per line, optional header) or
// are simulated from the model keys, which are then all required.
struct EstimateConfig {
  std::optional<std::string> samples_path;
  std::optional<PatternDesc> pattern;
  bool regenerate_pattern = true;
  std::optional<PathLossDesc> pathloss;
  std::optional<FadingDesc> fading;
  std::optional<std::uint64_t> n;
  std::vector<double> t_grid;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_path;
  friend bool operator==(const EstimateConfig&, const EstimateConfig&) = default;
};

enum class SweepFamily { kLogNormal, kRayleigh };

struct SweepConfig {
  PatternDesc pattern;
  bool regenerate_pattern = false;
  double beta = 4.0;
  SweepFamily family = SweepFamily::kLogNormal;
  std::vector<double> v;
  int k = 1;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_path;
  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

using ExperimentConfig =
    std::variant<IntensityConfig, BoundsConfig, SimulateConfig, EstimateConfig, SweepConfig>;

std::string_view command_name(const ExperimentConfig& config);

// Line of each JSON pointer ("/intensity/fading/rate") in the source text.
using LineMap = std::map<std::string, int, std::less<>>;

struct ParsedConfig {
  ExperimentConfig config;
  LineMap lines;

  // Line for pointer, falling back to the nearest enclosing object.
  int line_of(std::string_view pointer) const;
};

ParsedConfig parse_config(std::string_view text);
ParsedConfig load_config(const std::string& path);

nlohmann::ordered_json to_json(const ExperimentConfig& config);
std::string serialize_config(const ExperimentConfig& config);

// Maps every value in a syntactically valid JSON document to its line.
LineMap scan_lines(std::string_view text);

}  // namespace poisig::cli

#endif  // POISIG_TOOLS_CONFIG_HPP_
