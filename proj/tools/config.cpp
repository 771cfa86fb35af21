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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

namespace poisig::cli {

using nlohmann::json;
using nlohmann::ordered_json;

ConfigError::ConfigError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "config:" + std::to_string(line) + ": " + message
                                  : "config: " + message),
      message_(message),
      line_(line) {}

namespace {

std::string escape_pointer_token(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// ---- line scanner

class LineScanner {
 public:
  explicit LineScanner(std::string_view text) : s_(text) {}

  LineMap run() {
    value("");
    return std::move(lines_);
  }

 private:
  void ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\r' || s_[i_] == '\n')) {
      if (s_[i_] == '\n') ++line_;
      ++i_;
    }
  }

  // Raw string body including quotes; i_ is left past the closing quote.
  std::string_view raw_string() {
    const std::size_t start = i_++;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\') ++i_;
      ++i_;
    }
    ++i_;
    return s_.substr(start, i_ - start);
  }

  void value(const std::string& path) {
    ws();
    lines_.emplace(path, line_);
    if (i_ >= s_.size()) return;
    const char c = s_[i_];
    if (c == '{') {
      ++i_;
      std::set<std::string> seen;
      ws();
      if (i_ < s_.size() && s_[i_] == '}') {
        ++i_;
        return;
      }
      while (i_ < s_.size()) {
        ws();
        const int key_line = line_;
        const std::string_view raw = raw_string();
        std::string key;
        if (raw.find('\\') == std::string_view::npos) {
          key = std::string(raw.substr(1, raw.size() - 2));
        } else {
          key = json::parse(raw).get<std::string>();
        }
        if (!seen.insert(key).second) {
          throw ConfigError("duplicate key \"" + key + "\"", key_line);
        }
        const std::string child = path + "/" + escape_pointer_token(key);
        lines_.emplace(child, key_line);
        ws();
        ++i_;  // ':'
        value(child);
        ws();
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        ++i_;  // '}'
        return;
      }
    } else if (c == '[') {
      ++i_;
      ws();
      if (i_ < s_.size() && s_[i_] == ']') {
        ++i_;
        return;
      }
      for (std::size_t idx = 0; i_ < s_.size(); ++idx) {
        value(path + "/" + std::to_string(idx));
        ws();
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        ++i_;  // ']'
        return;
      }
    } else if (c == '"') {
      raw_string();
    } else {
      while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != '}' && s_[i_] != ']' && s_[i_] != ' ' &&
             s_[i_] != '\n' && s_[i_] != '\r' && s_[i_] != '\t') {
        ++i_;
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  int line_ = 1;
  LineMap lines_;
};

// ---- typed object reader

class Obj {
 public:
  Obj(const json& j, std::string pointer, const LineMap& lines)
      : j_(j), ptr_(std::move(pointer)), lines_(lines) {
    if (!j_.is_object()) fail(ptr_, "expected an object");
  }

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    const std::string where = pointer.empty() ? "" : pointer.substr(1) + ": ";
    throw ConfigError(where + message, line_at(pointer));
  }

  int line_at(const std::string& pointer) const {
    auto it = lines_.find(pointer);
    return it == lines_.end() ? 0 : it->second;
  }

  std::string child(std::string_view key) const { return ptr_ + "/" + escape_pointer_token(key); }
  const std::string& pointer() const { return ptr_; }
  const LineMap& lines() const { return lines_; }

  bool has(std::string_view key) const { return j_.contains(std::string(key)); }

  const json* find(std::string_view key) {
    used_.insert(std::string(key));
    auto it = j_.find(std::string(key));
    return it == j_.end() ? nullptr : &*it;
  }

  const json& require(std::string_view key) {
    const json* v = find(key);
    if (!v) fail(ptr_, "missing required key \"" + std::string(key) + "\"");
    return *v;
  }

  double real(std::string_view key) { return as_real(require(key), child(key)); }

  std::optional<double> opt_real(std::string_view key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    return as_real(*v, child(key));
  }

  std::uint64_t uint(std::string_view key) { return as_uint(require(key), child(key)); }

  std::optional<std::uint64_t> opt_uint(std::string_view key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    return as_uint(*v, child(key));
  }

  int small_int(std::string_view key, int fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    const std::uint64_t u = as_uint(*v, child(key));
    if (u > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
      fail(child(key), "value too large");
    }
    return static_cast<int>(u);
  }

  bool boolean(std::string_view key, bool fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(child(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(std::string_view key) {
    const json& v = require(key);
    if (!v.is_string()) fail(child(key), "expected a string");
    return v.get<std::string>();
  }

  std::optional<std::string> opt_string(std::string_view key) {
    if (!has(key)) {
      find(key);
      return std::nullopt;
    }
    return string(key);
  }

  std::vector<double> reals(std::string_view key) {
    const json& v = require(key);
    return as_reals(v, child(key));
  }

  std::vector<double> as_reals(const json& v, const std::string& pointer) const {
    if (!v.is_array()) fail(pointer, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(as_real(v[i], pointer + "/" + std::to_string(i)));
    }
    return out;
  }

  std::array<double, 2> pair(std::string_view key, std::array<double, 2> fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    return as_pair(*v, child(key));
  }

  std::array<double, 2> as_pair(const json& v, const std::string& pointer) const {
    const auto xs = as_reals(v, pointer);
    if (xs.size() != 2) fail(pointer, "expected [x, y]");
    return {xs[0], xs[1]};
  }

  Obj object(std::string_view key) { return Obj(require(key), child(key), lines_); }

  // Rejects keys nobody asked for.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) fail(child(it.key()), "unknown key");
    }
  }

  double as_real(const json& v, const std::string& pointer) const {
    if (!v.is_number()) fail(pointer, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(pointer, "must be finite");
    return x;
  }

  std::uint64_t as_uint(const json& v, const std::string& pointer) const {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) fail(pointer, "must be >= 0");
    fail(pointer, "expected an integer");
  }

 private:
  const json& j_;
  std::string ptr_;
  const LineMap& lines_;
  std::set<std::string> used_;
};

void require_grid(const Obj& o, std::string_view key, const std::vector<double>& g) {
  const std::string p = o.child(key);
  if (g.empty()) o.fail(p, "grid must not be empty");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0.0)) o.fail(p + "/" + std::to_string(i), "grid values must be > 0");
    if (i > 0 && !(g[i] > g[i - 1])) {
      o.fail(p + "/" + std::to_string(i), "grid must be strictly ascending");
    }
  }
}

void require_positive(const Obj& o, std::string_view key, double x) {
  if (!(x > 0.0)) o.fail(o.child(key), "must be > 0");
}

PatternDesc parse_pattern(Obj o) {
  const std::string type = o.string("type");
  PatternDesc out;
  if (type == "poisson_disk") {
    PoissonDiskDesc d;
    d.density = o.real("density");
    d.radius = o.real("radius");
    require_positive(o, "density", d.density);
    require_positive(o, "radius", d.radius);
    out = d;
  } else if (type == "square_lattice" || type == "hex_lattice") {
    const double spacing = o.real("spacing");
    const double radius = o.real("radius");
    const auto offset = o.pair("offset", {0.0, 0.0});
    require_positive(o, "spacing", spacing);
    require_positive(o, "radius", radius);
    if (type == "square_lattice") {
      out = SquareLatticeDesc{spacing, radius, offset};
    } else {
      out = HexLatticeDesc{spacing, radius, offset};
    }
  } else if (type == "perturbed_lattice") {
    PerturbedLatticeDesc d;
    d.spacing = o.real("spacing");
    d.radius = o.real("radius");
    d.jitter = o.opt_real("jitter").value_or(0.0);
    require_positive(o, "spacing", d.spacing);
    require_positive(o, "radius", d.radius);
    if (d.jitter < 0.0) o.fail(o.child("jitter"), "must be >= 0");
    out = d;
  } else if (type == "explicit") {
    ExplicitDesc d;
    const json& pts = o.require("points");
    const std::string p = o.child("points");
    if (!pts.is_array()) o.fail(p, "expected an array of [x, y] pairs");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto xy = o.as_pair(pts[i], p + "/" + std::to_string(i));
      if (xy[0] == 0.0 && xy[1] == 0.0) {
        o.fail(p + "/" + std::to_string(i), "the origin is not a valid transmitter");
      }
      d.points.push_back(xy);
    }
    out = d;
  } else if (type == "csv") {
    out = CsvPatternDesc{o.string("path")};
  } else {
    o.fail(o.child("type"), "unknown pattern type \"" + type + "\"");
  }
  o.finish();
  return out;
}

PathLossDesc parse_pathloss(Obj o) {
  const std::string type = o.string("type");
  PathLossDesc out;
  if (type == "power_law") {
    const double beta = o.real("beta");
    if (!(beta > 2.0)) o.fail(o.child("beta"), "power-law beta must be > 2");
    out = PowerLawDesc{beta};
  } else if (type == "exponential") {
    const double beta = o.real("beta");
    require_positive(o, "beta", beta);
    out = ExponentialPathLossDesc{beta};
  } else if (type == "multi_slope") {
    MultiSlopeDesc d;
    d.breakpoints = o.reals("breakpoints");
    d.exponents = o.reals("exponents");
    d.b1 = o.opt_real("b1").value_or(1.0);
    if (d.exponents.size() != d.breakpoints.size() + 1) {
      o.fail(o.child("exponents"), "need one more exponent than breakpoints");
    }
    require_positive(o, "b1", d.b1);
    out = d;
  } else {
    o.fail(o.child("type"), "unknown path-loss type \"" + type + "\"");
  }
  o.finish();
  return out;
}

FadingDesc parse_fading(Obj o) {
  const std::string type = o.string("type");
  FadingDesc out;
  if (type == "constant") {
    const double v = o.real("value");
    require_positive(o, "value", v);
    out = ConstantFadingDesc{v};
  } else if (type == "exponential") {
    const double rate = o.real("rate");
    require_positive(o, "rate", rate);
    out = ExponentialFadingDesc{rate};
  } else if (type == "lognormal") {
    LogNormalDesc d;
    d.mu = o.real("mu");
    d.sigma = o.real("sigma");
    if (d.sigma < 0.0) o.fail(o.child("sigma"), "must be >= 0");
    out = d;
  } else if (type == "lognormal_normalized") {
    LogNormalNormalizedDesc d;
    d.v = o.real("v");
    d.beta = o.real("beta");
    if (d.v < 0.0) o.fail(o.child("v"), "must be >= 0");
    require_positive(o, "beta", d.beta);
    out = d;
  } else if (type == "tabulated") {
    TabulatedDesc d;
    d.values = o.reals("values");
    d.cdf = o.reals("cdf");
    if (d.values.size() != d.cdf.size() || d.values.empty()) {
      o.fail(o.child("cdf"), "values and cdf must be nonempty and of equal length");
    }
    out = d;
  } else {
    o.fail(o.child("type"), "unknown fading type \"" + type + "\"");
  }
  o.finish();
  return out;
}

void require_min(const Obj& o, std::string_view key, std::uint64_t v, std::uint64_t lo) {
  if (v < lo) o.fail(o.child(key), "must be >= " + std::to_string(lo));
}

IntensityConfig parse_intensity(Obj o) {
  IntensityConfig c;
  c.pattern = parse_pattern(o.object("pattern"));
  c.pathloss = parse_pathloss(o.object("pathloss"));
  c.fading = parse_fading(o.object("fading"));
  c.t_grid = o.reals("t_grid");
  require_grid(o, "t_grid", c.t_grid);
  c.n_mc = o.opt_uint("n_mc").value_or(c.n_mc);
  require_min(o, "n_mc", c.n_mc, 2);
  c.observer_jitter = o.opt_real("observer_jitter").value_or(0.0);
  if (c.observer_jitter < 0.0) o.fail(o.child("observer_jitter"), "must be >= 0");
  c.seed = o.opt_uint("seed");
  c.output_path = o.opt_string("output_path");
  o.finish();
  return c;
}

BoundsConfig parse_bounds(Obj o) {
  BoundsConfig c;
  c.pattern = parse_pattern(o.object("pattern"));
  c.pathloss = parse_pathloss(o.object("pathloss"));
  c.fading = parse_fading(o.object("fading"));
  const bool has_tau = o.has("tau");
  const bool has_grid = o.has("tau_grid");
  if (has_tau == has_grid) o.fail(o.pointer(), "give exactly one of \"tau\" and \"tau_grid\"");
  if (has_tau) {
    c.tau_grid = {o.real("tau")};
    require_grid(o, "tau", c.tau_grid);
  } else {
    c.tau_grid = o.reals("tau_grid");
    require_grid(o, "tau_grid", c.tau_grid);
  }
  c.k = o.small_int("k", 1);
  require_min(o, "k", static_cast<std::uint64_t>(c.k), 1);
  c.count_tv = o.boolean("count_tv", true);
  c.seed = o.opt_uint("seed");
  c.output_path = o.opt_string("output_path");
  o.finish();
  return c;
}

SimulateConfig parse_simulate(Obj o) {
  SimulateConfig c;
  c.pattern = parse_pattern(o.object("pattern"));
  c.regenerate_pattern = o.boolean("regenerate_pattern", false);
  c.pathloss = parse_pathloss(o.object("pathloss"));
  c.fading = parse_fading(o.object("fading"));
  c.k = o.small_int("k", 1);
  require_min(o, "k", static_cast<std::uint64_t>(c.k), 1);
  c.n = o.uint("n");
  require_min(o, "n", c.n, 1);
  c.seed = o.opt_uint("seed");
  c.output_path = o.opt_string("output_path");
  o.finish();
  return c;
}

EstimateConfig parse_estimate(Obj o) {
  EstimateConfig c;
  c.samples_path = o.opt_string("samples_path");
  if (o.has("pattern")) c.pattern = parse_pattern(o.object("pattern"));
  c.regenerate_pattern = o.boolean("regenerate_pattern", true);
  if (o.has("pathloss")) c.pathloss = parse_pathloss(o.object("pathloss"));
  if (o.has("fading")) c.fading = parse_fading(o.object("fading"));
  c.n = o.opt_uint("n");
  if (c.n) require_min(o, "n", *c.n, 1);
  if (c.samples_path) {
    if (c.pattern || c.pathloss || c.fading || c.n) {
      o.fail(o.child("samples_path"), "samples_path excludes pattern, pathloss, fading and n");
    }
  } else {
    for (const char* key : {"pattern", "pathloss", "fading", "n"}) {
      if (!o.has(key)) {
        o.fail(o.pointer(), std::string("missing required key \"") + key +
                                "\" (or give samples_path)");
      }
    }
  }
  c.t_grid = o.reals("t_grid");
  require_grid(o, "t_grid", c.t_grid);
  c.seed = o.opt_uint("seed");
  c.output_path = o.opt_string("output_path");
  o.finish();
  return c;
}

SweepConfig parse_sweep(Obj o) {
  SweepConfig c;
  c.pattern = parse_pattern(o.object("pattern"));
  c.regenerate_pattern = o.boolean("regenerate_pattern", false);
  c.beta = o.real("beta");
  if (!(c.beta > 2.0)) o.fail(o.child("beta"), "power-law beta must be > 2");
  const std::string family = o.string("family");
  if (family == "lognormal") {
    c.family = SweepFamily::kLogNormal;
  } else if (family == "rayleigh") {
    c.family = SweepFamily::kRayleigh;
  } else {
    o.fail(o.child("family"), "family must be \"lognormal\" or \"rayleigh\"");
  }
  c.v = o.reals("v");
  require_grid(o, "v", c.v);
  c.k = o.small_int("k", 1);
  require_min(o, "k", static_cast<std::uint64_t>(c.k), 1);
  c.n = o.uint("n");
  require_min(o, "n", c.n, 1);
  c.seed = o.opt_uint("seed");
  c.output_path = o.opt_string("output_path");
  o.finish();
  return c;
}

// ---- serialization

ordered_json pair_json(const std::array<double, 2>& p) { return ordered_json::array({p[0], p[1]}); }

ordered_json to_json(const PatternDesc& d) {
  ordered_json j;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PoissonDiskDesc>) {
          j["type"] = "poisson_disk";
          j["density"] = p.density;
          j["radius"] = p.radius;
        } else if constexpr (std::is_same_v<T, SquareLatticeDesc> ||
                             std::is_same_v<T, HexLatticeDesc>) {
          j["type"] = std::is_same_v<T, SquareLatticeDesc> ? "square_lattice" : "hex_lattice";
          j["spacing"] = p.spacing;
          j["radius"] = p.radius;
          j["offset"] = pair_json(p.offset);
        } else if constexpr (std::is_same_v<T, PerturbedLatticeDesc>) {
          j["type"] = "perturbed_lattice";
          j["spacing"] = p.spacing;
          j["radius"] = p.radius;
          j["jitter"] = p.jitter;
        } else if constexpr (std::is_same_v<T, ExplicitDesc>) {
          j["type"] = "explicit";
          j["points"] = ordered_json::array();
          for (const auto& xy : p.points) j["points"].push_back(pair_json(xy));
        } else {
          j["type"] = "csv";
          j["path"] = p.path;
        }
      },
      d);
  return j;
}

ordered_json to_json(const PathLossDesc& d) {
  ordered_json j;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerLawDesc>) {
          j["type"] = "power_law";
          j["beta"] = p.beta;
        } else if constexpr (std::is_same_v<T, ExponentialPathLossDesc>) {
          j["type"] = "exponential";
          j["beta"] = p.beta;
        } else {
          j["type"] = "multi_slope";
          j["breakpoints"] = p.breakpoints;
          j["exponents"] = p.exponents;
          j["b1"] = p.b1;
        }
      },
      d);
  return j;
}

ordered_json to_json(const FadingDesc& d) {
  ordered_json j;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ConstantFadingDesc>) {
          j["type"] = "constant";
          j["value"] = p.value;
        } else if constexpr (std::is_same_v<T, ExponentialFadingDesc>) {
          j["type"] = "exponential";
          j["rate"] = p.rate;
        } else if constexpr (std::is_same_v<T, LogNormalDesc>) {
          j["type"] = "lognormal";
          j["mu"] = p.mu;
          j["sigma"] = p.sigma;
        } else if constexpr (std::is_same_v<T, LogNormalNormalizedDesc>) {
          j["type"] = "lognormal_normalized";
          j["v"] = p.v;
          j["beta"] = p.beta;
        } else {
          j["type"] = "tabulated";
          j["values"] = p.values;
          j["cdf"] = p.cdf;
        }
      },
      d);
  return j;
}

template <class C>
void put_common(ordered_json& j, const C& c) {
  if (c.seed) j["seed"] = *c.seed;
  if (c.output_path) j["output_path"] = *c.output_path;
}

}  // namespace

std::string_view command_name(const ExperimentConfig& config) {
  static constexpr std::string_view kNames[] = {"intensity", "bounds", "simulate", "estimate",
                                                "sweep"};
  return kNames[config.index()];
}

int ParsedConfig::line_of(std::string_view pointer) const {
  std::string p(pointer);
  while (true) {
    auto it = lines.find(p);
    if (it != lines.end()) return it->second;
    const auto slash = p.rfind('/');
    if (slash == std::string::npos) return 0;
    p.resize(slash);
  }
}

LineMap scan_lines(std::string_view text) { return LineScanner(text).run(); }

ParsedConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    int line = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') ++line;
    }
    std::string what = e.what();
    const auto colon = what.find(": ");
    if (colon != std::string::npos) what = what.substr(colon + 2);
    throw ConfigError("invalid JSON: " + what, line);
  }

  ParsedConfig out{IntensityConfig{}, scan_lines(text)};
  Obj top(root, "", out.lines);
  if (root.size() != 1) {
    top.fail("", "expected exactly one top-level key naming the subcommand");
  }
  const std::string name = root.begin().key();
  if (name == "intensity") {
    out.config = parse_intensity(top.object(name));
  } else if (name == "bounds") {
    out.config = parse_bounds(top.object(name));
  } else if (name == "simulate") {
    out.config = parse_simulate(top.object(name));
  } else if (name == "estimate") {
    out.config = parse_estimate(top.object(name));
  } else if (name == "sweep") {
    out.config = parse_sweep(top.object(name));
  } else {
    top.fail("/" + escape_pointer_token(name), "unknown subcommand \"" + name + "\"");
  }
  return out;
}

ParsedConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

nlohmann::ordered_json to_json(const ExperimentConfig& config) {
  ordered_json body;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, IntensityConfig>) {
          body["pattern"] = to_json(c.pattern);
          body["pathloss"] = to_json(c.pathloss);
          body["fading"] = to_json(c.fading);
          body["t_grid"] = c.t_grid;
          body["n_mc"] = c.n_mc;
          body["observer_jitter"] = c.observer_jitter;
        } else if constexpr (std::is_same_v<T, BoundsConfig>) {
          body["pattern"] = to_json(c.pattern);
          body["pathloss"] = to_json(c.pathloss);
          body["fading"] = to_json(c.fading);
          body["tau_grid"] = c.tau_grid;
          body["k"] = c.k;
          body["count_tv"] = c.count_tv;
        } else if constexpr (std::is_same_v<T, SimulateConfig>) {
          body["pattern"] = to_json(c.pattern);
          body["regenerate_pattern"] = c.regenerate_pattern;
          body["pathloss"] = to_json(c.pathloss);
          body["fading"] = to_json(c.fading);
          body["k"] = c.k;
          body["n"] = c.n;
        } else if constexpr (std::is_same_v<T, EstimateConfig>) {
          if (c.samples_path) body["samples_path"] = *c.samples_path;
          if (c.pattern) body["pattern"] = to_json(*c.pattern);
          body["regenerate_pattern"] = c.regenerate_pattern;
          if (c.pathloss) body["pathloss"] = to_json(*c.pathloss);
          if (c.fading) body["fading"] = to_json(*c.fading);
          if (c.n) body["n"] = *c.n;
          body["t_grid"] = c.t_grid;
        } else {
          body["pattern"] = to_json(c.pattern);
          body["regenerate_pattern"] = c.regenerate_pattern;
          body["beta"] = c.beta;
          body["family"] = c.family == SweepFamily::kRayleigh ? "rayleigh" : "lognormal";
          body["v"] = c.v;
          body["k"] = c.k;
          body["n"] = c.n;
        }
        put_common(body, c);
      },
      config);
  ordered_json root;
  root[std::string(command_name(config))] = std::move(body);
  return root;
}

std::string serialize_config(const ExperimentConfig& config) {
  return to_json(config).dump(2) + "\n";
}

}  // namespace poisig::cli
