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

#include "poisig/pointpattern.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "csv.hpp"
#include "poisig/errors.hpp"
#include "poisig/random.hpp"

namespace poisig {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void require(bool ok, const char* what) {
  if (!ok) throw ParameterError(what);
}

double polar_angle(const Point2& p) {
  const double a = std::atan2(p.y, p.x);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

void check_origin_free(const std::vector<Point2>& pts, const char* what) {
  for (const auto& p : pts) {
    if (p.x == 0.0 && p.y == 0.0) throw ParameterError(what);
  }
}

std::vector<Point2> square_lattice(double a, double radius, Point2 offset) {
  std::vector<Point2> pts;
  const auto i_lo = static_cast<long long>(std::floor((-radius - offset.x) / a));
  const auto i_hi = static_cast<long long>(std::ceil((radius - offset.x) / a));
  const auto j_lo = static_cast<long long>(std::floor((-radius - offset.y) / a));
  const auto j_hi = static_cast<long long>(std::ceil((radius - offset.y) / a));
  for (long long j = j_lo; j <= j_hi; ++j) {
    for (long long i = i_lo; i <= i_hi; ++i) {
      const Point2 p{offset.x + a * static_cast<double>(i), offset.y + a * static_cast<double>(j)};
      if (p.norm() <= radius) pts.push_back(p);
    }
  }
  return pts;
}

std::vector<Point2> hex_lattice(double a, double radius, Point2 offset) {
  std::vector<Point2> pts;
  const double row = a * std::sqrt(3.0) / 2.0;
  const auto j_lo = static_cast<long long>(std::floor((-radius - offset.y) / row));
  const auto j_hi = static_cast<long long>(std::ceil((radius - offset.y) / row));
  for (long long j = j_lo; j <= j_hi; ++j) {
    const double shift = offset.x + 0.5 * a * static_cast<double>(j);
    const auto i_lo = static_cast<long long>(std::floor((-radius - shift) / a));
    const auto i_hi = static_cast<long long>(std::ceil((radius - shift) / a));
    for (long long i = i_lo; i <= i_hi; ++i) {
      const Point2 p{shift + a * static_cast<double>(i), offset.y + row * static_cast<double>(j)};
      if (p.norm() <= radius) pts.push_back(p);
    }
  }
  return pts;
}

struct Generator {
  std::uint64_t seed;

  PointPattern operator()(const PoissonDiskSpec& s) const {
    Rng rng = make_rng(seed, 0);
    std::poisson_distribution<long long> count(s.density * kPi * s.radius * s.radius);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const long long n = count(rng);
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(n));
    while (static_cast<long long>(pts.size()) < n) {
      const double r = s.radius * std::sqrt(unit(rng));
      const double theta = 2.0 * kPi * unit(rng);
      const Point2 p{r * std::cos(theta), r * std::sin(theta)};
      if (p.x == 0.0 && p.y == 0.0) continue;
      pts.push_back(p);
    }
    return PointPattern(std::move(pts), s.density, s.radius);
  }

  PointPattern operator()(const SquareLatticeSpec& s) const {
    auto pts = square_lattice(s.spacing, s.radius, s.offset);
    check_origin_free(pts, "square lattice offset places a point at the origin");
    return PointPattern(std::move(pts), 1.0 / (s.spacing * s.spacing), s.radius);
  }

  PointPattern operator()(const HexLatticeSpec& s) const {
    auto pts = hex_lattice(s.spacing, s.radius, s.offset);
    check_origin_free(pts, "hex lattice offset places a point at the origin");
    return PointPattern(std::move(pts), 2.0 / (std::sqrt(3.0) * s.spacing * s.spacing),
                        s.radius);
  }

  PointPattern operator()(const PerturbedLatticeSpec& s) const {
    // Enumerate a margin beyond the window so jitter does not thin the edge.
    const double margin = 8.0 * s.jitter;
    const auto base =
        square_lattice(s.spacing, s.radius + margin, {0.5 * s.spacing, 0.5 * s.spacing});
    Rng rng = make_rng(seed, 0);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<Point2> pts;
    pts.reserve(base.size());
    for (const auto& b : base) {
      Point2 p;
      do {
        p = {b.x + s.jitter * noise(rng), b.y + s.jitter * noise(rng)};
      } while (p.x == 0.0 && p.y == 0.0);
      if (p.norm() <= s.radius) pts.push_back(p);
    }
    return PointPattern(std::move(pts), 1.0 / (s.spacing * s.spacing), s.radius);
  }

  PointPattern operator()(const ExplicitSpec& s) const {
    return PointPattern(s.points, 0.0, kInf);
  }
};

}  // namespace

double Point2::norm() const noexcept { return std::hypot(x, y); }

void validate(const PatternSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PoissonDiskSpec>) {
          require(positive_finite(s.density), "poisson disk: density must be > 0");
          require(positive_finite(s.radius), "poisson disk: radius must be > 0");
        } else if constexpr (std::is_same_v<T, SquareLatticeSpec> ||
                             std::is_same_v<T, HexLatticeSpec>) {
          require(positive_finite(s.spacing), "lattice: spacing must be > 0");
          require(positive_finite(s.radius), "lattice: radius must be > 0");
          require(std::isfinite(s.offset.x) && std::isfinite(s.offset.y),
                  "lattice: offset must be finite");
        } else if constexpr (std::is_same_v<T, PerturbedLatticeSpec>) {
          require(positive_finite(s.spacing), "perturbed lattice: spacing must be > 0");
          require(positive_finite(s.radius), "perturbed lattice: radius must be > 0");
          require(std::isfinite(s.jitter) && s.jitter >= 0.0,
                  "perturbed lattice: jitter must be >= 0");
        } else {
          for (const auto& p : s.points) {
            require(std::isfinite(p.x) && std::isfinite(p.y), "explicit: non-finite point");
          }
          check_origin_free(s.points, "explicit: point at the origin");
        }
      },
      spec);
}

bool is_random(const PatternSpec& spec) noexcept {
  if (std::holds_alternative<PoissonDiskSpec>(spec)) return true;
  if (const auto* p = std::get_if<PerturbedLatticeSpec>(&spec)) return p->jitter > 0.0;
  return false;
}

PointPattern::PointPattern(std::vector<Point2> points, double density, double window_radius)
    : density_(density), window_radius_(window_radius) {
  check_origin_free(points, "point pattern: point at the origin");
  struct Keyed {
    double r;
    double angle;
    Point2 p;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(points.size());
  for (const auto& p : points) {
    keyed.push_back({p.norm(), polar_angle(p), p});
    if (keyed.back().r > window_radius) {
      throw ParameterError("point pattern: point outside the window radius");
    }
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return a.r != b.r ? a.r < b.r : a.angle < b.angle;
  });
  points_.reserve(keyed.size());
  radii_.reserve(keyed.size());
  for (const auto& k : keyed) {
    points_.push_back(k.p);
    radii_.push_back(k.r);
  }
}

std::size_t PointPattern::count_in_disk(double r) const {
  return static_cast<std::size_t>(std::upper_bound(radii_.begin(), radii_.end(), r) -
                                  radii_.begin());
}

std::size_t PointPattern::count_in_disk(Point2 center, double r) const {
  const double c = center.norm();
  if (c == 0.0) return count_in_disk(r);
  if (r < 0.0) return 0;
  // |x| <= r - |c| is certainly inside, |x| > r + |c| certainly outside.
  const std::size_t sure = r > c ? count_in_disk(r - c) : 0;
  const std::size_t maybe = count_in_disk(r + c);
  std::size_t n = sure;
  for (std::size_t i = sure; i < maybe; ++i) {
    if (std::hypot(points_[i].x - center.x, points_[i].y - center.y) <= r) ++n;
  }
  return n;
}

double PointPattern::density_ratio(double r) const {
  if (!(r > 0.0)) throw DomainError("density_ratio: radius must be > 0");
  if (r > window_radius_) {
    throw DomainError("density_ratio: radius exceeds the pattern window");
  }
  return static_cast<double>(count_in_disk(r)) / (kPi * r * r);
}

PointPattern generate(const PatternSpec& spec, std::uint64_t seed) {
  validate(spec);
  return std::visit(Generator{seed}, spec);
}

void write_pattern_csv(std::ostream& out, const PointPattern& pattern) {
  out << "x,y\n";
  for (const auto& p : pattern.points()) {
    out << csv::format_real(p.x) << ',' << csv::format_real(p.y) << '\n';
  }
}

void write_pattern_csv(const std::string& path, const PointPattern& pattern) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  write_pattern_csv(out, pattern);
  if (!out) throw IoError("write failed: " + path);
}

PointPattern read_pattern_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("pattern csv: missing header");
  const auto header = csv::split_line(line);
  if (header.size() != 2 || header[0] != "x" || header[1] != "y") {
    throw IoError("pattern csv: header must be 'x,y'");
  }
  ExplicitSpec spec;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = csv::split_line(line);
    if (f.size() != 2) {
      throw IoError("pattern csv line " + std::to_string(line_no) + ": expected 2 fields");
    }
    spec.points.push_back({csv::parse_real(f[0], line_no), csv::parse_real(f[1], line_no)});
  }
  return generate(spec, 0);
}

PointPattern read_pattern_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  return read_pattern_csv(in);
}

}  // namespace poisig
