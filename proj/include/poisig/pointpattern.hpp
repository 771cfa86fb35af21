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

#ifndef POISIG_POINTPATTERN_HPP_
#define POISIG_POINTPATTERN_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace poisig {

// Transmitter position in meters. The observer sits at the origin.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  double norm() const noexcept;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct PoissonDiskSpec {
  double density = 0.0;  // points per m^2
  double radius = 0.0;
};

struct SquareLatticeSpec {
  double spacing = 0.0;
  double radius = 0.0;
  Point2 offset;
};

// Basis a*(1, 0) and a*(1/2, sqrt(3)/2), shifted by offset.
struct HexLatticeSpec {
  double spacing = 0.0;
  double radius = 0.0;
  Point2 offset;
};

// Square lattice offset by (a/2, a/2) with i.i.d. N(0, jitter^2) noise on
// each coordinate.
struct PerturbedLatticeSpec {
  double spacing = 0.0;
  double radius = 0.0;
  double jitter = 0.0;
};

struct ExplicitSpec {
  std::vector<Point2> points;
};

using PatternSpec = std::variant<PoissonDiskSpec, SquareLatticeSpec, HexLatticeSpec,
                                 PerturbedLatticeSpec, ExplicitSpec>;

// Throws ParameterError when spec violates its invariants.
void validate(const PatternSpec& spec);

// True when regenerating spec with a new seed can give a different pattern.
bool is_random(const PatternSpec& spec) noexcept;

// Finite, origin-free transmitter configuration, sorted by distance from the
// origin with ties broken by polar angle in [0, 2*pi). Position in points()
// is the canonical transmitter index used by every downstream routine.
//
// Explicit patterns are complete configurations: their window radius is
// infinite and their nominal density is 0.
class PointPattern {
 public:
  PointPattern() = default;
  PointPattern(std::vector<Point2> points, double density, double window_radius);

  std::span<const Point2> points() const noexcept { return points_; }
  // |x_i| in canonical order (ascending).
  std::span<const double> radii() const noexcept { return radii_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  double density() const noexcept { return density_; }
  double window_radius() const noexcept { return window_radius_; }

  // Number of points with |x| <= r.
  std::size_t count_in_disk(double r) const;

  // Number of points with |x - center| <= r.
  std::size_t count_in_disk(Point2 center, double r) const;

  // count_in_disk(r) / (pi r^2). Requires 0 < r <= window_radius().
  double density_ratio(double r) const;

 private:
  std::vector<Point2> points_;
  std::vector<double> radii_;
  double density_ = 0.0;
  double window_radius_ = 0.0;
};

PointPattern generate(const PatternSpec& spec, std::uint64_t seed);

// CSV with header `x,y`, 17 significant digits.
void write_pattern_csv(std::ostream& out, const PointPattern& pattern);
void write_pattern_csv(const std::string& path, const PointPattern& pattern);
// Reads an explicit pattern. Throws IoError on malformed input and
// ParameterError on a point at the origin.
PointPattern read_pattern_csv(std::istream& in);
PointPattern read_pattern_csv(const std::string& path);

}  // namespace poisig

#endif  // POISIG_POINTPATTERN_HPP_
