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

#ifndef POISIG_QUADRATURE_HPP_
#define POISIG_QUADRATURE_HPP_

#include <functional>
#include <span>

#include "poisig/propagation.hpp"

namespace poisig {

// Acceptance thresholds for a finished integral. The integrator itself aims
// much tighter; these decide when to raise NumericError.
struct QuadratureOptions {
  double abs_tol = 1e-6;
  double rel_tol = 1e-4;
};

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod over [a, b]; either end may be infinite. A finite
// interval starting at 0 uses tanh-sinh, which tolerates an algebraic
// singularity there. Does not check tolerances.
Integral integrate(const std::function<double(double)>& f, double a, double b);

// E[g(S)] under fading, splitting the domain at the given S-values where g
// has kinks. Exact for ConstantFading; piecewise on the table for
// TabulatedFading; Gauss-Kronrod in u = rate * s for ExponentialFading and in
// z = (ln s - mu) / sigma for the lognormal families. Throws NumericError
// carrying the best estimate when the error estimate exceeds opts.
Integral expectation(const FadingModel& fading, const std::function<double(double)>& g,
                     std::span<const double> kinks, const QuadratureOptions& opts = {});

}  // namespace poisig

#endif  // POISIG_QUADRATURE_HPP_
