// Copyright 2026 The truncprod Authors
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

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace truncprod::special {

/// Gauss-Legendre nodes and weights on [-1, 1]. Cached per order.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int order);

/// Adaptive Gauss-Kronrod (61 points) over [a, b], split at the given
/// breakpoints, with a tanh-sinh (exp-sinh for b = +infinity) retry on
/// pieces where bisection stalls. Throws ConvergenceError when the error
/// estimate exceeds `abs_tolerance`.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tolerance = 1e-10, std::span<const double> breakpoints = {});

}  // namespace truncprod::special
