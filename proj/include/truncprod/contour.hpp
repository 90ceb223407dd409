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
#include <variant>
#include <vector>

#include "truncprod/numeric.hpp"

namespace truncprod::special {

/// Closed circle, positively oriented. Discretized by the trapezoidal rule.
struct Circle {
  Complex center{0.0, 0.0};
  double radius = 1.0;
};

/// Open loop around the negative real axis, positively oriented: along
/// Im s = -standoff from `leftmost` to `crossing`, up the segment
/// Re s = crossing, and back along Im s = +standoff to `leftmost`.
/// Legs use panels of `panel_length` down to `dense_until` (where the poles
/// stop) and geometrically growing panels beyond.
struct Hankel {
  double crossing = 0.5;
  double standoff = 0.25;
  double leftmost = -40.0;
  double dense_until = -1.0;
};

/// Re s = abscissa, Im s from -half_height to +half_height, upwards.
struct VerticalLine {
  double abscissa = -0.5;
  double half_height = 20.0;
};

/// Closed rectangle, positively oriented.
struct Rectangle {
  Complex lower_left{-0.25, -0.5};
  Complex upper_right{1.25, 0.5};
};

struct ContourSpec {
  std::variant<Circle, Hankel, VerticalLine, Rectangle> path;
  /// Trapezoid points for circles; Gauss-Legendre nodes per panel otherwise. At least 16.
  int nodes = 16;
  double panel_length = 0.5;
};

/// Nodes z_i and weights w_i (with dz folded in) so that
/// \int_path f(z) dz ~ sum_i w_i f(z_i).
struct ContourRule {
  std::vector<Complex> points;
  std::vector<Complex> weights;
};

ContourRule discretize(const ContourSpec& spec);

/// (1 / 2 pi i) \int_path f(z) dz.
///
/// Evaluated at `nodes`, 2*nodes and if needed 4*nodes; a value is accepted
/// once successive doublings agree to `tolerance * max(1, |value|)`.
/// Throws ConvergenceError when neither doubling meets the tolerance.
Complex contour_quadrature(const std::function<Complex(Complex)>& f, const ContourSpec& spec,
                           double tolerance = 1e-12);

/// Hankel loop for integrands that behave like y^{-s} times a rational
/// function with poles in [pole_extent, 0]: the legs run far enough left
/// that |y|^{|s|} is negligible.
Hankel hankel_for(double y, double crossing, double pole_extent);

}  // namespace truncprod::special
