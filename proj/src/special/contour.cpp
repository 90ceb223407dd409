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

#include "truncprod/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "truncprod/errors.hpp"
#include "truncprod/quadrature.hpp"

namespace truncprod::special {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void add_panel(ContourRule& rule, Complex z0, Complex z1, int nodes) {
  const auto& gl = gauss_legendre(nodes);
  const Complex mid = 0.5 * (z0 + z1);
  const Complex half = 0.5 * (z1 - z0);
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    rule.points.push_back(mid + half * gl.nodes[i]);
    rule.weights.push_back(half * gl.weights[i]);
  }
}

void add_segment(ContourRule& rule, Complex z0, Complex z1, int nodes, double panel_length) {
  const double length = std::abs(z1 - z0);
  const int panels = std::max(1, static_cast<int>(std::ceil(length / panel_length - 1e-9)));
  for (int p = 0; p < panels; ++p) {
    const Complex a = z0 + (z1 - z0) * (static_cast<double>(p) / panels);
    const Complex b = z0 + (z1 - z0) * (static_cast<double>(p + 1) / panels);
    add_panel(rule, a, b, nodes);
  }
}

// Breakpoints from `start` leftwards to `stop`: uniform panels down to
// `dense_until`, then panels growing with the distance past it.
std::vector<double> leg_breakpoints(double start, double stop, double dense_until,
                                    double panel_length) {
  std::vector<double> xs{start};
  double x = start;
  while (x > stop) {
    const double past = dense_until - x;
    const double step = past > 0.0 ? std::max(panel_length, 0.5 * past) : panel_length;
    x = std::max(stop, x - step);
    xs.push_back(x);
  }
  return xs;
}

struct Discretizer {
  int nodes;
  double panel_length;

  ContourRule operator()(const Circle& c) const {
    ContourRule rule;
    for (int k = 0; k < nodes; ++k) {
      const Complex e = std::polar(1.0, kTwoPi * k / nodes);
      rule.points.push_back(c.center + c.radius * e);
      rule.weights.push_back(Complex(0.0, 1.0) * c.radius * e * (kTwoPi / nodes));
    }
    return rule;
  }

  ContourRule operator()(const Hankel& h) const {
    if (h.leftmost >= h.crossing) throw DomainError("Hankel: leftmost must lie left of crossing");
    if (h.standoff <= 0.0) throw DomainError("Hankel: standoff must be positive");
    ContourRule rule;
    const auto xs = leg_breakpoints(h.crossing, h.leftmost, h.dense_until, panel_length);
    // Lower leg, left to right.
    for (std::size_t i = xs.size() - 1; i > 0; --i) {
      add_panel(rule, {xs[i], -h.standoff}, {xs[i - 1], -h.standoff}, nodes);
    }
    add_segment(rule, {h.crossing, -h.standoff}, {h.crossing, h.standoff}, nodes, panel_length);
    // Upper leg, right to left.
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      add_panel(rule, {xs[i], h.standoff}, {xs[i + 1], h.standoff}, nodes);
    }
    return rule;
  }

  ContourRule operator()(const VerticalLine& v) const {
    if (v.half_height <= 0.0) throw DomainError("VerticalLine: half_height must be positive");
    ContourRule rule;
    // Symmetric breakpoints, finer near the real axis.
    std::vector<double> ys{0.0};
    double y = 0.0;
    while (y < v.half_height) {
      y = std::min(v.half_height, y + std::max(panel_length, 0.5 * y));
      ys.push_back(y);
    }
    for (std::size_t i = ys.size() - 1; i > 0; --i) {
      add_panel(rule, {v.abscissa, -ys[i]}, {v.abscissa, -ys[i - 1]}, nodes);
    }
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
      add_panel(rule, {v.abscissa, ys[i]}, {v.abscissa, ys[i + 1]}, nodes);
    }
    return rule;
  }

  ContourRule operator()(const Rectangle& r) const {
    if (r.upper_right.real() <= r.lower_left.real() || r.upper_right.imag() <= r.lower_left.imag()) {
      throw DomainError("Rectangle: corners out of order");
    }
    const Complex ll = r.lower_left;
    const Complex lr{r.upper_right.real(), r.lower_left.imag()};
    const Complex ur = r.upper_right;
    const Complex ul{r.lower_left.real(), r.upper_right.imag()};
    ContourRule rule;
    add_segment(rule, ll, lr, nodes, panel_length);
    add_segment(rule, lr, ur, nodes, panel_length);
    add_segment(rule, ur, ul, nodes, panel_length);
    add_segment(rule, ul, ll, nodes, panel_length);
    return rule;
  }
};

}  // namespace

ContourRule discretize(const ContourSpec& spec) {
  if (spec.nodes < 16) throw DomainError("ContourSpec: nodes must be at least 16");
  if (spec.panel_length <= 0.0) throw DomainError("ContourSpec: panel_length must be positive");
  return std::visit(Discretizer{spec.nodes, spec.panel_length}, spec.path);
}

Complex contour_quadrature(const std::function<Complex(Complex)>& f, const ContourSpec& spec,
                           double tolerance) {
  const Complex norm = 1.0 / Complex(0.0, kTwoPi);
  auto evaluate = [&](int nodes) {
    ContourSpec s = spec;
    s.nodes = nodes;
    const ContourRule rule = discretize(s);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < rule.points.size(); ++i) sum += rule.weights[i] * f(rule.points[i]);
    return sum * norm;
  };
  Complex previous = evaluate(spec.nodes);
  for (int level = 1; level <= 2; ++level) {
    const Complex current = evaluate(spec.nodes << level);
    if (std::abs(current - previous) <= tolerance * std::max(1.0, std::abs(current))) return current;
    previous = current;
  }
  throw ConvergenceError("contour_quadrature: node doubling did not meet the tolerance");
}

Hankel hankel_for(double y, double crossing, double pole_extent) {
  Hankel h;
  h.crossing = crossing;
  h.dense_until = pole_extent - 1.0;
  const double decay = std::abs(std::log(y));
  const double reach = decay > 0.0 ? 45.0 / decay : 5000.0;
  h.leftmost = pole_extent - 2.0 - std::min(reach, 5000.0);
  return h;
}

}  // namespace truncprod::special
