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

#include "truncprod/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "truncprod/errors.hpp"

namespace truncprod::special {

const GaussLegendre& gauss_legendre(int order) {
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(order); it != cache.end()) return it->second;
  if (order < 1) throw DomainError("gauss_legendre: order must be positive");

  GaussLegendre rule;
  const auto zeros = boost::math::legendre_p_zeros<double>(order);  // nonnegative zeros
  for (double x : zeros) {
    const double dp = boost::math::legendre_p_prime(order, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes.push_back(x);
    rule.weights.push_back(w);
    if (x != 0.0) {
      rule.nodes.push_back(-x);
      rule.weights.push_back(w);
    }
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tolerance,
                 std::span<const double> breakpoints) {
  std::vector<double> cuts{a};
  for (double c : breakpoints) {
    if (c > a && c < b) cuts.push_back(c);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(b);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    double error = 0.0;
    double l1 = 0.0;
    // Boost stops on a relative criterion; when the piece is small next to the
    // absolute tolerance, relax it instead of chasing rounding noise. The L1
    // guess from a coarse pass can miss narrow features, so refine it.
    boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 0, 1.0, &error, &l1);
    double relative = 1e-13;
    double value = 0.0;
    for (int pass = 0; pass < 4; ++pass) {
      const double guess = l1;
      relative = std::clamp(abs_tolerance / std::max(guess, std::numeric_limits<double>::min()), 1e-13, 1e-3);
      value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          f, cuts[i], cuts[i + 1], 15, relative, &error, &l1);
      if (!(l1 > 2.0 * guess)) break;
    }
    if (!std::isfinite(value) || error > std::max(abs_tolerance, 1e-13 * l1)) {
      // Endpoint singularities (log or power type) defeat bisection; the
      // double-exponential rules handle them.
      try {
        if (std::isinf(cuts[i + 1])) {
          boost::math::quadrature::exp_sinh<double> rule;
          value = rule.integrate(f, cuts[i], cuts[i + 1], std::min(relative * 1e-2, 1e-12), &error, &l1);
        } else {
          boost::math::quadrature::tanh_sinh<double> rule;
          value = rule.integrate(f, cuts[i], cuts[i + 1], std::min(relative * 1e-2, 1e-12), &error, &l1);
        }
      } catch (const std::exception&) {
        value = NAN;
      }
      if (!std::isfinite(value) || error > std::max(abs_tolerance, 1e-13 * l1)) {
        throw ConvergenceError("integrate: quadrature error estimate above tolerance");
      }
    }
    total += value;
  }
  return total;
}

}  // namespace truncprod::special
