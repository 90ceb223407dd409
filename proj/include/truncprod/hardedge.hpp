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

#include <vector>

#include "truncprod/numeric.hpp"
#include "truncprod/polynomial.hpp"
#include "truncprod/sampling.hpp"

namespace truncprod {

/// Parameters of the hard edge limit: nu_1..nu_r, the subset J of {2..r}
/// (1-based, increasing) where m_j - n = mu_k stays fixed, and the mu's.
struct HardEdgeSpec {
  std::vector<int> nu;
  std::vector<int> J;
  std::vector<int> mu;

  int r() const { return static_cast<int>(nu.size()); }
  int q() const { return static_cast<int>(J.size()); }
  bool in_J(int j) const;
  /// Throws SpecError unless q < r, J is an increasing subset of {2..r} and mu_k >= nu_{j_k} + 1.
  void validate() const;
};

namespace hardedge {

/// c_n = n prod_{j not in J} (m_j - n). Throws SpecError for an invalid J.
double scaling_constant(const ProductSpec& spec, const std::vector<int>& J);

enum class SContour { hankel, vertical_line };

struct LimitKernelOptions {
  /// The Hankel loop crosses the real axis at -1/2 and closes around the
  /// negative axis; the vertical line Re s = -1/2 is only absolutely
  /// convergent for q <= r - 2.
  SContour s_contour = SContour::hankel;
  /// Gauss-Legendre nodes per panel of length 1/2.
  int nodes = 16;
  /// Contours are cut where the integrand falls e^{-decay} below its peak.
  double decay = 40.0;
  /// Accepted once one doubling of nodes (with decay * 1.5) moves every
  /// value by less than tolerance * max(1, |K|).
  double tolerance = 1e-8;
};

/// The hard edge limit kernel on a grid: out[i][j] = K(xs[i], ys[j]).
/// Throws DomainError for non-positive points and ConvergenceError.
std::vector<std::vector<double>> limit_kernel_grid(const HardEdgeSpec& h, const std::vector<double>& xs,
                                                   const std::vector<double>& ys,
                                                   const LimitKernelOptions& options = {});
double limit_kernel(const HardEdgeSpec& h, double x, double y, const LimitKernelOptions& options = {});

/// R(t) = prod_k Gamma(t+1+mu_k) / Gamma(t+1+nu_{j_k}), of degree sum_k (mu_k - nu_{j_k}).
ExactPolynomial rt_polynomial(const HardEdgeSpec& h);

/// The same kernel written with the Gamma factors of J folded into R(t) / R(s).
std::vector<std::vector<double>> limit_kernel_factored_grid(const HardEdgeSpec& h, const std::vector<double>& xs,
                                                            const std::vector<double>& ys,
                                                            const LimitKernelOptions& options = {});

/// m_j = slope_j n + offset_j off J and m_{j_k} = n + mu_k on J.
struct HardEdgeFamily {
  HardEdgeSpec limit;
  std::vector<int> slope;
  std::vector<int> offset;

  ProductSpec at(int n) const;
};

/// c_n^{-1} K_n(x / c_n, y / c_n) from the finite-n double contour integral.
std::vector<std::vector<double>> scaled_finite_kernel_grid(const ProductSpec& spec, const std::vector<int>& J,
                                                           const std::vector<double>& xs,
                                                           const std::vector<double>& ys);

struct ConvergenceRow {
  int n = 0;
  double c_n = 0.0;
  double sup_error = 0.0;
};

/// sup over the grid (x, y) in points x points of the scaled finite kernel minus the limit.
std::vector<ConvergenceRow> convergence_experiment(const HardEdgeFamily& family, const std::vector<int>& ns,
                                                   const std::vector<double>& points,
                                                   const LimitKernelOptions& options = {});

/// Each error at most (1 + slack) times the previous one.
bool decreasing_within(const std::vector<ConvergenceRow>& rows, double slack = 0.2);

/// shift^{s-t} Gamma(t+1+shift) / Gamma(s+1+shift). Tends to 1 as shift -> +infinity
/// and, with shift = -n, to sin(pi s) / sin(pi t) as n -> infinity.
Complex scaled_gamma_ratio(Complex s, Complex t, double shift);

/// Number of singular values above relative_tolerance times the largest.
int numerical_rank(const std::vector<std::vector<double>>& matrix, double relative_tolerance);

}  // namespace hardedge
}  // namespace truncprod
