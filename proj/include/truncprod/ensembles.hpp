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

#include "truncprod/log_poly.hpp"
#include "truncprod/numeric.hpp"
#include "truncprod/rational_function.hpp"
#include "truncprod/sampling.hpp"

namespace truncprod {

using RealFunction = std::function<double(double)>;

namespace ensembles {

/// c_r = (m_1 - 2n - nu_1)! prod_{j>=2} (m_j - n - nu_j - 1)!
BigRational weight_constant(const ProductSpec& spec);

/// Mellin transform of w_k as a rational function of s:
///   c_r Gamma(nu_1+k-1+s) prod_{j>=2} Gamma(nu_j+s)
///     / [Gamma(m_1-2n+k+s) prod_{j>=2} Gamma(m_j-n+s)].
RationalFunction weight_mellin(const ProductSpec& spec, int k);

/// w_k for 1 <= k <= n, the residue expansion of the inverse Mellin integral.
LogPolyExpansion weight_wk(const ProductSpec& spec, int k);

/// int_0^1 y^{s-1} w_k(y) dy. Throws PoleError at a pole and DomainError for Re s <= 0.
Complex weight_moment(const ProductSpec& spec, int k, Complex s);
BigRational weight_moment(const ProductSpec& spec, int k, long s);

/// Z_n = n! det[weight_moment(k, j)]_{j,k=1..n}.
BigRational normalization_Zn(const ProductSpec& spec);

}  // namespace ensembles

/// The n weights, c_r and Z_n of one product ensemble, built once.
class WeightSystem {
 public:
  explicit WeightSystem(ProductSpec spec);

  const ProductSpec& spec() const { return spec_; }
  const BigRational& constant() const { return constant_; }
  const BigRational& normalization() const { return normalization_; }
  /// 1-based, as in w_1..w_n.
  const LogPolyExpansion& weight(int k) const;

  /// Delta(y) det[w_k(y_j)] / Z_n on (0,1)^n, zero outside.
  double density(std::span<const double> y) const;

 private:
  ProductSpec spec_;
  BigRational constant_;
  BigRational normalization_;
  std::vector<LogPolyExpansion> weights_;
  long double inverse_normalization_ = 0.0L;
};

namespace ensembles {

double joint_density_product(const ProductSpec& spec, std::span<const double> y);

/// [n! prod_{j=1}^n B(j+nu, m-n-nu)]^{-1}
BigRational fixed_x_constant(int m, int n, int nu);

/// Density of the squared singular values of T X for fixed X with squared
/// singular values x, T an (n+nu) x n truncation of an m x m Haar unitary:
///   C prod x_j^{n-m} prod y_j^nu det[(x_k - y_j)_+^{m-n-nu-1}] Delta(y) / Delta(x).
/// Zero when some y_j <= 0. Throws DegenerateSpectrumError for x gaps below 1e-8.
double joint_density_fixed_x(std::span<const double> x, std::span<const double> y, int m, int n,
                             int nu);

/// int_0^1 x^nu (1-x)^mu f(y/x) dx/x. The integration is split at x = y,
/// where functions supported on (0,1) switch off.
double beta_mellin_transform(const RealFunction& f, int nu, int mu, double y,
                             double abs_tolerance = 1e-10);

/// int_0^inf x^nu e^{-x} f(y/x) dx/x, split at x = y.
double gamma_mellin_transform(const RealFunction& f, int nu, double y, double abs_tolerance = 1e-10);

/// sup over `ys` of |m^nu B(y/m) - G(y)| where B is the Beta transform with
/// mu = m - n - nu - 1 and G the Gamma transform, both of f.
double mellin_bridge_distance(const RealFunction& f, int nu, int n, int m, std::span<const double> ys);

/// n! det[ \int phi_k psi_j w dx ] over (a, b); b may be +infinity.
double andreief_gram(std::span<const RealFunction> phi, std::span<const RealFunction> psi,
                     const RealFunction& weight, double a, double b);

/// Monte Carlo estimate of the n-fold integral
///   \int det[phi_k(x_j)] det[psi_k(x_j)] prod w(x_j) dx
/// by uniform sampling of the finite box (a, b)^n.
McEstimate andreief_lhs_mc(std::span<const RealFunction> phi, std::span<const RealFunction> psi,
                           const RealFunction& weight, double a, double b,
                           const sampling::McOptions& options);

using Kernel2 = std::function<double(double, double)>;

/// g(y1, y2) = \int\int prod_i x_i^nu (1-x_i)^mu f(y1/x1, y2/x2) dx1/x1 dx2/x2
/// over (0,1)^2 by a tensor Gauss-Legendre rule whose panels break at y1 and
/// y2. The same 1-d rule is used in both directions, so g(y2, y1) = -g(y1, y2)
/// up to rounding. Throws AsymmetryError when f(u,v) != -f(v,u) at probe points.
double debruijn_transform(const Kernel2& f, int nu, int mu, double y1, double y2);

}  // namespace ensembles
}  // namespace truncprod
