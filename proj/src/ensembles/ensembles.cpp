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

#include "truncprod/ensembles.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "truncprod/errors.hpp"
#include "truncprod/quadrature.hpp"

namespace truncprod {
namespace ensembles {
namespace {

void check_index(const ProductSpec& spec, int k) {
  if (k < 1 || k > spec.n) throw IndexError("weight index k must satisfy 1 <= k <= n");
}

BigRational rational_factorial(long k) { return BigRational(factorial(static_cast<unsigned>(k))); }

// B(a, b) for positive integers.
BigRational beta_integer(long a, long b) {
  return rational_factorial(a - 1) * rational_factorial(b - 1) / rational_factorial(a + b - 1);
}

}  // namespace

BigRational weight_constant(const ProductSpec& spec) {
  spec.validate();
  BigRational c = rational_factorial(spec.m[0] - 2 * spec.n - spec.nu[0]);
  for (int j = 1; j < spec.r(); ++j) c *= rational_factorial(spec.m[j] - spec.n - spec.nu[j] - 1);
  return c;
}

RationalFunction weight_mellin(const ProductSpec& spec, int k) {
  spec.validate();
  check_index(spec, k);
  RationalFunction f = RationalFunction::gamma_ratio(spec.nu[0] + k - 1, spec.m[0] - 2 * spec.n + k);
  for (int j = 1; j < spec.r(); ++j) f = f * RationalFunction::gamma_ratio(spec.nu[j], spec.m[j] - spec.n);
  return ExactPolynomial::constant(weight_constant(spec)) * f;
}

LogPolyExpansion weight_wk(const ProductSpec& spec, int k) {
  return special::residue_expansion(weight_mellin(spec, k));
}

Complex weight_moment(const ProductSpec& spec, int k, Complex s) {
  const RationalFunction f = weight_mellin(spec, k);
  for (const auto& pole : f.poles()) {
    if (s == Complex(static_cast<double>(pole.location), 0.0)) {
      throw PoleError("weight_moment: s is a pole of the Mellin transform");
    }
  }
  if (!(s.real() > 0.0)) throw DomainError("weight_moment: requires Re s > 0");
  return f(s);
}

BigRational weight_moment(const ProductSpec& spec, int k, long s) {
  const RationalFunction f = weight_mellin(spec, k);
  for (const auto& pole : f.poles()) {
    if (pole.location == s) throw PoleError("weight_moment: s is a pole of the Mellin transform");
  }
  if (s <= 0) throw DomainError("weight_moment: requires s > 0");
  return f(BigRational(s));
}

BigRational normalization_Zn(const ProductSpec& spec) {
  spec.validate();
  const int n = spec.n;
  std::vector<std::vector<BigRational>> moments(static_cast<std::size_t>(n),
                                                std::vector<BigRational>(static_cast<std::size_t>(n)));
  for (int k = 1; k <= n; ++k) {
    const RationalFunction f = weight_mellin(spec, k);
    for (int j = 1; j <= n; ++j) moments[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)] = f(BigRational(j));
  }
  const BigRational z = rational_factorial(n) * determinant(std::move(moments));
  if (z <= 0) throw NumericalError("normalization_Zn: moment determinant is not positive");
  return z;
}

double joint_density_product(const ProductSpec& spec, std::span<const double> y) {
  return WeightSystem(spec).density(y);
}

BigRational fixed_x_constant(int m, int n, int nu) {
  if (n < 1 || nu < 0 || m < n + nu + 1) throw SpecError("fixed-X density requires m >= n + nu + 1");
  BigRational denominator = rational_factorial(n);
  for (int j = 1; j <= n; ++j) denominator *= beta_integer(j + nu, m - n - nu);
  return 1 / denominator;
}

double joint_density_fixed_x(std::span<const double> x, std::span<const double> y, int m, int n,
                             int nu) {
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n) {
    throw DimensionError("joint_density_fixed_x: x and y must have length n");
  }
  const double constant = to_double(fixed_x_constant(m, n, nu));
  for (double v : x) {
    if (!(v > 0.0)) throw DomainError("joint_density_fixed_x: x must be positive");
  }
  sampling::require_distinct(x, 1e-8, "joint_density_fixed_x");
  for (double v : y) {
    if (!(v > 0.0)) return 0.0;
  }
  const int power = m - n - nu - 1;
  Eigen::MatrixXd e(n, n);
  double prefactor = constant;
  for (int j = 0; j < n; ++j) {
    prefactor *= std::pow(x[static_cast<std::size_t>(j)], n - m) * std::pow(y[static_cast<std::size_t>(j)], nu);
    for (int k = 0; k < n; ++k) {
      const double d = x[static_cast<std::size_t>(k)] - y[static_cast<std::size_t>(j)];
      e(j, k) = d > 0.0 ? std::pow(d, power) : 0.0;
    }
  }
  return prefactor * e.determinant() * sampling::vandermonde(y) / sampling::vandermonde(x);
}

double beta_mellin_transform(const RealFunction& f, int nu, int mu, double y, double abs_tolerance) {
  if (nu < 0 || mu < 0) throw DomainError("beta_mellin_transform: nu and mu must be non-negative");
  if (!(y > 0.0)) throw DomainError("beta_mellin_transform: requires y > 0");
  auto integrand = [&](double x) {
    if (x <= 0.0) return 0.0;
    return std::pow(x, nu - 1) * std::pow(1.0 - x, mu) * f(y / x);
  };
  const double cuts[] = {y};
  return special::integrate(integrand, 0.0, 1.0, abs_tolerance, cuts);
}

double gamma_mellin_transform(const RealFunction& f, int nu, double y, double abs_tolerance) {
  if (nu < 0) throw DomainError("gamma_mellin_transform: nu must be non-negative");
  if (!(y > 0.0)) throw DomainError("gamma_mellin_transform: requires y > 0");
  auto integrand = [&](double x) {
    if (x <= 0.0) return 0.0;
    return std::pow(x, nu - 1) * std::exp(-x) * f(y / x);
  };
  const double cuts[] = {y, std::max(y, 1.0) + 40.0};
  return special::integrate(integrand, 0.0, INFINITY, abs_tolerance, cuts);
}

double mellin_bridge_distance(const RealFunction& f, int nu, int n, int m, std::span<const double> ys) {
  const int mu = m - n - nu - 1;
  if (mu < 0) throw SpecError("mellin_bridge_distance: requires m >= n + nu + 1");
  double sup = 0.0;
  for (double y : ys) {
    const double beta = std::pow(static_cast<double>(m), nu) * beta_mellin_transform(f, nu, mu, y / m, 1e-11);
    const double gamma = gamma_mellin_transform(f, nu, y, 1e-11);
    sup = std::max(sup, std::abs(beta - gamma));
  }
  return sup;
}

double andreief_gram(std::span<const RealFunction> phi, std::span<const RealFunction> psi,
                     const RealFunction& weight, double a, double b) {
  if (phi.size() != psi.size() || phi.empty()) throw DimensionError("andreief_gram: size mismatch");
  const auto n = static_cast<Eigen::Index>(phi.size());
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      gram(k, j) = special::integrate(
          [&](double x) { return phi[static_cast<std::size_t>(k)](x) * psi[static_cast<std::size_t>(j)](x) * weight(x); },
          a, b, 1e-12);
    }
  }
  return std::tgamma(static_cast<double>(n) + 1.0) * gram.determinant();
}

McEstimate andreief_lhs_mc(std::span<const RealFunction> phi, std::span<const RealFunction> psi,
                           const RealFunction& weight, double a, double b,
                           const sampling::McOptions& options) {
  if (phi.size() != psi.size() || phi.empty()) throw DimensionError("andreief_lhs_mc: size mismatch");
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
    throw DomainError("andreief_lhs_mc: requires a finite interval");
  }
  const auto n = static_cast<Eigen::Index>(phi.size());
  const double volume = std::pow(b - a, static_cast<double>(n));
  return sampling::monte_carlo(
             [&](const RngStream& rng) {
               auto engine = rng.engine();
               std::uniform_real_distribution<double> uniform(a, b);
               Eigen::MatrixXd p(n, n), q(n, n);
               double w = volume;
               for (Eigen::Index j = 0; j < n; ++j) {
                 const double x = uniform(engine);
                 w *= weight(x);
                 for (Eigen::Index k = 0; k < n; ++k) {
                   p(j, k) = phi[static_cast<std::size_t>(k)](x);
                   q(j, k) = psi[static_cast<std::size_t>(k)](x);
                 }
               }
               return sampling::McSample{w * p.determinant() * q.determinant(), false};
             },
             options)
      .estimate;
}

double debruijn_transform(const Kernel2& f, int nu, int mu, double y1, double y2) {
  if (nu < 0 || mu < 0) throw DomainError("debruijn_transform: nu and mu must be non-negative");
  if (!(y1 > 0.0) || !(y2 > 0.0)) throw DomainError("debruijn_transform: requires y1, y2 > 0");
  const double probes[] = {0.13, 0.37, 0.71, 0.93, 1.7, 3.1};
  for (double u : probes) {
    for (double v : probes) {
      const double fuv = f(u, v);
      const double fvu = f(v, u);
      if (std::abs(fuv + fvu) > 1e-12 * std::max(1.0, std::abs(fuv))) {
        throw AsymmetryError("debruijn_transform: kernel is not antisymmetric");
      }
    }
  }

  // One rule on (0,1): geometric panels towards 0, then uniform panels
  // between the sorted breakpoints.
  const double lo = std::min({y1, y2, 1.0});
  const double hi = std::min(std::max(y1, y2), 1.0);
  std::vector<double> cuts;
  for (int k = 40; k >= 1; --k) cuts.push_back(lo * std::ldexp(1.0, -k));
  cuts.push_back(lo);
  if (hi > lo) cuts.push_back(hi);
  if (cuts.back() < 1.0) cuts.push_back(1.0);
  std::vector<double> nodes, weights;
  const auto& gl = special::gauss_legendre(24);
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const int panels = cuts[c] >= lo ? 4 : 1;
    for (int p = 0; p < panels; ++p) {
      const double a = cuts[c] + (cuts[c + 1] - cuts[c]) * p / panels;
      const double b = cuts[c] + (cuts[c + 1] - cuts[c]) * (p + 1) / panels;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double x = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
        nodes.push_back(x);
        weights.push_back(0.5 * (b - a) * gl.weights[i] * std::pow(x, nu - 1) * std::pow(1.0 - x, mu));
      }
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) row += weights[j] * f(y1 / nodes[i], y2 / nodes[j]);
    total += weights[i] * row;
  }
  return total;
}

}  // namespace ensembles

WeightSystem::WeightSystem(ProductSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  constant_ = ensembles::weight_constant(spec_);
  for (int k = 1; k <= spec_.n; ++k) weights_.push_back(ensembles::weight_wk(spec_, k));
  normalization_ = ensembles::normalization_Zn(spec_);
  inverse_normalization_ = static_cast<long double>(1 / to_high(normalization_));
}

const LogPolyExpansion& WeightSystem::weight(int k) const {
  if (k < 1 || k > spec_.n) throw IndexError("WeightSystem::weight: index out of range");
  return weights_[static_cast<std::size_t>(k - 1)];
}

double WeightSystem::density(std::span<const double> y) const {
  const auto n = static_cast<std::size_t>(spec_.n);
  if (y.size() != n) throw DimensionError("density: y must have length n");
  for (double v : y) {
    if (!(v > 0.0 && v < 1.0)) return 0.0;
  }
  using Matrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix w(spec_.n, spec_.n);
  long double vandermonde = 1.0L;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      w(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = weights_[k](y[j]);
    }
    for (std::size_t i = 0; i < j; ++i) vandermonde *= static_cast<long double>(y[j]) - y[i];
  }
  const long double det = n == 1 ? w(0, 0) : w.partialPivLu().determinant();
  return static_cast<double>(vandermonde * det * inverse_normalization_);
}

}  // namespace truncprod
