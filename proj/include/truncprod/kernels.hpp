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

#include "truncprod/log_poly.hpp"
#include "truncprod/numeric.hpp"
#include "truncprod/polynomial.hpp"
#include "truncprod/rational_function.hpp"
#include "truncprod/sampling.hpp"

namespace truncprod {
namespace kernels {

/// P_k(x) = sum_{i=0}^k (-1)^{k-i} / (i! (k-i)!) prod_j (m_j-n+i)! / (nu_j+i)! x^i
ExactPolynomial pk_coefficients(const ProductSpec& spec, int k);

/// (s-k)_k prod_j Gamma(s+nu_j) / Gamma(s+m_j-n) as a rational function of s.
RationalFunction qk_mellin(const ProductSpec& spec, int k);

/// Q_k on (0,1), zero elsewhere.
LogPolyExpansion qk_expansion(const ProductSpec& spec, int k);

/// int_0^1 y^{s-1} Q_k(y) dy. Throws PoleError at a pole and DomainError for Re s <= 0.
BigRational qk_moment(const ProductSpec& spec, int k, long s);
Complex qk_moment(const ProductSpec& spec, int k, Complex s);

}  // namespace kernels

/// P_0..P_{n-1} and Q_0..Q_{n-1} of one product ensemble.
class BiorthogonalSystem {
 public:
  explicit BiorthogonalSystem(ProductSpec spec);

  const ProductSpec& spec() const { return spec_; }
  int n() const { return spec_.n; }
  const ExactPolynomial& p(int k) const;
  const LogPolyExpansion& q(int k) const;

  /// Horner in long double on coefficients rounded once.
  double p_value(int k, double x) const;

  /// int_0^1 P_j Q_k as sum_i p_{j,i} qk_moment(k, i+1), exact.
  std::vector<std::vector<BigRational>> gram() const;

  /// max_k sum_i |p_{k,i}| / |P_k(1)|: the worst cancellation factor of the
  /// rounded coefficients on [0,1].
  double condition_estimate() const { return condition_; }

 private:
  ProductSpec spec_;
  std::vector<ExactPolynomial> p_;
  std::vector<LogPolyExpansion> q_;
  std::vector<std::vector<long double>> p_rounded_;
  double condition_ = 1.0;
};

namespace kernels {

/// sum_{k<n} P_k(x) Q_k(y).
double kernel_kn_sum(const BiorthogonalSystem& system, double x, double y);

/// The double contour integral over a Hankel loop C (crossing Re s = -1/2,
/// legs at Im s = +-1/4) and the rectangle [-1/4, n+1/4] x [-1/2, 1/2] in t
/// with m_0 = nu_0 = 0. The node count doubles until two values agree to
/// `tolerance * max(1, |K|)`, or to 1e3 eps times the absolute sum of the
/// terms when cancellation (y near 1) puts that higher; throws
/// ConvergenceError after three doublings.
double kernel_kn_contour(const ProductSpec& spec, double x, double y, double tolerance = 1e-10);

/// |LHS - RHS| / max(1, |RHS|) for
///   sum_{k<n} (s+1-k)_k / (t-k)_{k+1}
///     = [Gamma(s+1) Gamma(t+1-n) / (Gamma(t+1) Gamma(s+1-n)) - 1] / (s - t).
/// The bracket is (s+1-n)_n / (t+1-n)_n - 1, expanded as a product minus one
/// so that s -> t does not cancel.
double telescoping_check(Complex s, Complex t, int n);

}  // namespace kernels
}  // namespace truncprod
