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

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "truncprod/numeric.hpp"

namespace truncprod {

using ComplexMatrix = Eigen::MatrixXcd;

/// Parameters of Y = T_r ... T_1 where T_j is the (n + nu_j) x (n + nu_{j-1})
/// top-left block of an m_j x m_j Haar unitary (nu_0 = 0).
struct ProductSpec {
  int n = 1;
  std::vector<int> nu;
  std::vector<int> m;

  int r() const { return static_cast<int>(nu.size()); }
  /// m_1 >= 2n + nu_1 and m_j >= n + nu_j + 1 for j >= 2; throws SpecError.
  void validate() const;
};

/// Identifies an independent random stream. Each (seed, stream) pair seeds its
/// own engine, so Monte Carlo sample i always uses stream i whatever the
/// thread layout.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  std::mt19937_64 engine() const;
};

/// Monte Carlo mean with standard error sample_std / sqrt(samples).
struct McEstimate {
  Complex mean{0.0, 0.0};
  double std_error = 0.0;
  std::size_t samples = 0;

  /// |mean - exact| / std_error; 0 when both the deviation and the error vanish.
  double z_score(Complex exact) const;
};

namespace sampling {

/// i.i.d. complex Gaussians with N(0, 1/2) real and imaginary parts.
ComplexMatrix sample_ginibre(int rows, int cols, std::mt19937_64& engine);
ComplexMatrix sample_ginibre(int rows, int cols, const RngStream& rng);

/// Haar unitary by QR of a Ginibre matrix with the diagonal of R made real positive.
ComplexMatrix sample_haar_unitary(int m, std::mt19937_64& engine);
ComplexMatrix sample_haar_unitary(int m, const RngStream& rng);

/// Top-left rows x cols block of an m x m Haar unitary; requires m > max(rows, cols).
ComplexMatrix sample_truncation(int m, int rows, int cols, std::mt19937_64& engine);
ComplexMatrix sample_truncation(int m, int rows, int cols, const RngStream& rng);

/// Ascending squared singular values of T_r ... T_1, all in [0, 1].
std::vector<double> sample_product_squared_singvals(const ProductSpec& spec, const RngStream& rng);

/// Number of values within `tolerance` of 1. For m_1 < 2n + nu_1 a single
/// truncation has squared singular values pinned at 1.
std::size_t count_unit_values(std::span<const double> values, double tolerance = 1e-10);

/// Heaviside function of a Hermitian matrix: true iff a Cholesky factorization
/// succeeds (strictly positive definite). Throws DomainError when H is not
/// Hermitian within 1e-12.
bool theta_positive_definite(const ComplexMatrix& h);

/// Hermitian matrix with the given eigenvalues, rotated by `rotation` if nonempty.
ComplexMatrix hermitian_from_spectrum(std::span<const double> eigenvalues,
                                      const ComplexMatrix& rotation = {});

struct McOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Per-sample value plus a flag counted separately (e.g. indicator rejection).
struct McSample {
  Complex value{0.0, 0.0};
  bool flagged = false;
};

struct McResult {
  McEstimate estimate;
  std::size_t flagged = 0;
};

/// Runs `draw(RngStream{seed, i})` for i < samples. Samples are grouped in
/// fixed blocks reduced in block order, so results are bit-identical for any
/// thread count.
McResult monte_carlo(const std::function<McSample(const RngStream&)>& draw, const McOptions& options);

/// Estimate of \int det(A - U B U*)^p theta(A - U B U*) dU over Haar U in U(n).
/// `flagged` counts the draws where the indicator vanished.
McResult mc_group_integral(const ComplexMatrix& a, const ComplexMatrix& b, int p,
                           const McOptions& options);

/// c_{n,p} = prod_{j=0}^{n-1} binom(p+n-1, j)^{-1}
BigRational group_integral_constant(int n, int p);

/// c_{n,p} det[(a_j - b_k)_+^{p+n-1}] / (Delta(a) Delta(b)).
/// Throws DegenerateSpectrumError if a or b has two entries closer than 1e-8.
double group_integral_rhs(std::span<const double> a, std::span<const double> b, int p);

/// The same integral in the form det[(1 - s_j t_k)^{-alpha}] / (Delta(s) Delta(t))
/// / ctilde with alpha = -(p+n-1), s = 1/a, t = b, times det(A)^p. Requires
/// positive a and |b_k / a_j| < 1, where the indicator is identically one.
double gross_richards_rhs(std::span<const double> a, std::span<const double> b, int p);

/// Estimate of \int exp(t Tr A U B U*) dU.
McResult mc_hciz(const ComplexMatrix& a, const ComplexMatrix& b, Complex t, const McOptions& options);

/// (prod_{j=1}^{n-1} j!) det[exp(t a_j b_k)] / (t^{(n^2-n)/2} Delta(a) Delta(b)).
Complex hciz_exact(std::span<const double> a, std::span<const double> b, Complex t);

/// Delta(x) = prod_{j<k} (x_k - x_j).
double vandermonde(std::span<const double> x);

/// Throws DegenerateSpectrumError when two values are closer than `gap`.
void require_distinct(std::span<const double> x, double gap, const char* what);

}  // namespace sampling
}  // namespace truncprod
