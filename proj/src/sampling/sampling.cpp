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

#include "truncprod/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "truncprod/errors.hpp"
#include "truncprod/special.hpp"

namespace truncprod {

void ProductSpec::validate() const {
  if (n < 1) throw SpecError("ProductSpec: n must be at least 1");
  if (nu.empty()) throw SpecError("ProductSpec: r must be at least 1");
  if (nu.size() != m.size()) throw SpecError("ProductSpec: nu and m must have the same length");
  for (std::size_t j = 0; j < nu.size(); ++j) {
    if (nu[j] < 0) throw SpecError("ProductSpec: nu_j must be non-negative");
    const int bound = j == 0 ? 2 * n + nu[0] : n + nu[j] + 1;
    if (m[j] < bound) {
      throw SpecError(j == 0 ? "ProductSpec: requires m_1 >= 2n + nu_1"
                             : "ProductSpec: requires m_j >= n + nu_j + 1 for j >= 2");
    }
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 RngStream::engine() const {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL)));
}

double McEstimate::z_score(Complex exact) const {
  const double deviation = std::abs(mean - exact);
  if (std_error == 0.0) return deviation == 0.0 ? 0.0 : INFINITY;
  return deviation / std_error;
}

namespace sampling {

ComplexMatrix sample_ginibre(int rows, int cols, std::mt19937_64& engine) {
  if (rows < 1 || cols < 1) throw DimensionError("sample_ginibre: dimensions must be positive");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(engine);
      const double im = normal(engine);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix sample_ginibre(int rows, int cols, const RngStream& rng) {
  auto engine = rng.engine();
  return sample_ginibre(rows, cols, engine);
}

ComplexMatrix sample_haar_unitary(int m, std::mt19937_64& engine) {
  if (m < 1) throw DimensionError("sample_haar_unitary: size must be positive");
  const ComplexMatrix g = sample_ginibre(m, m, engine);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const auto& packed = qr.matrixQR();
  for (int j = 0; j < m; ++j) {
    const Complex d = packed(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

ComplexMatrix sample_haar_unitary(int m, const RngStream& rng) {
  auto engine = rng.engine();
  return sample_haar_unitary(m, engine);
}

ComplexMatrix sample_truncation(int m, int rows, int cols, std::mt19937_64& engine) {
  if (rows < 1 || cols < 1) throw DimensionError("sample_truncation: dimensions must be positive");
  if (m <= std::max(rows, cols)) {
    throw DimensionError("sample_truncation: requires m > max(rows, cols)");
  }
  return sample_haar_unitary(m, engine).topLeftCorner(rows, cols);
}

ComplexMatrix sample_truncation(int m, int rows, int cols, const RngStream& rng) {
  auto engine = rng.engine();
  return sample_truncation(m, rows, cols, engine);
}

std::vector<double> sample_product_squared_singvals(const ProductSpec& spec, const RngStream& rng) {
  spec.validate();
  auto engine = rng.engine();
  const int n = spec.n;
  ComplexMatrix y = ComplexMatrix::Identity(n, n);
  int previous_nu = 0;
  for (int j = 0; j < spec.r(); ++j) {
    const int rows = n + spec.nu[j];
    const int cols = n + previous_nu;
    y = sample_truncation(spec.m[j], rows, cols, engine) * y;
    previous_nu = spec.nu[j];
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(y);
  const auto& sv = svd.singularValues();
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double v = sv(i) * sv(i);
    if (v > 1.0 + 1e-12) {
      throw NumericalError("sample_product_squared_singvals: squared singular value above 1");
    }
    values[static_cast<std::size_t>(i)] = std::clamp(v, 0.0, 1.0);
  }
  std::sort(values.begin(), values.end());
  return values;
}

std::size_t count_unit_values(std::span<const double> values, double tolerance) {
  return static_cast<std::size_t>(std::count_if(
      values.begin(), values.end(), [&](double v) { return std::abs(1.0 - v) <= tolerance; }));
}

namespace {

void require_hermitian(const ComplexMatrix& h, const char* what) {
  if (h.rows() != h.cols()) throw DimensionError(std::string(what) + ": matrix must be square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError(std::string(what) + ": matrix is not Hermitian");
  }
}

// det(M) for positive definite M via Cholesky; nullopt-like false otherwise.
bool cholesky_determinant(const ComplexMatrix& m, double& det) {
  Eigen::LLT<ComplexMatrix> llt(m);
  if (llt.info() != Eigen::Success) return false;
  det = 1.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < m.rows(); ++i) det *= std::norm(l(i, i));
  return true;
}

struct Accumulator {
  std::size_t count = 0;
  Complex mean{0.0, 0.0};
  double m2 = 0.0;  // sum |x - mean|^2
  std::size_t flagged = 0;

  void add(const McSample& s) {
    ++count;
    const Complex delta = s.value - mean;
    mean += delta / static_cast<double>(count);
    m2 += std::real(std::conj(delta) * (s.value - mean));
    if (s.flagged) ++flagged;
  }

  void merge(const Accumulator& o) {
    if (o.count == 0) return;
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(o.count);
    const Complex delta = o.mean - mean;
    const double total = na + nb;
    mean += delta * (nb / total);
    m2 += o.m2 + std::norm(delta) * na * nb / total;
    count += o.count;
    flagged += o.flagged;
  }
};

constexpr std::size_t kBlockSize = 4096;

}  // namespace

McResult monte_carlo(const std::function<McSample(const RngStream&)>& draw, const McOptions& options) {
  if (options.samples < 100) throw DomainError("monte_carlo: at least 100 samples required");
  const std::size_t blocks = (options.samples + kBlockSize - 1) / kBlockSize;
  std::vector<Accumulator> partial(blocks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      for (std::size_t b = next++; b < blocks; b = next++) {
        const std::size_t begin = b * kBlockSize;
        const std::size_t end = std::min(options.samples, begin + kBlockSize);
        Accumulator acc;
        for (std::size_t i = begin; i < end; ++i) acc.add(draw(RngStream{options.seed, i}));
        partial[b] = acc;
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = blocks;
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  Accumulator total;
  for (const auto& p : partial) total.merge(p);
  McResult result;
  result.estimate.mean = total.mean;
  result.estimate.samples = total.count;
  const double n = static_cast<double>(total.count);
  result.estimate.std_error = std::sqrt(total.m2 / (n - 1.0)) / std::sqrt(n);
  result.flagged = total.flagged;
  return result;
}

bool theta_positive_definite(const ComplexMatrix& h) {
  require_hermitian(h, "theta_positive_definite");
  double det = 0.0;
  return cholesky_determinant(h, det);
}

ComplexMatrix hermitian_from_spectrum(std::span<const double> eigenvalues,
                                      const ComplexMatrix& rotation) {
  const auto n = static_cast<Eigen::Index>(eigenvalues.size());
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = eigenvalues[static_cast<std::size_t>(i)];
  if (rotation.size() == 0) return d;
  if (rotation.rows() != n || rotation.cols() != n) {
    throw DimensionError("hermitian_from_spectrum: rotation size mismatch");
  }
  ComplexMatrix h = rotation * d * rotation.adjoint();
  return 0.5 * (h + h.adjoint());
}

McResult mc_group_integral(const ComplexMatrix& a, const ComplexMatrix& b, int p,
                           const McOptions& options) {
  require_hermitian(a, "mc_group_integral");
  require_hermitian(b, "mc_group_integral");
  if (a.rows() != b.rows()) throw DimensionError("mc_group_integral: A and B differ in size");
  if (p < 0) throw DomainError("mc_group_integral: p must be non-negative");
  if (options.samples < 1000) throw DomainError("mc_group_integral: at least 1000 samples required");
  const int n = static_cast<int>(a.rows());
  return monte_carlo(
      [&](const RngStream& rng) {
        auto engine = rng.engine();
        const ComplexMatrix u = sample_haar_unitary(n, engine);
        ComplexMatrix m = a - u * b * u.adjoint();
        m = 0.5 * (m + m.adjoint());
        double det = 0.0;
        if (!cholesky_determinant(m, det)) return McSample{0.0, true};
        return McSample{std::pow(det, p), false};
      },
      options);
}

double vandermonde(std::span<const double> x) {
  double v = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t k = j + 1; k < x.size(); ++k) v *= x[k] - x[j];
  }
  return v;
}

void require_distinct(std::span<const double> x, double gap, const char* what) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t k = j + 1; k < x.size(); ++k) {
      if (std::abs(x[k] - x[j]) < gap) {
        throw DegenerateSpectrumError(std::string(what) + ": values closer than the 1e-8 gap");
      }
    }
  }
}

BigRational group_integral_constant(int n, int p) {
  if (n < 1 || p < 0) throw DomainError("group_integral_constant: requires n >= 1, p >= 0");
  BigRational c = 1;
  for (int j = 0; j < n; ++j) c /= BigRational(binomial(static_cast<unsigned>(p + n - 1), static_cast<unsigned>(j)));
  return c;
}

double group_integral_rhs(std::span<const double> a, std::span<const double> b, int p) {
  if (a.size() != b.size() || a.empty()) throw DimensionError("group_integral_rhs: size mismatch");
  require_distinct(a, 1e-8, "group_integral_rhs");
  require_distinct(b, 1e-8, "group_integral_rhs");
  const auto n = static_cast<Eigen::Index>(a.size());
  const int power = p + static_cast<int>(n) - 1;
  Eigen::MatrixXd e(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double diff = a[static_cast<std::size_t>(j)] - b[static_cast<std::size_t>(k)];
      e(j, k) = diff > 0.0 ? std::pow(diff, power) : 0.0;
    }
  }
  return to_double(group_integral_constant(static_cast<int>(n), p)) * e.determinant() /
         (vandermonde(a) * vandermonde(b));
}

double gross_richards_rhs(std::span<const double> a, std::span<const double> b, int p) {
  if (a.size() != b.size() || a.empty()) throw DimensionError("gross_richards_rhs: size mismatch");
  require_distinct(a, 1e-8, "gross_richards_rhs");
  require_distinct(b, 1e-8, "gross_richards_rhs");
  const auto n = static_cast<Eigen::Index>(a.size());
  const int power = p + static_cast<int>(n) - 1;  // = -alpha
  std::vector<double> s(a.size());
  double det_a = 1.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] <= 0.0) throw DomainError("gross_richards_rhs: requires positive a");
    s[j] = 1.0 / a[j];
    det_a *= a[j];
  }
  Eigen::MatrixXd e(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double st = s[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k)];
      if (std::abs(st) >= 1.0) throw DomainError("gross_richards_rhs: requires |s_j t_k| < 1");
      e(j, k) = std::pow(1.0 - st, power);
    }
  }
  // ctilde = prod_{j<n} (alpha)_j / j!
  BigRational ctilde = 1;
  for (int j = 0; j < n; ++j) {
    ctilde *= special::pochhammer(BigRational(-power), static_cast<unsigned>(j)) /
              BigRational(factorial(static_cast<unsigned>(j)));
  }
  return std::pow(det_a, p) * e.determinant() / (vandermonde(s) * vandermonde(b)) / to_double(ctilde);
}

McResult mc_hciz(const ComplexMatrix& a, const ComplexMatrix& b, Complex t, const McOptions& options) {
  require_hermitian(a, "mc_hciz");
  require_hermitian(b, "mc_hciz");
  if (a.rows() != b.rows()) throw DimensionError("mc_hciz: A and B differ in size");
  const int n = static_cast<int>(a.rows());
  return monte_carlo(
      [&](const RngStream& rng) {
        auto engine = rng.engine();
        const ComplexMatrix u = sample_haar_unitary(n, engine);
        const double trace = (a * u * b * u.adjoint()).trace().real();
        return McSample{std::exp(t * trace), false};
      },
      options);
}

Complex hciz_exact(std::span<const double> a, std::span<const double> b, Complex t) {
  if (a.size() != b.size() || a.empty()) throw DimensionError("hciz_exact: size mismatch");
  if (t == Complex(0.0, 0.0)) throw DomainError("hciz_exact: t must be nonzero");
  require_distinct(a, 1e-8, "hciz_exact");
  require_distinct(b, 1e-8, "hciz_exact");
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXcd e(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      e(j, k) = std::exp(t * a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k)]);
    }
  }
  double factorials = 1.0;
  for (int j = 1; j < n; ++j) factorials *= std::tgamma(j + 1.0);
  const int power = static_cast<int>((n * n - n) / 2);
  return factorials * e.determinant() / (std::pow(t, power) * vandermonde(a) * vandermonde(b));
}

}  // namespace sampling
}  // namespace truncprod
