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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "truncprod/errors.hpp"
#include "truncprod/hardedge.hpp"
#include "truncprod/quadrature.hpp"

using namespace truncprod;
using namespace truncprod::hardedge;

namespace {

std::vector<double> log_grid(double a, double b, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(a * std::pow(b / a, static_cast<double>(i) / (count - 1)));
  return out;
}

// sum_{k,l} (-1)^{k+l} x^k y^{l+nu} / (k! (k+nu)! l! (l+nu)! (k+l+nu+1))
double bessel_series(int nu, double x, double y) {
  std::vector<long double> a, b;
  long double ta = 1.0L, tb = std::pow(static_cast<long double>(y), nu);
  for (int j = 1; j <= nu; ++j) {
    ta /= j;
    tb /= j;
  }
  for (int k = 0; k < 80; ++k) {
    a.push_back(ta);
    b.push_back(tb);
    ta *= -static_cast<long double>(x) / ((k + 1.0L) * (k + 1.0L + nu));
    tb *= -static_cast<long double>(y) / ((k + 1.0L) * (k + 1.0L + nu));
  }
  long double sum = 0.0L;
  for (int k = 0; k < 80; ++k) {
    for (int l = 0; l < 80; ++l) sum += a[k] * b[l] / (k + l + nu + 1.0L);
  }
  return static_cast<double>(sum);
}

// int_0^1 J_nu(2 sqrt(u x)) J_nu(2 sqrt(u t)) du in closed form.
double bessel_block(int nu, double x, double t) {
  const double a = 2.0 * std::sqrt(x), b = 2.0 * std::sqrt(t);
  auto j_below = [nu](double z) { return nu == 0 ? -std::cyl_bessel_j(1.0, z) : std::cyl_bessel_j(nu - 1.0, z); };
  return 2.0 * (b * std::cyl_bessel_j(nu, a) * j_below(b) - a * j_below(a) * std::cyl_bessel_j(nu, b)) /
         (a * a - b * b);
}

double max_abs_diff(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  }
  return d;
}

}  // namespace

TEST_CASE("hard edge spec validation") {
  CHECK_NOTHROW(HardEdgeSpec({0}, {}, {}).validate());
  CHECK_NOTHROW(HardEdgeSpec({0, 1}, {2}, {2}).validate());
  CHECK_THROWS_AS(HardEdgeSpec({}, {}, {}).validate(), SpecError);
  CHECK_THROWS_AS(HardEdgeSpec({0, -1}, {}, {}).validate(), SpecError);
  CHECK_THROWS_AS(HardEdgeSpec({0, 0}, {1}, {1}).validate(), SpecError);
  CHECK_THROWS_AS(HardEdgeSpec({0, 0}, {3}, {1}).validate(), SpecError);
  CHECK_THROWS_AS(HardEdgeSpec({0, 1}, {2}, {1}).validate(), SpecError);  // mu <= nu
  CHECK_THROWS_AS(HardEdgeSpec({0, 0, 0}, {3, 2}, {1, 1}).validate(), SpecError);
  CHECK_THROWS_AS(HardEdgeSpec({0, 0}, {2}, {}).validate(), SpecError);
}

TEST_CASE("scaling constant") {
  for (int n = 1; n <= 5; ++n) {
    for (int m = 2 * n; m <= 3 * n + 2; ++m) CHECK(scaling_constant({n, {0}, {m}}, {}) == n * (m - n));
  }
  CHECK(scaling_constant({2, {0, 0}, {7, 8}}, {2}) == 10.0);
  CHECK_THROWS_AS(scaling_constant({2, {0, 0}, {7, 8}}, {1}), SpecError);
  CHECK_THROWS_AS(scaling_constant({2, {0, 0}, {7, 8}}, {1, 2}), SpecError);
  CHECK_THROWS_AS(scaling_constant({2, {0, 0}, {7, 8}}, {3}), SpecError);
  // m_2 - n = 1 must exceed nu_2 = 1
  CHECK_THROWS_AS(scaling_constant({2, {0, 1}, {7, 3}}, {2}), SpecError);
}

TEST_CASE("r = 1 limit is the Bessel kernel") {
  const auto grid = log_grid(0.1, 10.0, 9);
  for (int nu = 0; nu <= 2; ++nu) {
    CAPTURE(nu);
    const auto k = limit_kernel_grid({{nu}, {}, {}}, grid, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const double oracle = bessel_series(nu, grid[i], grid[j]);
        CAPTURE(grid[i]);
        CAPTURE(grid[j]);
        CHECK(std::abs(k[i][j] - oracle) <= 1e-6 * std::abs(oracle));
      }
    }
  }
  CHECK(limit_kernel({{0}, {}, {}}, 1.3, 0.4) == doctest::Approx(bessel_series(0, 1.3, 0.4)).epsilon(1e-9));
}

TEST_CASE("vertical line against the Hankel loop") {
  const auto grid = log_grid(0.2, 8.0, 5);
  LimitKernelOptions line;
  line.s_contour = SContour::vertical_line;
  for (const HardEdgeSpec& h : {HardEdgeSpec{{0, 0}, {}, {}}, HardEdgeSpec{{1, 0, 2}, {}, {}},
                                HardEdgeSpec{{0, 1, 0}, {3}, {2}}}) {
    CHECK(max_abs_diff(limit_kernel_grid(h, grid, grid), limit_kernel_grid(h, grid, grid, line)) < 1e-7);
  }
  CHECK_THROWS_AS(limit_kernel({{0}, {}, {}}, 1.0, 2.0, line), DomainError);
  CHECK_THROWS_AS(limit_kernel({{0, 0}, {2}, {1}}, 1.0, 2.0, line), DomainError);
}

TEST_CASE("limit kernel domain") {
  CHECK_THROWS_AS(limit_kernel({{0}, {}, {}}, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(limit_kernel({{0}, {}, {}}, 1.0, -2.0), DomainError);
  CHECK_THROWS_AS(limit_kernel({{0, 0}, {1}, {1}}, 1.0, 1.0), SpecError);
  LimitKernelOptions few;
  few.nodes = 8;
  CHECK_THROWS_AS(limit_kernel({{0}, {}, {}}, 1.0, 1.0, few), DomainError);
}

TEST_CASE("diagonal is non-negative") {
  const auto grid = log_grid(0.1, 10.0, 25);
  for (const HardEdgeSpec& h : {HardEdgeSpec{{0}, {}, {}}, HardEdgeSpec{{2}, {}, {}}, HardEdgeSpec{{0, 1}, {}, {}},
                                HardEdgeSpec{{0, 0}, {2}, {1}}, HardEdgeSpec{{1, 0, 0}, {2}, {3}}}) {
    const auto k = limit_kernel_grid(h, grid, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(k[i][i] >= -1e-8);
  }
}

TEST_CASE("q = 1 is a finite rank perturbation") {
  const auto grid = log_grid(0.2, 8.0, 12);
  const auto base = limit_kernel_grid({{0}, {}, {}}, grid, grid);
  for (int mu : {1, 3}) {
    CAPTURE(mu);
    const HardEdgeSpec h{{0, 0}, {2}, {mu}};
    const auto k = limit_kernel_grid(h, grid, grid);
    std::vector<std::vector<double>> d(grid.size(), std::vector<double>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = 0; j < grid.size(); ++j) d[i][j] = k[i][j] - base[i][j];
    }
    const int degree = rt_polynomial(h).degree();
    CHECK(degree == mu);
    CHECK(numerical_rank(d, 1e-6) <= degree);
    CHECK(numerical_rank(d, 1e-6) >= 1);
  }
}

TEST_CASE("R(t)") {
  CHECK(rt_polynomial({{0, 0}, {2}, {1}}) == ExactPolynomial::linear(-1));
  CHECK(rt_polynomial({{0}, {}, {}}) == ExactPolynomial::constant(1));
  const HardEdgeSpec h{{1, 2, 0, 1}, {2, 4}, {5, 3}};
  const ExactPolynomial r = rt_polynomial(h);
  CHECK(r.degree() == (5 - 2) + (3 - 1));
  // Gamma(t+6) Gamma(t+4) / (Gamma(t+3) Gamma(t+2)) at t = 2
  CHECK(r(BigRational(2)) == BigRational(7 * 6 * 5 * 5 * 4));
  CHECK_THROWS_AS(rt_polynomial({{0, 2}, {2}, {2}}), SpecError);
}

TEST_CASE("factored form equals the standard form") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 6.0);
  std::vector<double> xs, ys;
  for (int i = 0; i < 4; ++i) {
    xs.push_back(u(rng));
    ys.push_back(u(rng));
  }
  for (const HardEdgeSpec& h : {HardEdgeSpec{{0, 0}, {2}, {1}}, HardEdgeSpec{{1, 0, 2}, {3}, {4}},
                                HardEdgeSpec{{0, 1, 0}, {2, 3}, {2, 2}}}) {
    CHECK(max_abs_diff(limit_kernel_grid(h, xs, ys), limit_kernel_factored_grid(h, xs, ys)) < 1e-8);
  }
}

TEST_CASE("finite n converges to the limit") {
  const HardEdgeFamily family{{{0}, {}, {}}, {3}, {0}};
  CHECK(family.at(8).m == std::vector<int>{24});
  const auto rows = convergence_experiment(family, {8, 16, 24}, {0.5, 1.0, 2.0, 4.0});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].c_n == 128.0);
  CHECK(rows[2].c_n == 1152.0);
  CHECK(decreasing_within(rows));
  CHECK(rows[2].sup_error < rows[0].sup_error);
  CHECK(rows[2].sup_error < 1e-2);

  CHECK(decreasing_within({{1, 1, 1.0}, {2, 1, 1.15}}));
  CHECK_FALSE(decreasing_within({{1, 1, 1.0}, {2, 1, 1.25}}));
}

TEST_CASE("Gamma ratio asymptotics") {
  const Complex s(-0.5, 0.7), t(0.8, -0.3);
  const Complex sines = std::sin(std::numbers::pi * s) / std::sin(std::numbers::pi * t);
  double error[2];
  for (int i = 0; i < 2; ++i) {
    const double n = 1000.0 * (i + 1);
    error[i] = std::abs(scaled_gamma_ratio(s, t, -n) / sines - 1.0);
    CHECK(error[i] < 10.0 / n);
    CHECK(std::abs(scaled_gamma_ratio(s, t, n) - 1.0) < 10.0 / n);
  }
  CHECK(error[0] / error[1] == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("x = y is finite for fixed n") {
  const ProductSpec spec{4, {0}, {12}};
  const auto k = scaled_finite_kernel_grid(spec, {}, {0.5, 2.0}, {0.5, 2.0});
  CHECK(std::isfinite(k[0][0]));
  CHECK(std::isfinite(k[1][1]));
  CHECK(k[0][0] > 0.0);
  CHECK(std::isfinite(limit_kernel({{1, 0}, {}, {}}, 3.0, 3.0)));
}

TEST_CASE("symmetric in the nu parameters") {
  const auto grid = log_grid(0.2, 6.0, 5);
  const auto a = limit_kernel_grid({{0, 1, 3}, {}, {}}, grid, grid);
  CHECK(max_abs_diff(a, limit_kernel_grid({{3, 0, 1}, {}, {}}, grid, grid)) < 1e-9);
  CHECK(max_abs_diff(a, limit_kernel_grid({{1, 3, 0}, {}, {}}, grid, grid)) < 1e-9);
}

TEST_CASE("doubling the quadrature controls") {
  const auto grid = log_grid(0.1, 10.0, 6);
  LimitKernelOptions finer;
  finer.nodes = 32;
  finer.decay = 60.0;
  for (const HardEdgeSpec& h : {HardEdgeSpec{{0}, {}, {}}, HardEdgeSpec{{0, 2}, {}, {}},
                                HardEdgeSpec{{1, 0, 0}, {2}, {3}}}) {
    const auto a = limit_kernel_grid(h, grid, grid);
    const auto b = limit_kernel_grid(h, grid, grid, finer);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = 0; j < grid.size(); ++j) {
        CHECK(std::abs(a[i][j] - b[i][j]) < LimitKernelOptions{}.tolerance * std::max(1.0, std::abs(b[i][j])));
      }
    }
  }
}

TEST_CASE("reproducing property of the Bessel limit") {
  // [0, 30] with the limit kernel, [30, 10^4] with the closed form in
  // u = sqrt(t), and the mean of the t^{-3/2} tail beyond.
  const double cut = 30.0, far = 1e4;
  const auto& gl = special::gauss_legendre(24);
  std::vector<double> ts, ws;
  for (double a = 0.0; a < std::sqrt(cut) - 1e-12; a += 0.5) {
    const double b = std::min(a + 0.5, std::sqrt(cut));
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double v = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
      ts.push_back(v * v);
      ws.push_back((b - a) * gl.weights[i] * v);
    }
  }
  std::vector<double> breaks;
  for (double v = std::sqrt(cut); v < std::sqrt(far); v += 0.5) breaks.push_back(v);

  const std::vector<double> xs{0.7, 3.1, 1.5}, ys{1.9, 0.4, 1.5};
  for (int nu : {0, 1}) {
    const HardEdgeSpec h{{nu}, {}, {}};
    const auto left = limit_kernel_grid(h, xs, ts);
    const auto right = limit_kernel_grid(h, ts, ys);
    const auto direct = limit_kernel_grid(h, xs, ys);
    for (std::size_t p = 0; p < xs.size(); ++p) {
      const double x = xs[p], y = ys[p], k = direct[p][p];
      CAPTURE(nu);
      CAPTURE(x);
      CAPTURE(y);
      double head = 0.0;
      for (std::size_t i = 0; i < ts.size(); ++i) head += ws[i] * left[p][i] * right[i][p];
      const double middle = special::integrate(
          [&](double v) { return 2.0 * v * bessel_block(nu, x, v * v) * bessel_block(nu, v * v, y); },
          std::sqrt(cut), std::sqrt(far), 1e-9, breaks);
      const double tail = std::cyl_bessel_j(nu, 2.0 * std::sqrt(x)) * std::cyl_bessel_j(nu, 2.0 * std::sqrt(y)) /
                          (std::numbers::pi * std::sqrt(far));
      const double total = head + std::pow(y / x, 0.5 * nu) * (middle + tail);
      CHECK(std::abs(total - k) < 1e-4);
      // the truncated integral alone misses an O(cut^{-1/2}) piece
      CHECK(std::abs(head - k) > std::abs(total - k));
    }
  }
}
