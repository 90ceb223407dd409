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

#include "truncprod/contour.hpp"
#include "truncprod/ensembles.hpp"
#include "truncprod/errors.hpp"
#include "truncprod/quadrature.hpp"
#include "truncprod/special.hpp"

using namespace truncprod;
using namespace truncprod::ensembles;
using special::integrate;

namespace {

// Mellin transform of w_k straight from complex Gamma values, no rational
// function algebra involved.
Complex gamma_form_moment(const ProductSpec& spec, int k, Complex s) {
  using special::gamma_ratio;
  const int n = spec.n;
  Complex v = to_double(weight_constant(spec)) * gamma_ratio(spec.nu[0] + k - 1.0 + s, spec.m[0] - 2.0 * n + k + s);
  for (int j = 1; j < spec.r(); ++j) {
    v *= gamma_ratio(static_cast<double>(spec.nu[j]) + s, spec.m[j] - static_cast<double>(n) + s);
  }
  return v;
}

double pole_extent(const ProductSpec& spec, int k) {
  double extent = -(spec.m[0] - 2 * spec.n + k - 1);
  for (int j = 1; j < spec.r(); ++j) extent = std::min(extent, -(spec.m[j] - spec.n - 1.0));
  return extent;
}

double integrate_2d(const std::function<double(double, double)>& f, double a, double b,
                    std::span<const double> cuts = {}) {
  return integrate(
      [&](double y1) { return integrate([&](double y2) { return f(y1, y2); }, a, b, 1e-11, cuts); }, a, b,
      1e-10, cuts);
}

const std::vector<ProductSpec> kSpecs = {
    {1, {0}, {3}}, {2, {1}, {7}}, {2, {1, 0}, {7, 5}}, {3, {0, 0}, {6, 4}}, {2, {0, 2, 1}, {5, 6, 4}},
};

}  // namespace

TEST_CASE("weight constant") {
  CHECK(weight_constant({1, {0}, {3}}) == 1);
  // (7 - 4 - 1)! (5 - 2 - 0 - 1)! = 2! 2!
  CHECK(weight_constant({2, {1, 0}, {7, 5}}) == 4);
}

TEST_CASE("r = 1 weights are Beta densities") {
  const auto w = weight_wk({1, {0}, {3}}, 1);
  REQUIRE(w.terms().size() == 2);
  CHECK(w.terms()[0].power == 0);
  CHECK(w.terms()[0].coefficient == 1);
  CHECK(w.terms()[1].power == 1);
  CHECK(w.terms()[1].coefficient == -1);
  CHECK_FALSE(w.has_log_terms());

  for (const ProductSpec spec : {ProductSpec{2, {1}, {7}}, ProductSpec{3, {2}, {10}}, ProductSpec{1, {0}, {5}}}) {
    const int n = spec.n, nu = spec.nu[0], m = spec.m[0];
    for (int k = 1; k <= n; ++k) {
      const auto wk = weight_wk(spec, k);
      for (double x : {0.05, 0.3, 0.5, 0.77, 0.99}) {
        const double expected = std::pow(x, nu + k - 1) * std::pow(1.0 - x, m - 2 * n - nu);
        CHECK(wk(x) == doctest::Approx(expected).epsilon(1e-14));
      }
      // integral equals B(nu + k, m - 2n - nu + 1)
      const double beta = std::tgamma(nu + k) * std::tgamma(m - 2 * n - nu + 1.0) / std::tgamma(m - 2.0 * n + k + 1);
      CHECK(to_double(weight_moment(spec, k, 1L)) == doctest::Approx(beta).epsilon(1e-14));
      CHECK(integrate(wk, 0.0, 1.0) == doctest::Approx(beta).epsilon(1e-12));
    }
  }
}

TEST_CASE("r = 2 weight is the Mellin convolution of the r = 1 weight") {
  const ProductSpec two{2, {1, 0}, {7, 5}};
  const ProductSpec one{2, {1}, {7}};
  const int mu = two.m[1] - two.n - two.nu[1] - 1;
  for (int k = 1; k <= 2; ++k) {
    const auto w1 = weight_wk(one, k);
    const auto w2 = weight_wk(two, k);
    CHECK(w2.has_log_terms());
    double worst = 0.0;
    for (int i = 1; i < 40; ++i) {
      const double y = i / 40.0;
      worst = std::max(worst, std::abs(w2(y) - beta_mellin_transform(w1, two.nu[1], mu, y)));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("weights match the Mellin-Barnes contour integral") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> uy(0.05, 0.95);
  for (const auto& spec : kSpecs) {
    for (int k = 1; k <= spec.n; ++k) {
      const auto w = weight_wk(spec, k);
      for (int i = 0; i < 5; ++i) {
        const double y = uy(rng);
        special::ContourSpec c{special::hankel_for(y, 0.5, pole_extent(spec, k)), 16, 0.5};
        const Complex q = special::contour_quadrature(
            [&](Complex s) { return gamma_form_moment(spec, k, s) * std::pow(y, -s); }, c, 1e-12);
        CAPTURE(y);
        CHECK(std::abs(q - w(y)) / std::abs(w(y)) < 1e-9);
      }
    }
  }
}

TEST_CASE("weights are non-negative") {
  for (const auto& spec : kSpecs) {
    for (int k = 1; k <= spec.n; ++k) {
      const auto w = weight_wk(spec, k);
      for (int i = 0; i <= 200; ++i) CHECK(w(i / 200.0) >= 0.0);
    }
  }
}

TEST_CASE("weight moments") {
  for (const auto& spec : kSpecs) {
    for (int k = 1; k <= spec.n; ++k) {
      const auto w = weight_wk(spec, k);
      for (long s = 1; s <= 4; ++s) {
        const BigRational exact = weight_moment(spec, k, s);
        CHECK(exact == w.mellin_moment(BigRational(s)));
        const double quad = integrate([&](double y) { return std::pow(y, s - 1) * w(y); }, 0.0, 1.0, 1e-12);
        CHECK(std::abs(to_double(exact) - quad) < 1e-9);
        CHECK(std::abs(weight_moment(spec, k, Complex(s, 0.0)) - gamma_form_moment(spec, k, s)) <
              1e-12 * std::abs(gamma_form_moment(spec, k, s)));
      }
      const Complex s{1.5, 0.7};
      const double re = integrate([&](double y) { return (std::pow(Complex(y), s - 1.0) * w(y)).real(); }, 0.0, 1.0, 1e-13);
      const double im = integrate([&](double y) { return (std::pow(Complex(y), s - 1.0) * w(y)).imag(); }, 0.0, 1.0, 1e-13);
      CHECK(std::abs(weight_moment(spec, k, s) - Complex(re, im)) < 1e-9);
    }
  }
  const ProductSpec spec{1, {0}, {3}};
  CHECK_THROWS_AS(weight_moment(spec, 1, 0L), PoleError);
  CHECK_THROWS_AS(weight_moment(spec, 1, Complex(-1.0, 0.0)), PoleError);
  CHECK_THROWS_AS(weight_moment(spec, 1, Complex(-0.5, 0.0)), DomainError);
  CHECK_THROWS_AS(weight_moment(spec, 2, 1L), IndexError);
  CHECK_THROWS_AS(weight_wk(spec, 0), IndexError);
  CHECK_THROWS_AS(weight_wk(ProductSpec{2, {0}, {3}}, 1), SpecError);
}

TEST_CASE("normalization") {
  CHECK(normalization_Zn({1, {0}, {3}}) == BigRational(1, 2));
  for (int nu = 0; nu < 3; ++nu) {
    for (int m = 2 + nu; m < 8; ++m) {
      // n = 1: Z = B(nu + 1, m - 1 - nu)
      const BigRational beta = BigRational(factorial(nu) * factorial(m - 2 - nu)) / BigRational(factorial(m - 1));
      CHECK(normalization_Zn({1, {nu}, {m}}) == beta);
    }
  }
  for (const auto& spec : kSpecs) CHECK(normalization_Zn(spec) > 0);
}

TEST_CASE("Z_n and weights do not depend on the ordering of factors 2..r") {
  const ProductSpec base{2, {0, 2, 1}, {5, 6, 4}};
  const ProductSpec joint{2, {0, 1, 2}, {5, 4, 6}};  // (nu_j, m_j) pairs swapped together
  CHECK(normalization_Zn(base) == normalization_Zn(joint));
  // Independent permutations of nu and m change c_r only.
  const ProductSpec split{2, {0, 1, 2}, {5, 6, 5}};
  const ProductSpec split_swapped{2, {0, 2, 1}, {5, 5, 6}};
  const ProductSpec split_m{2, {0, 1, 2}, {5, 5, 6}};
  auto reduced = [](const ProductSpec& s) {
    BigRational c = weight_constant(s), cn = 1;
    for (int i = 0; i < s.n; ++i) cn *= c;
    return normalization_Zn(s) / cn;
  };
  CHECK(reduced(split) == reduced(split_swapped));
  CHECK(reduced(split) == reduced(split_m));
  const WeightSystem a(split), b(split_swapped), c(split_m);
  for (double y1 : {0.2, 0.6}) {
    for (double y2 : {0.4, 0.9}) {
      const double y[] = {y1, y2};
      CHECK(a.density(y) == doctest::Approx(b.density(y)).epsilon(1e-12));
      CHECK(a.density(y) == doctest::Approx(c.density(y)).epsilon(1e-12));
    }
  }
}

TEST_CASE("product density") {
  SUBCASE("n = 1, r = 1 is a Beta density") {
    for (int nu = 0; nu < 3; ++nu) {
      const int m = 5;
      const double b = std::tgamma(nu + 1.0) * std::tgamma(m - 1.0 - nu) / std::tgamma(static_cast<double>(m));
      for (double t : {0.1, 0.45, 0.8}) {
        const double y[] = {t};
        CHECK(joint_density_product({1, {nu}, {m}}, y) ==
              doctest::Approx(std::pow(t, nu) * std::pow(1.0 - t, m - 2 - nu) / b).epsilon(1e-13));
      }
    }
  }
  SUBCASE("r = 1 is a Jacobi ensemble") {
    const ProductSpec spec{3, {1}, {9}};
    const WeightSystem ws(spec);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    double ratio0 = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double y[] = {u(rng), u(rng), u(rng)};
      double jacobi = 1.0;
      for (double t : y) jacobi *= t * std::pow(1.0 - t, 9 - 6 - 1);
      const double d = sampling::vandermonde(y);
      const double ratio = ws.density(y) / (d * d * jacobi);
      if (i == 0) ratio0 = ratio;
      CHECK(ratio == doctest::Approx(ratio0).epsilon(1e-11));
    }
  }
  SUBCASE("support, symmetry and coincident points") {
    const WeightSystem ws({2, {1, 0}, {7, 5}});
    const double same[] = {0.3, 0.3};
    CHECK(ws.density(same) == 0.0);
    const double outside[] = {0.3, 1.2};
    CHECK(ws.density(outside) == 0.0);
    const double negative[] = {-0.1, 0.5};
    CHECK(ws.density(negative) == 0.0);
    const double a[] = {0.2, 0.7}, b[] = {0.7, 0.2};
    CHECK(ws.density(a) == doctest::Approx(ws.density(b)).epsilon(1e-14));
    CHECK_THROWS_AS(ws.density(std::vector<double>{0.5}), DimensionError);
  }
  SUBCASE("non-negative on random support points") {
    const WeightSystem ws({3, {1, 0}, {9, 6}});
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
      const double y[] = {u(rng), u(rng), u(rng)};
      CHECK(ws.density(y) >= 0.0);
    }
  }
  SUBCASE("n = 2 integrates to one") {
    for (const ProductSpec spec : {ProductSpec{2, {1}, {7}}, ProductSpec{2, {1, 0}, {7, 5}}}) {
      const WeightSystem ws(spec);
      // symmetric, so twice the triangle y2 < y1 where the integrand is smooth
      const double total = 2.0 * integrate(
          [&](double a) {
            return integrate([&](double b) {
              const double y[] = {a, b};
              return ws.density(y);
            }, 0.0, a, 1e-10);
          },
          0.0, 1.0, 1e-8);
      CHECK(std::abs(total - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("fixed-X density") {
  SUBCASE("n = 1, x = 1") {
    const double x[] = {1.0};
    for (double t : {0.1, 0.5, 0.9}) {
      const double y[] = {t};
      CHECK(joint_density_fixed_x(x, y, 3, 1, 0) == doctest::Approx(2.0 * (1.0 - t)).epsilon(1e-14));
    }
    const double beyond[] = {1.5};
    CHECK(joint_density_fixed_x(x, beyond, 3, 1, 0) == 0.0);
  }
  SUBCASE("constant agrees with direct quadrature at n = 1") {
    for (int nu = 0; nu < 3; ++nu) {
      for (int m = nu + 2; m < 7; ++m) {
        const double x[] = {0.8};
        const double total = integrate([&](double t) {
          const double y[] = {t};
          return joint_density_fixed_x(x, y, m, 1, nu);
        }, 0.0, 0.8);
        CHECK(std::abs(total - 1.0) < 1e-10);
      }
    }
  }
  SUBCASE("n = 2 integrates to one") {
    const double x[] = {0.5, 1.3};
    const double cuts[] = {0.5};
    for (int nu = 0; nu < 2; ++nu) {
      const double total = integrate_2d([&](double a, double b) {
        const double y[] = {a, b};
        return joint_density_fixed_x(x, y, 5 + nu, 2, nu);
      }, 0.0, 1.3, cuts);
      CHECK(std::abs(total - 1.0) < 1e-6);
    }
  }
  SUBCASE("support and errors") {
    const double x[] = {0.5, 1.3};
    const double above[] = {1.4, 0.2};
    CHECK(joint_density_fixed_x(x, above, 5, 2, 0) == 0.0);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.4);
    for (int i = 0; i < 10000; ++i) {
      const double y[] = {u(rng), u(rng)};
      CHECK(joint_density_fixed_x(x, y, 6, 2, 1) >= -1e-15);
    }
    const double close[] = {0.5, 0.5 + 1e-9};
    CHECK_THROWS_AS(joint_density_fixed_x(close, above, 5, 2, 0), DegenerateSpectrumError);
    const double nonpositive[] = {0.0, 1.0};
    CHECK_THROWS_AS(joint_density_fixed_x(nonpositive, above, 5, 2, 0), DomainError);
    CHECK_THROWS_AS(joint_density_fixed_x(x, above, 2, 2, 0), SpecError);
    CHECK(fixed_x_constant(3, 1, 0) == 2);
  }
}

TEST_CASE("Beta and Gamma Mellin transforms") {
  auto indicator = [](double x) { return x > 0.0 && x < 1.0 ? 1.0 : 0.0; };
  for (double y : {0.1, 0.4, 0.75}) {
    CHECK(beta_mellin_transform(indicator, 1, 0, y) == doctest::Approx(1.0 - y).epsilon(1e-12));
    CHECK(gamma_mellin_transform(indicator, 1, y) == doctest::Approx(std::exp(-y)).epsilon(1e-10));
    // nu = 0 keeps the 1/x: the exponential integral E_1(y) = -Ei(-y).
    CHECK(gamma_mellin_transform(indicator, 0, y) == doctest::Approx(-std::expint(-y)).epsilon(1e-10));
  }
  CHECK(beta_mellin_transform(indicator, 1, 2, 1.0) == 0.0);
  CHECK(beta_mellin_transform(indicator, 1, 2, 3.0) == 0.0);

  auto exponential = [](double x) { return std::exp(-x); };
  for (int nu = 0; nu < 3; ++nu) {
    for (double y : {0.2, 1.0, 3.5}) {
      const double bessel = 2.0 * std::pow(y, nu / 2.0) * std::cyl_bessel_k(static_cast<double>(nu), 2.0 * std::sqrt(y));
      CHECK(gamma_mellin_transform(exponential, nu, y) == doctest::Approx(bessel).epsilon(1e-10));
    }
  }

  const double width = 1e-3;
  auto bump = [&](double x) {
    return std::exp(-0.5 * std::pow((x - 1.0) / width, 2)) / (width * std::sqrt(2.0 * std::numbers::pi));
  };
  for (int nu = 0; nu < 3; ++nu) {
    for (double y : {0.5, 1.0, 2.0}) {
      CHECK(gamma_mellin_transform(bump, nu, y) == doctest::Approx(std::pow(y, nu) * std::exp(-y)).epsilon(1e-4));
    }
  }
  CHECK_THROWS_AS(beta_mellin_transform(indicator, -1, 0, 0.5), DomainError);
  CHECK_THROWS_AS(gamma_mellin_transform(indicator, 0, 0.0), DomainError);
}

TEST_CASE("Beta transform tends to the Gamma transform as m grows") {
  auto exponential = [](double x) { return std::exp(-x); };
  std::vector<double> ys;
  for (int i = 1; i <= 20; ++i) ys.push_back(0.25 * i);
  for (int nu = 0; nu < 2; ++nu) {
    const double d50 = mellin_bridge_distance(exponential, nu, 2, 50, ys);
    const double d100 = mellin_bridge_distance(exponential, nu, 2, 100, ys);
    const double d200 = mellin_bridge_distance(exponential, nu, 2, 200, ys);
    CHECK(d100 < d50);
    CHECK(d200 < d100);
    CHECK(d200 < 0.05);
  }
}

TEST_CASE("Andreief formula") {
  const std::vector<RealFunction> one{[](double x) { return x; }};
  const std::vector<RealFunction> other{[](double x) { return x * x; }};
  auto unit = [](double) { return 1.0; };
  CHECK(andreief_gram(one, other, unit, 0.0, 1.0) == doctest::Approx(0.25).epsilon(1e-13));

  // Legendre polynomials: n! prod 2 / (2k + 1).
  const std::vector<RealFunction> legendre{
      [](double) { return 1.0; }, [](double x) { return x; }, [](double x) { return 0.5 * (3 * x * x - 1); }};
  CHECK(andreief_gram(legendre, legendre, unit, -1.0, 1.0) ==
        doctest::Approx(6.0 * 2.0 * (2.0 / 3.0) * (2.0 / 5.0)).epsilon(1e-12));

  const std::vector<RealFunction> phi{[](double) { return 1.0; }, [](double x) { return x; }};
  const std::vector<RealFunction> psi{[](double x) { return std::exp(-x); }, [](double x) { return x * x; }};
  auto w = [](double x) { return 1.0 + x; };
  const double gram = andreief_gram(phi, psi, w, 0.0, 2.0);
  const auto mc = andreief_lhs_mc(phi, psi, w, 0.0, 2.0, sampling::McOptions{200000, 31, 1});
  CHECK(mc.z_score(gram) < 3.0);
  CHECK_THROWS_AS(andreief_lhs_mc(phi, psi, w, 0.0, INFINITY, sampling::McOptions{1000, 0, 1}), DomainError);
  CHECK_THROWS_AS(andreief_gram(phi, one, w, 0.0, 1.0), DimensionError);
}

TEST_CASE("de Bruijn transform") {
  auto box = [](double x) { return x > 0.0 && x < 1.0; };
  auto f = [&](double a, double b) { return box(a) && box(b) ? a - b : 0.0; };
  const int nu = 1, mu = 2;
  CHECK(std::abs(debruijn_transform(f, nu, mu, 0.4, 0.4)) < 1e-14);

  // Separable: g = h1(y1) h0(y2) - h0(y1) h1(y2), h_a the Beta transform of x^a on (0,1).
  auto h0 = [&](double y) { return beta_mellin_transform([&](double x) { return box(x) ? 1.0 : 0.0; }, nu, mu, y, 1e-13); };
  auto h1 = [&](double y) { return beta_mellin_transform([&](double x) { return box(x) ? x : 0.0; }, nu, mu, y, 1e-13); };
  for (auto [y1, y2] : {std::pair{0.2, 0.7}, std::pair{0.55, 0.1}, std::pair{0.3, 0.35}}) {
    const double expected = h1(y1) * h0(y2) - h0(y1) * h1(y2);
    CHECK(debruijn_transform(f, nu, mu, y1, y2) == doctest::Approx(expected).epsilon(1e-10));
  }

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.01, 1.5);
  auto g = [](double a, double b) { return std::exp(-a - 2 * b) - std::exp(-b - 2 * a); };
  for (int i = 0; i < 20; ++i) {
    const double y1 = u(rng), y2 = u(rng);
    const double forward = debruijn_transform(g, 0, 3, y1, y2);
    const double backward = debruijn_transform(g, 0, 3, y2, y1);
    CHECK(std::abs(forward + backward) < 1e-12);
  }
  auto symmetric = [](double a, double b) { return a + b; };
  CHECK_THROWS_AS(debruijn_transform(symmetric, 0, 0, 0.2, 0.3), AsymmetryError);
}
