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

#include "truncprod/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "truncprod/contour.hpp"
#include "truncprod/errors.hpp"
#include "truncprod/special.hpp"

namespace truncprod {
namespace kernels {
namespace {

void check_index(const ProductSpec& spec, int k) {
  if (k < 0 || k >= spec.n) throw IndexError("biorthogonal index k must satisfy 0 <= k <= n-1");
}

BigRational rational_factorial(long k) { return BigRational(factorial(static_cast<unsigned>(k))); }

}  // namespace

ExactPolynomial pk_coefficients(const ProductSpec& spec, int k) {
  spec.validate();
  check_index(spec, k);
  std::vector<BigRational> c(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) {
    BigRational term = 1 / (rational_factorial(i) * rational_factorial(k - i));
    if ((k - i) % 2 == 1) term = -term;
    for (int j = 0; j < spec.r(); ++j) {
      term *= rational_factorial(spec.m[j] - spec.n + i) / rational_factorial(spec.nu[j] + i);
    }
    c[static_cast<std::size_t>(i)] = term;
  }
  return ExactPolynomial(std::move(c));
}

RationalFunction qk_mellin(const ProductSpec& spec, int k) {
  spec.validate();
  check_index(spec, k);
  // (s-k)_k = (s-k)(s-k+1)...(s-1)
  ExactPolynomial rising = ExactPolynomial::constant(1);
  for (int l = 1; l <= k; ++l) rising = rising * ExactPolynomial::linear(l);
  RationalFunction f = RationalFunction::gamma_ratio(spec.nu[0], spec.m[0] - spec.n);
  for (int j = 1; j < spec.r(); ++j) f = f * RationalFunction::gamma_ratio(spec.nu[j], spec.m[j] - spec.n);
  return rising * f;
}

LogPolyExpansion qk_expansion(const ProductSpec& spec, int k) {
  return special::residue_expansion(qk_mellin(spec, k));
}

BigRational qk_moment(const ProductSpec& spec, int k, long s) {
  const RationalFunction f = qk_mellin(spec, k);
  for (const auto& pole : f.poles()) {
    if (pole.location == s) throw PoleError("qk_moment: s is a pole");
  }
  if (s <= 0) throw DomainError("qk_moment: requires s > 0");
  return f(BigRational(s));
}

Complex qk_moment(const ProductSpec& spec, int k, Complex s) {
  const RationalFunction f = qk_mellin(spec, k);
  for (const auto& pole : f.poles()) {
    if (s == Complex(static_cast<double>(pole.location), 0.0)) throw PoleError("qk_moment: s is a pole");
  }
  if (!(s.real() > 0.0)) throw DomainError("qk_moment: requires Re s > 0");
  return f(s);
}

}  // namespace kernels

BiorthogonalSystem::BiorthogonalSystem(ProductSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  for (int k = 0; k < spec_.n; ++k) {
    p_.push_back(kernels::pk_coefficients(spec_, k));
    q_.push_back(kernels::qk_expansion(spec_, k));
    std::vector<long double> rounded;
    long double absolute = 0.0L;
    for (const auto& c : p_.back().coefficients()) {
      rounded.push_back(c.convert_to<long double>());
      absolute += std::abs(rounded.back());
    }
    p_rounded_.push_back(std::move(rounded));
    const double at_one = std::abs(to_double(p_.back()(BigRational(1))));
    condition_ = std::max(condition_, at_one > 0.0 ? static_cast<double>(absolute) / at_one : INFINITY);
  }
}

const ExactPolynomial& BiorthogonalSystem::p(int k) const {
  if (k < 0 || k >= spec_.n) throw IndexError("BiorthogonalSystem::p: index out of range");
  return p_[static_cast<std::size_t>(k)];
}

const LogPolyExpansion& BiorthogonalSystem::q(int k) const {
  if (k < 0 || k >= spec_.n) throw IndexError("BiorthogonalSystem::q: index out of range");
  return q_[static_cast<std::size_t>(k)];
}

double BiorthogonalSystem::p_value(int k, double x) const {
  if (k < 0 || k >= spec_.n) throw IndexError("BiorthogonalSystem::p_value: index out of range");
  const auto& c = p_rounded_[static_cast<std::size_t>(k)];
  long double v = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return static_cast<double>(v);
}

std::vector<std::vector<BigRational>> BiorthogonalSystem::gram() const {
  const auto n = static_cast<std::size_t>(spec_.n);
  std::vector<std::vector<BigRational>> g(n, std::vector<BigRational>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const RationalFunction moment = kernels::qk_mellin(spec_, static_cast<int>(k));
    std::vector<BigRational> moments;
    for (std::size_t i = 0; i < n; ++i) moments.push_back(moment(BigRational(static_cast<long>(i) + 1)));
    for (std::size_t j = 0; j < n; ++j) {
      BigRational sum = 0;
      const auto& c = p_[j].coefficients();
      for (std::size_t i = 0; i < c.size(); ++i) sum += c[i] * moments[i];
      g[j][k] = sum;
    }
  }
  return g;
}

namespace kernels {

double kernel_kn_sum(const BiorthogonalSystem& system, double x, double y) {
  double sum = 0.0;
  for (int k = 0; k < system.n(); ++k) sum += system.p_value(k, x) * system.q(k)(y);
  return sum;
}

double kernel_kn_contour(const ProductSpec& spec, double x, double y, double tolerance) {
  spec.validate();
  if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0)) {
    throw DomainError("kernel_kn_contour: requires x, y in (0,1)");
  }
  const int n = spec.n;
  std::vector<double> nu{0.0}, shift{static_cast<double>(-n)};  // j = 0: nu_0 = 0, m_0 - n = -n
  int extent = 0;
  for (int j = 0; j < spec.r(); ++j) {
    nu.push_back(spec.nu[j]);
    shift.push_back(spec.m[j] - n);
    extent = std::max(extent, spec.m[j] - n);
  }

  const double log_x = std::log(x);
  const double log_y = std::log(y);
  auto s_factor = [&](Complex s) {
    Complex v = std::exp(-(s + 1.0) * log_y);
    for (std::size_t j = 0; j < nu.size(); ++j) v *= special::gamma_ratio(s + 1.0 + nu[j], s + 1.0 + shift[j]);
    return v;
  };
  auto t_factor = [&](Complex t) {
    Complex v = std::exp(t * log_x);
    for (std::size_t j = 0; j < nu.size(); ++j) v *= special::gamma_ratio(t + 1.0 + shift[j], t + 1.0 + nu[j]);
    return v;
  };

  const special::Hankel loop = special::hankel_for(y, -0.5, -static_cast<double>(extent));
  const special::Rectangle box{{-0.25, -0.5}, {n + 0.25, 0.5}};
  const Complex norm = 1.0 / std::pow(Complex(0.0, 2.0 * std::numbers::pi), 2);

  // The value and the absolute sum of the terms, which bounds the rounding error.
  auto evaluate = [&](int nodes) {
    const auto cs = special::discretize({loop, nodes, 0.5});
    const auto ct = special::discretize({box, nodes, 0.5});
    std::vector<Complex> ft(ct.points.size());
    for (std::size_t i = 0; i < ct.points.size(); ++i) ft[i] = ct.weights[i] * t_factor(ct.points[i]);
    Complex total = 0.0;
    double magnitude = 0.0;
    for (std::size_t a = 0; a < cs.points.size(); ++a) {
      const Complex s = cs.points[a];
      Complex inner = 0.0;
      double inner_abs = 0.0;
      for (std::size_t b = 0; b < ct.points.size(); ++b) {
        const Complex term = ft[b] / (s - ct.points[b]);
        inner += term;
        inner_abs += std::abs(term);
      }
      const Complex outer = cs.weights[a] * s_factor(s);
      total += outer * inner;
      magnitude += std::abs(outer) * inner_abs;
    }
    return std::pair{total * norm, magnitude * std::abs(norm)};
  };

  auto previous = evaluate(16);
  for (int nodes = 32; nodes <= 128; nodes *= 2) {
    const auto current = evaluate(nodes);
    const double change = std::abs(current.first - previous.first);
    const double rounding = 1e3 * std::numeric_limits<double>::epsilon() * current.second;
    if (change <= std::max(tolerance * std::max(1.0, std::abs(current.first)), rounding)) {
      return current.first.real();
    }
    previous = current;
  }
  throw ConvergenceError("kernel_kn_contour: node doubling did not meet the tolerance");
}

double telescoping_check(Complex s, Complex t, int n) {
  if (n < 1) throw DomainError("telescoping_check: requires n >= 1");
  Complex lhs = 0.0;
  for (int k = 0; k < n; ++k) {
    lhs += special::pochhammer(s + 1.0 - static_cast<double>(k), static_cast<unsigned>(k)) /
           special::pochhammer(t - static_cast<double>(k), static_cast<unsigned>(k) + 1);
  }
  // prod_l (1 + d_l) - 1 = sum_l d_l prod_{i<l} (1 + d_i) with
  // 1 + d_l = (s+1-n+l) / (t+1-n+l), and d_l / (s - t) = 1 / (t+1-n+l).
  Complex rhs = 0.0;
  Complex running = 1.0;
  for (int l = 0; l < n; ++l) {
    const Complex a = s + 1.0 - static_cast<double>(n - l);
    const Complex b = t + 1.0 - static_cast<double>(n - l);
    rhs += running / b;
    running *= a / b;
  }
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

}  // namespace kernels
}  // namespace truncprod
