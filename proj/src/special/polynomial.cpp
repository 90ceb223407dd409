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

#include "truncprod/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace truncprod {

ExactPolynomial::ExactPolynomial(std::vector<BigRational> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

ExactPolynomial ExactPolynomial::constant(const BigRational& c) { return ExactPolynomial({c}); }

ExactPolynomial ExactPolynomial::linear(const BigRational& root) {
  return ExactPolynomial({-root, BigRational(1)});
}

BigRational ExactPolynomial::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : BigRational(0);
}

void ExactPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  refresh_high();
}

void ExactPolynomial::refresh_high() {
  high_.clear();
  high_.reserve(coeffs_.size());
  for (const auto& c : coeffs_) high_.emplace_back(c);
}

BigRational ExactPolynomial::operator()(const BigRational& x) const {
  BigRational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

HighFloat ExactPolynomial::operator()(const HighFloat& x) const {
  HighFloat acc = 0;
  for (auto it = high_.rbegin(); it != high_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex ExactPolynomial::operator()(Complex x) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

double ExactPolynomial::operator()(double x) const {
  return (*this)(HighFloat(x)).convert_to<double>();
}

ExactPolynomial ExactPolynomial::taylor_shift(const BigRational& a) const {
  // Repeated synthetic division by (x - a).
  std::vector<BigRational> c = coeffs_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += a * c[j];
  }
  return ExactPolynomial(std::move(c));
}

ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b) {
  std::vector<BigRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) + b.coefficient(i);
  return ExactPolynomial(std::move(c));
}

ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigRational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return ExactPolynomial(std::move(c));
}

ExactPolynomial operator*(const BigRational& c, const ExactPolynomial& p) {
  std::vector<BigRational> out = p.coeffs_;
  for (auto& x : out) x *= c;
  return ExactPolynomial(std::move(out));
}

std::string ExactPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    os << coeffs_[i];
    if (i > 0) os << "*x^" << i;
    first = false;
  }
  return os.str();
}

}  // namespace truncprod
