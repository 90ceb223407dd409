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

#include <string>
#include <vector>

#include "truncprod/numeric.hpp"

namespace truncprod {

/// Polynomial with exact rational coefficients, stored in ascending degree.
/// Trailing zero coefficients are trimmed, so the leading coefficient of a
/// nonzero polynomial is nonzero. The zero polynomial has no coefficients.
class ExactPolynomial {
 public:
  ExactPolynomial() = default;
  explicit ExactPolynomial(std::vector<BigRational> coefficients);

  static ExactPolynomial constant(const BigRational& c);
  /// The monic linear factor (x - root).
  static ExactPolynomial linear(const BigRational& root);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<BigRational>& coefficients() const { return coeffs_; }
  BigRational coefficient(std::size_t i) const;

  BigRational operator()(const BigRational& x) const;
  HighFloat operator()(const HighFloat& x) const;
  Complex operator()(Complex x) const;
  /// Evaluated in 100-digit arithmetic and rounded once.
  double operator()(double x) const;

  /// Coefficients of p(a + e) as a polynomial in e.
  ExactPolynomial taylor_shift(const BigRational& a) const;

  friend ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b);
  friend ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b);
  friend ExactPolynomial operator*(const BigRational& c, const ExactPolynomial& p);
  friend bool operator==(const ExactPolynomial& a, const ExactPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  void trim();
  void refresh_high();

  std::vector<BigRational> coeffs_;
  std::vector<HighFloat> high_;
};

}  // namespace truncprod
