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

#include "truncprod/numeric.hpp"

namespace truncprod {

/// Closed-form function on (0,1):
///
///     f(y) = sum_i  c_i * y^{p_i} * (ln y)^{d_i} / d_i!
///
/// This is the exact result of closing a Mellin-Barnes integral over a
/// rational function of s times y^{-s}: a pole of order k at s = -p
/// contributes log-degrees 0..k-1 at power p. Outside (0,1) the function is
/// zero. Evaluation clamps the lower end to 1e-12; at y = 1 the value is the
/// limit sum of the log-degree-zero coefficients.
class LogPolyExpansion {
 public:
  struct Term {
    int power = 0;
    unsigned log_degree = 0;
    BigRational coefficient;
  };

  LogPolyExpansion() = default;
  /// Merges duplicate (power, log_degree) keys, drops zeros, sorts.
  explicit LogPolyExpansion(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool has_log_terms() const;
  int min_power() const;

  double operator()(double y) const;
  HighFloat evaluate(const HighFloat& y) const;

  /// Exact Mellin moment int_0^1 y^{s-1} f(y) dy; requires s + p > 0 for all terms.
  BigRational mellin_moment(const BigRational& s) const;

  LogPolyExpansion scaled(const BigRational& c) const;
  friend LogPolyExpansion operator+(const LogPolyExpansion& a, const LogPolyExpansion& b);

 private:
  std::vector<Term> terms_;
  std::vector<HighFloat> scaled_high_;  // c_i / d_i!
  std::vector<long double> scaled_long_;
  BigRational at_one_ = 0;
};

}  // namespace truncprod
