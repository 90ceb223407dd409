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
#include "truncprod/polynomial.hpp"

namespace truncprod {

/// numerator(s) / prod_p (s - location_p)^{multiplicity_p} with integer pole
/// locations. Gamma ratios Gamma(s+a)/Gamma(s+b) with integer b > a reduce to
/// this form, which is how every Mellin-Barnes integrand with integer
/// parameters ends up here.
class RationalFunction {
 public:
  struct Pole {
    long location = 0;
    unsigned multiplicity = 1;
  };

  RationalFunction() = default;
  /// Pole locations must be pairwise distinct and multiplicities positive.
  RationalFunction(ExactPolynomial numerator, std::vector<Pole> poles);

  /// numerator / prod_i (s - roots[i]); repeated roots merge into higher-order poles.
  static RationalFunction from_roots(ExactPolynomial numerator, const std::vector<long>& roots);

  /// Gamma(s + a) / Gamma(s + b) for integers b >= a, i.e. 1 / prod_{l=0}^{b-a-1} (s + a + l).
  static RationalFunction gamma_ratio(long a, long b);

  const ExactPolynomial& numerator() const { return numerator_; }
  const std::vector<Pole>& poles() const { return poles_; }
  unsigned denominator_degree() const;
  /// deg numerator < deg denominator.
  bool strictly_proper() const;

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const ExactPolynomial& p, const RationalFunction& f);

  BigRational operator()(const BigRational& s) const;
  Complex operator()(Complex s) const;

 private:
  ExactPolynomial numerator_;
  std::vector<Pole> poles_;
};

namespace special {

/// Exact value of (1 / 2 pi i) \int_C f(s) y^{-s} ds over a positively
/// oriented loop C enclosing every pole, as a function of y in (0,1).
///
/// A pole of order k at s = a contributes y^{-a} times a polynomial of degree
/// k-1 in ln y, read off from the Taylor coefficients of (s-a)^k f(s) at a.
/// Requires f strictly proper and every pole at a non-positive integer (so
/// that all powers of y are nonnegative). Throws ImproperFunctionError
/// otherwise.
LogPolyExpansion residue_expansion(const RationalFunction& f);

}  // namespace special
}  // namespace truncprod
