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

#include "truncprod/rational_function.hpp"

#include <algorithm>
#include <map>

#include "truncprod/errors.hpp"

namespace truncprod {

RationalFunction::RationalFunction(ExactPolynomial numerator, std::vector<Pole> poles)
    : numerator_(std::move(numerator)), poles_(std::move(poles)) {
  std::sort(poles_.begin(), poles_.end(),
            [](const Pole& a, const Pole& b) { return a.location > b.location; });
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    if (poles_[i].multiplicity == 0) throw DomainError("RationalFunction: zero pole multiplicity");
    if (i > 0 && poles_[i].location == poles_[i - 1].location) {
      throw DomainError("RationalFunction: pole locations must be distinct");
    }
  }
}

RationalFunction RationalFunction::from_roots(ExactPolynomial numerator,
                                              const std::vector<long>& roots) {
  std::map<long, unsigned> count;
  for (long r : roots) ++count[r];
  std::vector<Pole> poles;
  for (const auto& [loc, mult] : count) poles.push_back({loc, mult});
  return {std::move(numerator), std::move(poles)};
}

RationalFunction RationalFunction::gamma_ratio(long a, long b) {
  if (b < a) throw DomainError("gamma_ratio: requires b >= a");
  std::vector<long> roots;
  for (long l = 0; l < b - a; ++l) roots.push_back(-(a + l));
  return from_roots(ExactPolynomial::constant(1), roots);
}

unsigned RationalFunction::denominator_degree() const {
  unsigned d = 0;
  for (const auto& p : poles_) d += p.multiplicity;
  return d;
}

bool RationalFunction::strictly_proper() const {
  return numerator_.degree() < static_cast<int>(denominator_degree());
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  std::map<long, unsigned> count;
  for (const auto& p : a.poles_) count[p.location] += p.multiplicity;
  for (const auto& p : b.poles_) count[p.location] += p.multiplicity;
  std::vector<RationalFunction::Pole> poles;
  for (const auto& [loc, mult] : count) poles.push_back({loc, mult});
  return {a.numerator_ * b.numerator_, std::move(poles)};
}

RationalFunction operator*(const ExactPolynomial& p, const RationalFunction& f) {
  return {p * f.numerator_, f.poles_};
}

BigRational RationalFunction::operator()(const BigRational& s) const {
  BigRational denom = 1;
  for (const auto& p : poles_) {
    const BigRational factor = s - p.location;
    if (factor == 0) throw PoleError("RationalFunction: evaluation at a pole");
    for (unsigned i = 0; i < p.multiplicity; ++i) denom *= factor;
  }
  return numerator_(s) / denom;
}

Complex RationalFunction::operator()(Complex s) const {
  Complex value = numerator_(s);
  for (const auto& p : poles_) {
    const Complex factor = s - static_cast<double>(p.location);
    for (unsigned i = 0; i < p.multiplicity; ++i) value /= factor;
  }
  return value;
}

namespace special {
namespace {

// First `order` Taylor coefficients of a series product, truncated.
std::vector<BigRational> truncated_product(const std::vector<BigRational>& a,
                                           const std::vector<BigRational>& b, std::size_t order) {
  std::vector<BigRational> c(order);
  for (std::size_t i = 0; i < std::min(order, a.size()); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < order && j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// Taylor coefficients of (c + e)^{-mult} about e = 0, c != 0.
std::vector<BigRational> inverse_power_series(const BigRational& c, unsigned mult,
                                              std::size_t order) {
  std::vector<BigRational> out(order);
  BigRational c_pow = 1;
  for (unsigned i = 0; i < mult; ++i) c_pow *= c;
  BigRational lead = 1 / c_pow;
  for (std::size_t i = 0; i < order; ++i) {
    // binom(-mult, i) / c^i = (-1)^i binom(mult + i - 1, i) / c^i
    out[i] = lead * BigRational(binomial(mult + static_cast<unsigned>(i) - 1, static_cast<unsigned>(i)));
    if (i % 2 == 1) out[i] = -out[i];
    lead /= c;
  }
  return out;
}

}  // namespace

LogPolyExpansion residue_expansion(const RationalFunction& f) {
  if (!f.strictly_proper()) {
    throw ImproperFunctionError("residue_expansion: numerator degree must be below denominator degree");
  }
  std::vector<LogPolyExpansion::Term> terms;
  for (const auto& pole : f.poles()) {
    if (pole.location > 0) {
      throw ImproperFunctionError("residue_expansion: poles must lie at non-positive integers");
    }
    const std::size_t order = pole.multiplicity;
    const BigRational a = pole.location;
    // g(e) = numerator(a + e) / prod_{b != a} (a - b + e)^{mult_b}
    const ExactPolynomial shifted_poly = f.numerator().taylor_shift(a);
    const auto& shifted = shifted_poly.coefficients();
    std::vector<BigRational> g(shifted.begin(),
                               shifted.begin() + static_cast<long>(std::min(order, shifted.size())));
    g.resize(order);
    for (const auto& other : f.poles()) {
      if (other.location == pole.location) continue;
      g = truncated_product(g, inverse_power_series(a - other.location, other.multiplicity, order),
                            order);
    }
    // Residue of g(s-a) (s-a)^{-k} y^{-s}: y^{-a} sum_d g_{k-1-d} (-ln y)^d / d!
    for (unsigned d = 0; d < order; ++d) {
      BigRational c = g[order - 1 - d];
      if (d % 2 == 1) c = -c;
      terms.push_back({static_cast<int>(-pole.location), d, c});
    }
  }
  return LogPolyExpansion(std::move(terms));
}

}  // namespace special
}  // namespace truncprod
