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

#include <complex>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace truncprod {

using Complex = std::complex<double>;

/// Exact rational, always in lowest terms with positive denominator (GMP mpq).
using BigRational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// 100 decimal digits. Used to evaluate expansions whose exact coefficients
/// alternate in sign and grow factorially, then rounded to double once.
using HighFloat = boost::multiprecision::mpfr_float_100;

BigInt factorial(unsigned k);
BigInt binomial(unsigned top, unsigned bottom);

/// Exact determinant by Gaussian elimination over the rationals.
BigRational determinant(std::vector<std::vector<BigRational>> matrix);
/// Determinant by Gaussian elimination with partial pivoting.
HighFloat determinant(std::vector<std::vector<HighFloat>> matrix);

inline double to_double(const BigRational& q) { return q.convert_to<double>(); }
inline HighFloat to_high(const BigRational& q) { return HighFloat(q); }

/// Exact rational value of a finite double.
BigRational exact_rational(double x);

}  // namespace truncprod
