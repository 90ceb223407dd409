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

#include "truncprod/numeric.hpp"

#include <cmath>
#include <utility>

#include "truncprod/errors.hpp"

namespace truncprod {

BigInt factorial(unsigned k) {
  BigInt result = 1;
  for (unsigned i = 2; i <= k; ++i) result *= i;
  return result;
}

BigInt binomial(unsigned top, unsigned bottom) {
  if (bottom > top) return 0;
  BigInt result = 1;
  for (unsigned i = 1; i <= bottom; ++i) {
    result *= top - bottom + i;
    result /= i;
  }
  return result;
}

BigRational determinant(std::vector<std::vector<BigRational>> a) {
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw DimensionError("determinant: matrix is not square");
  }
  BigRational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (a[row][col] == 0) continue;
      const BigRational factor = a[row][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
    }
  }
  return det;
}

HighFloat determinant(std::vector<std::vector<HighFloat>> a) {
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw DimensionError("determinant: matrix is not square");
  }
  HighFloat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (abs(a[row][col]) > abs(a[pivot][col])) pivot = row;
    }
    if (a[pivot][col] == 0) return HighFloat(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      const HighFloat factor = a[row][col] / a[col][col];
      for (std::size_t j = col + 1; j < n; ++j) a[row][j] -= factor * a[col][j];
    }
  }
  return det;
}

BigRational exact_rational(double x) {
  if (!std::isfinite(x)) throw DomainError("exact_rational: non-finite value");
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  // 53-bit integer mantissa scaled by a power of two.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  BigRational result{BigInt(scaled)};
  exponent -= 53;
  BigInt power = 1;
  power <<= static_cast<unsigned>(std::abs(exponent));
  if (exponent >= 0) {
    result *= BigRational(power);
  } else {
    result /= BigRational(power);
  }
  return result;
}

}  // namespace truncprod
