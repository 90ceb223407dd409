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

#include "truncprod/pfaffian.hpp"

#include <algorithm>
#include <cmath>

#include "truncprod/errors.hpp"

namespace truncprod::special {

double pfaffian(const Eigen::MatrixXd& input) {
  const Eigen::Index n = input.rows();
  if (input.cols() != n) throw DimensionError("pfaffian: matrix must be square");
  if (n % 2 != 0) throw DimensionError("pfaffian: odd dimension");
  if (n == 0) return 1.0;
  const double scale = std::max(1.0, input.cwiseAbs().maxCoeff());
  if ((input + input.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw AsymmetryError("pfaffian: matrix is not skew-symmetric");
  }

  Eigen::MatrixXd a = input;
  double result = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    // Bring the largest entry of column k (below the diagonal) to row k+1.
    Eigen::Index pivot = k + 1;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&pivot);
    pivot += k + 1;
    if (pivot != k + 1) {
      a.row(k + 1).swap(a.row(pivot));
      a.col(k + 1).swap(a.col(pivot));
      result = -result;
    }
    const double element = a(k, k + 1);
    if (element == 0.0) return 0.0;
    result *= element;
    if (k + 2 < n) {
      // Gauss transformation eliminating row/column k beyond k+1.
      const Eigen::VectorXd tau = a.row(k).tail(n - k - 2).transpose() / element;
      const Eigen::VectorXd col = a.col(k + 1).tail(n - k - 2);
      a.bottomRightCorner(n - k - 2, n - k - 2) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return result;
}

}  // namespace truncprod::special
