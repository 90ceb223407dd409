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

#include <Eigen/Dense>

namespace truncprod::special {

/// Pfaffian of a real skew-symmetric matrix by Parlett-Reid elimination with
/// partial pivoting. Requires even dimension (DimensionError) and
/// |A + A^T| <= 1e-12 * max(1, max|A|) entrywise (AsymmetryError). The empty
/// matrix has Pfaffian 1.
double pfaffian(const Eigen::MatrixXd& a);

}  // namespace truncprod::special
