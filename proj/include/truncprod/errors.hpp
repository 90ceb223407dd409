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

#include <stdexcept>
#include <string>

namespace truncprod {

/// Precondition violations. The CLI maps these to exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument sits on a pole (Gamma at a non-positive integer, a moment at a pole).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Product parameters (n, nu, m) or hard-edge parameters (J, mu) are invalid.
class SpecError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Eigenvalues or points closer than the 1e-8 gap required by determinant formulas.
class DegenerateSpectrumError : public DomainError {
 public:
  using DomainError::DomainError;
};

class AsymmetryError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ImproperFunctionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class IndexError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Runtime numerical failures. The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace truncprod
