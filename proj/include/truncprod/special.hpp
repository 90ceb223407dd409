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

#include "truncprod/numeric.hpp"

namespace truncprod::special {

/// Gamma function on the complex plane.
///
/// Lanczos approximation (g = 607/128, 15 coefficients) for Re z >= 1/2 and
/// the reflection formula elsewhere. Relative accuracy is about 1e-14 for
/// |z| <= 50. Throws PoleError at non-positive integers and DomainError for
/// non-finite input.
Complex complex_gamma(Complex z);

/// A logarithm of Gamma(z). The imaginary part is only defined modulo 2*pi,
/// which is all exp() needs; use it for ratios of large Gamma values.
Complex complex_lgamma(Complex z);

/// Gamma(a) / Gamma(b) via log-gamma, safe when both factors overflow.
Complex gamma_ratio(Complex a, Complex b);

/// sin(pi z) with exact reduction of the real part, accurate near integers.
Complex sinpi(Complex z);

/// log(sin(pi z)), stable for large |Im z| where sin(pi z) overflows.
Complex log_sinpi(Complex z);

/// Rising factorial (a)_k = a (a+1) ... (a+k-1).
Complex pochhammer(Complex a, unsigned k);
BigRational pochhammer(const BigRational& a, unsigned k);

}  // namespace truncprod::special
