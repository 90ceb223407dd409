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

#include <array>
#include <cmath>
#include <numbers>

#include "truncprod/errors.hpp"
#include "truncprod/special.hpp"

namespace truncprod::special {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

void check_finite(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("gamma: non-finite argument");
  }
}

void check_pole(Complex z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real())) {
    throw PoleError("gamma: pole at non-positive integer");
  }
}

// Lanczos series sum for Gamma(z), Re z >= 1/2.
Complex lanczos_series(Complex z) {
  const Complex x = z - 1.0;
  Complex sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (x + static_cast<double>(i));
  return sum;
}

Complex lgamma_right(Complex z) {
  const Complex x = z - 1.0;
  const Complex t = x + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (x + 0.5) * std::log(t) - t + std::log(lanczos_series(z));
}

Complex gamma_right(Complex z) {
  const Complex x = z - 1.0;
  const Complex t = x + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::exp((x + 0.5) * std::log(t) - t) * lanczos_series(z);
}

}  // namespace

Complex sinpi(Complex z) {
  const double k = std::round(z.real());
  const Complex f{z.real() - k, z.imag()};
  const Complex value = std::sin(kPi * f);
  return std::fmod(std::abs(k), 2.0) == 1.0 ? -value : value;
}

Complex log_sinpi(Complex z) {
  const double k = std::round(z.real());
  const Complex f{z.real() - k, z.imag()};
  const Complex sign_phase{0.0, std::fmod(std::abs(k), 2.0) == 1.0 ? kPi : 0.0};
  const Complex i{0.0, 1.0};
  if (f.imag() > 2.0) {
    // sin(pi f) = e^{-i pi f} (e^{2 i pi f} - 1) / (2i)
    return -i * kPi * f + std::log((std::exp(2.0 * i * kPi * f) - 1.0) / (2.0 * i)) + sign_phase;
  }
  if (f.imag() < -2.0) {
    return i * kPi * f + std::log((1.0 - std::exp(-2.0 * i * kPi * f)) / (2.0 * i)) + sign_phase;
  }
  return std::log(std::sin(kPi * f)) + sign_phase;
}

Complex complex_gamma(Complex z) {
  check_finite(z);
  check_pole(z);
  if (z.real() >= 0.5) return gamma_right(z);
  return kPi / (sinpi(z) * gamma_right(1.0 - z));
}

Complex complex_lgamma(Complex z) {
  check_finite(z);
  check_pole(z);
  if (z.real() >= 0.5) return lgamma_right(z);
  return std::log(kPi) - log_sinpi(z) - lgamma_right(1.0 - z);
}

Complex gamma_ratio(Complex a, Complex b) { return std::exp(complex_lgamma(a) - complex_lgamma(b)); }

Complex pochhammer(Complex a, unsigned k) {
  Complex result = 1.0;
  for (unsigned i = 0; i < k; ++i) result *= a + static_cast<double>(i);
  return result;
}

BigRational pochhammer(const BigRational& a, unsigned k) {
  BigRational result = 1;
  for (unsigned i = 0; i < k; ++i) result *= a + i;
  return result;
}

}  // namespace truncprod::special
