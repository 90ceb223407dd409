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

#include "truncprod/log_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "truncprod/errors.hpp"

namespace truncprod {

LogPolyExpansion::LogPolyExpansion(std::vector<Term> terms) {
  std::map<std::pair<int, unsigned>, BigRational> merged;
  for (auto& t : terms) merged[{t.power, t.log_degree}] += t.coefficient;
  for (auto& [key, c] : merged) {
    if (c == 0) continue;
    terms_.push_back({key.first, key.second, c});
    scaled_high_.push_back(HighFloat(c) / HighFloat(factorial(key.second)));
    scaled_long_.push_back(static_cast<long double>(scaled_high_.back()));
    if (key.second == 0) at_one_ += c;
  }
}

bool LogPolyExpansion::has_log_terms() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.log_degree > 0; });
}

int LogPolyExpansion::min_power() const { return terms_.empty() ? 0 : terms_.front().power; }

HighFloat LogPolyExpansion::evaluate(const HighFloat& y) const {
  if (y < 0 || y > 1) return HighFloat(0);
  if (y == 1) return to_high(at_one_);
  HighFloat yy = y < HighFloat(1e-12) ? HighFloat(1e-12) : y;
  const HighFloat log_y = log(yy);
  HighFloat sum = 0;
  // Terms are sorted by power, so powers are built incrementally.
  int current_power = 0;
  HighFloat y_power = 1;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    if (t.power < 0) {
      y_power = pow(yy, t.power);
      current_power = t.power;
    }
    while (current_power < t.power) {
      y_power *= yy;
      ++current_power;
    }
    HighFloat term = scaled_high_[i] * y_power;
    if (t.log_degree > 0) term *= pow(log_y, t.log_degree);
    sum += term;
  }
  return sum;
}

double LogPolyExpansion::operator()(double y) const {
  if (!(y >= 0.0) || y > 1.0) return 0.0;
  if (y == 1.0) return to_double(at_one_);
  // Extended precision first; 100 digits only when cancellation is too severe.
  const long double yy = std::max(static_cast<long double>(y), 1e-12L);
  const long double log_y = std::log(yy);
  long double sum = 0.0L, magnitude = 0.0L;
  int current_power = 0;
  long double y_power = 1.0L;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    if (t.power < 0) {
      y_power = std::pow(yy, t.power);
      current_power = t.power;
    }
    while (current_power < t.power) {
      y_power *= yy;
      ++current_power;
    }
    long double term = scaled_long_[i] * y_power;
    for (unsigned d = 0; d < t.log_degree; ++d) term *= log_y;
    sum += term;
    magnitude += std::abs(term);
  }
  const long double bound = magnitude * std::numeric_limits<long double>::epsilon() *
                            static_cast<long double>(terms_.size() + 4);
  if (std::isfinite(magnitude) && bound <= 1e-15L * std::abs(sum)) return static_cast<double>(sum);
  return evaluate(HighFloat(y)).convert_to<double>();
}

BigRational LogPolyExpansion::mellin_moment(const BigRational& s) const {
  // int_0^1 y^{s+p-1} (ln y)^d / d! dy = (-1)^d / (s+p)^{d+1}
  BigRational sum = 0;
  for (const auto& t : terms_) {
    const BigRational base = s + t.power;
    if (base <= 0) throw PoleError("mellin_moment: divergent moment (s + power <= 0)");
    BigRational denom = 1;
    for (unsigned i = 0; i <= t.log_degree; ++i) denom *= base;
    const BigRational value = t.coefficient / denom;
    sum += (t.log_degree % 2 == 0) ? value : -value;
  }
  return sum;
}

LogPolyExpansion LogPolyExpansion::scaled(const BigRational& c) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coefficient *= c;
  return LogPolyExpansion(std::move(out));
}

LogPolyExpansion operator+(const LogPolyExpansion& a, const LogPolyExpansion& b) {
  std::vector<LogPolyExpansion::Term> all = a.terms_;
  all.insert(all.end(), b.terms_.begin(), b.terms_.end());
  return LogPolyExpansion(std::move(all));
}

}  // namespace truncprod
