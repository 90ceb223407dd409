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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "truncprod/sampling.hpp"

namespace truncprod::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum class Command { sample, density, kernel, hard_edge, verify };
enum class Format { json, csv };

struct Grid {
  std::vector<double> xs;
  std::vector<double> ys;
};

/// "x0:x1:steps[,y0:y1:steps]" with `steps` points including both ends. Without
/// the second part ys = xs. Throws DomainError.
Grid parse_grid(const std::string& text);

struct RunConfig {
  Command command = Command::verify;
  ProductSpec spec;
  std::vector<int> J;
  std::vector<int> mu;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 0;
  std::optional<Grid> grid;
  std::optional<std::filesystem::path> out;
  Format format = Format::json;
  std::optional<double> tolerance;
  unsigned threads = 1;
  int bins = 20;
  /// Test hook: scales c_{n,p} in the group integral check.
  double corrupt_cnp = 1.0;
};

struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 200000;
  unsigned threads = 1;
  double corrupt_cnp = 1.0;
};

/// Group integral (two cases), HCIZ, exact biorthogonality, telescoping,
/// Beta to Gamma bridge, Pf^2 = det and de Bruijn antisymmetry.
std::vector<CheckResult> verify_suite(const VerifyOptions& options);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Exit codes: 0 success, 1 a verify check failed, 2 bad configuration,
/// 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace truncprod::cli
