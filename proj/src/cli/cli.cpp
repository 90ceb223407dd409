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

#include "truncprod/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "truncprod/ensembles.hpp"
#include "truncprod/errors.hpp"
#include "truncprod/hardedge.hpp"
#include "truncprod/kernels.hpp"
#include "truncprod/pfaffian.hpp"
#include "truncprod/quadrature.hpp"

namespace truncprod::cli {
namespace {

using json = nlohmann::ordered_json;

std::vector<double> linspace(double a, double b, int steps) {
  if (steps < 1) throw DomainError("grid: steps must be positive");
  if (steps == 1) return {a};
  std::vector<double> out;
  for (int i = 0; i < steps; ++i) out.push_back(a + (b - a) * i / (steps - 1));
  return out;
}

std::vector<double> parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  for (std::string piece; std::getline(stream, piece, ':');) parts.push_back(piece);
  if (parts.size() != 3) throw DomainError("grid: expected x0:x1:steps, got '" + text + "'");
  try {
    std::size_t used = 0;
    const double a = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    const double b = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    const int steps = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument(text);
    return linspace(a, b, steps);
  } catch (const std::logic_error&) {
    throw DomainError("grid: cannot parse '" + text + "'");
  }
}

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

json spec_json(const ProductSpec& spec) { return {{"n", spec.n}, {"r", spec.r()}, {"nu", spec.nu}, {"m", spec.m}}; }

json envelope(const char* command, json spec, const std::optional<std::uint64_t>& seed, json results) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["spec"] = std::move(spec);
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["results"] = std::move(results);
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void emit(const RunConfig& config, const std::filesystem::path* path, const std::string& content, std::ostream& out) {
  if (path) {
    write_atomic(*path, content);
  } else if (config.out) {
    write_atomic(*config.out, content);
  } else {
    out << content;
  }
}

const Grid& require_grid(const RunConfig& config) {
  if (!config.grid) throw DomainError("--grid is required for this command");
  return *config.grid;
}

std::uint64_t require_seed(const RunConfig& config) {
  if (!config.seed) throw DomainError("--seed is required for stochastic commands");
  return *config.seed;
}

// CSV goes to --out and the JSON summary to the same path with a .json
// extension; JSON format writes the summary alone with the values inside.
void emit_pair(const RunConfig& config, const std::string& csv, json summary, json values, std::ostream& out) {
  if (config.format == Format::csv) {
    if (config.out) {
      write_atomic(*config.out, csv);
      std::filesystem::path sidecar = *config.out;
      sidecar.replace_extension(".json");
      if (sidecar == *config.out) sidecar += ".json";
      write_atomic(sidecar, dump(summary));
    } else {
      out << csv;
    }
  } else {
    summary["results"]["values"] = std::move(values);
    emit(config, nullptr, dump(summary), out);
  }
}

int cmd_sample(const RunConfig& config, std::ostream& out) {
  const std::uint64_t seed = require_seed(config);
  const ProductSpec& spec = config.spec;
  if (config.samples < 1) throw DomainError("--samples must be positive");
  if (config.bins < 1) throw DomainError("--bins must be positive");

  std::vector<std::vector<double>> draws(config.samples);
  const unsigned threads = std::max(1u, config.threads);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < draws.size(); i += threads) {
          draws[i] = sampling::sample_product_squared_singvals(spec, RngStream{seed, i});
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<std::size_t> counts(static_cast<std::size_t>(config.bins));
  std::string csv;
  for (int k = 0; k < spec.n; ++k) csv += (k ? ",y" : "y") + std::to_string(k + 1);
  csv += "\n";
  for (const auto& row : draws) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      csv += (k ? "," : "") + fmt(row[k]);
      const auto bin = std::min<std::size_t>(counts.size() - 1, static_cast<std::size_t>(row[k] * config.bins));
      ++counts[bin];
    }
    csv += "\n";
  }
  const double width = 1.0 / config.bins;
  const double total = static_cast<double>(config.samples) * spec.n;
  std::vector<double> edges, density;
  for (int b = 0; b <= config.bins; ++b) edges.push_back(b * width);
  for (std::size_t c : counts) density.push_back(static_cast<double>(c) / (total * width));

  json results{{"samples", config.samples},
               {"histogram", {{"bins", config.bins}, {"edges", edges}, {"counts", counts}, {"density", density}}}};
  emit_pair(config, csv, envelope("sample", spec_json(spec), seed, std::move(results)), draws, out);
  return 0;
}

int cmd_density(const RunConfig& config, std::ostream& out) {
  const Grid& grid = require_grid(config);
  const BiorthogonalSystem system(config.spec);
  const double n = config.spec.n;
  std::string csv = "x,density\n";
  json values = json::array();
  bool nonnegative = true;
  for (double x : grid.xs) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("density: grid points must lie in (0,1)");
    const double rho = kernels::kernel_kn_sum(system, x, x) / n;
    nonnegative = nonnegative && rho >= -1e-10;
    csv += fmt(x) + "," + fmt(rho) + "\n";
    values.push_back({{"x", x}, {"density", rho}});
  }
  const double mass = special::integrate([&](double x) { return kernels::kernel_kn_sum(system, x, x) / n; }, 0.0,
                                         1.0, config.tolerance.value_or(1e-10));
  json results{{"points", grid.xs.size()}, {"total_mass", mass}, {"diagonal_nonnegative", nonnegative}};
  emit_pair(config, csv, envelope("density", spec_json(config.spec), config.seed, std::move(results)), values, out);
  return 0;
}

int cmd_kernel(const RunConfig& config, std::ostream& out) {
  const Grid& grid = require_grid(config);
  const double tolerance = config.tolerance.value_or(1e-10);
  const BiorthogonalSystem system(config.spec);
  std::string csv = "x,y,K_sum,K_contour,abs_diff\n";
  json values = json::array();
  double max_diff = 0.0, max_relative = 0.0;
  for (double x : grid.xs) {
    for (double y : grid.ys) {
      const double a = kernels::kernel_kn_sum(system, x, y);
      const double b = kernels::kernel_kn_contour(config.spec, x, y, tolerance);
      const double d = std::abs(a - b);
      max_diff = std::max(max_diff, d);
      max_relative = std::max(max_relative, d / std::max(1.0, std::abs(b)));
      csv += fmt(x) + "," + fmt(y) + "," + fmt(a) + "," + fmt(b) + "," + fmt(d) + "\n";
      values.push_back({{"x", x}, {"y", y}, {"K_sum", a}, {"K_contour", b}, {"abs_diff", d}});
    }
  }
  bool nonnegative = true;
  for (double x : grid.xs) nonnegative = nonnegative && kernels::kernel_kn_sum(system, x, x) >= -1e-10;
  const double trace =
      special::integrate([&](double x) { return kernels::kernel_kn_sum(system, x, x); }, 0.0, 1.0, 1e-11);
  json results{{"max_discrepancy", max_diff},
               {"max_relative_discrepancy", max_relative},
               {"trace", trace},
               {"trace_error", std::abs(trace - config.spec.n)},
               {"trace_ok", std::abs(trace - config.spec.n) < 1e-8},
               {"diagonal_nonnegative", nonnegative}};
  emit_pair(config, csv, envelope("kernel", spec_json(config.spec), config.seed, std::move(results)), values, out);
  return 0;
}

int cmd_hard_edge(const RunConfig& config, std::ostream& out) {
  const Grid& grid = require_grid(config);
  const HardEdgeSpec h{config.spec.nu, config.J, config.mu};
  h.validate();
  hardedge::LimitKernelOptions options;
  if (config.tolerance) options.tolerance = *config.tolerance;
  const auto k = hardedge::limit_kernel_grid(h, grid.xs, grid.ys, options);
  std::string csv = "x,y,K\n";
  json values = json::array();
  for (std::size_t i = 0; i < grid.xs.size(); ++i) {
    for (std::size_t j = 0; j < grid.ys.size(); ++j) {
      csv += fmt(grid.xs[i]) + "," + fmt(grid.ys[j]) + "," + fmt(k[i][j]) + "\n";
      values.push_back({{"x", grid.xs[i]}, {"y", grid.ys[j]}, {"K", k[i][j]}});
    }
  }
  const auto diagonal = hardedge::limit_kernel_grid(h, grid.xs, grid.xs, options);
  bool nonnegative = true;
  for (std::size_t i = 0; i < grid.xs.size(); ++i) nonnegative = nonnegative && diagonal[i][i] >= -1e-8;
  std::vector<std::string> rt;
  const ExactPolynomial r = hardedge::rt_polynomial(h);
  for (const auto& c : r.coefficients()) rt.push_back(c.str());
  json spec{{"r", h.r()}, {"nu", h.nu}, {"J", h.J}, {"mu", h.mu}};
  json results{{"tolerance", options.tolerance},
               {"diagonal_nonnegative", nonnegative},
               {"rt_coefficients", rt},
               {"rt_degree", static_cast<int>(rt.size()) - 1}};
  emit_pair(config, csv, envelope("hard-edge", std::move(spec), config.seed, std::move(results)), values, out);
  return 0;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  VerifyOptions options;
  options.seed = require_seed(config);
  if (config.samples > 0) options.samples = config.samples;
  options.threads = config.threads;
  options.corrupt_cnp = config.corrupt_cnp;
  const auto checks = verify_suite(options);
  json entries = json::array();
  bool all = true;
  for (const auto& c : checks) {
    entries.push_back({{"name", c.name}, {"statistic", c.statistic}, {"threshold", c.threshold}, {"pass", c.pass}});
    all = all && c.pass;
  }
  json results{{"samples", options.samples}, {"checks", entries}, {"all_pass", all}};
  if (config.format == Format::csv) {
    std::string csv = "name,statistic,threshold,pass\n";
    for (const auto& c : checks) {
      csv += c.name + "," + fmt(c.statistic) + "," + fmt(c.threshold) + "," + (c.pass ? "true" : "false") + "\n";
    }
    emit_pair(config, csv, envelope("verify", json::object(), options.seed, std::move(results)), nullptr, out);
  } else {
    emit(config, nullptr, dump(envelope("verify", json::object(), options.seed, std::move(results))), out);
  }
  return all ? 0 : 1;
}

ComplexMatrix diagonal(std::initializer_list<double> values) {
  Eigen::VectorXcd d(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) d(i++) = v;
  return d.asDiagonal();
}

// Every (n, r) with n <= 6, r <= 3, nu_j in {0, 1, 2} and the smallest valid m.
std::vector<ProductSpec> minimal_specs() {
  std::vector<ProductSpec> out;
  for (int n = 1; n <= 6; ++n) {
    for (int r = 1; r <= 3; ++r) {
      int combos = 1;
      for (int j = 0; j < r; ++j) combos *= 3;
      for (int c = 0; c < combos; ++c) {
        ProductSpec spec{n, {}, {}};
        for (int j = 0, rest = c; j < r; ++j, rest /= 3) {
          spec.nu.push_back(rest % 3);
          spec.m.push_back(j == 0 ? 2 * n + rest % 3 : n + rest % 3 + 1);
        }
        out.push_back(spec);
      }
    }
  }
  return out;
}

}  // namespace

Grid parse_grid(const std::string& text) {
  const auto comma = text.find(',');
  Grid g;
  g.xs = parse_axis(text.substr(0, comma));
  g.ys = comma == std::string::npos ? g.xs : parse_axis(text.substr(comma + 1));
  return g;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path temporary = path;
  temporary += ".tmp";
  {
    std::ofstream file(temporary, std::ios::binary | std::ios::trunc);
    if (!file) throw NumericalError("cannot open " + temporary.string() + " for writing");
    file << content;
    file.flush();
    if (!file) throw NumericalError("cannot write " + temporary.string());
  }
  std::filesystem::rename(temporary, path);
}

std::vector<CheckResult> verify_suite(const VerifyOptions& options) {
  std::vector<CheckResult> checks;
  const sampling::McOptions mc{options.samples, options.seed, options.threads};

  {
    const std::vector<double> a{2.0, 3.0}, b{0.5, 1.0};
    const auto r = sampling::mc_group_integral(diagonal({2.0, 3.0}), diagonal({0.5, 1.0}), 1, mc);
    const double z = r.estimate.z_score(sampling::group_integral_rhs(a, b, 1) * options.corrupt_cnp);
    checks.push_back({"group_integral", z, 3.0, z < 3.0});
  }
  {
    const std::vector<double> a{0.5, 2.0}, b{1.0, 0.1};
    sampling::McOptions shifted = mc;
    shifted.seed = options.seed + 1;
    const auto r = sampling::mc_group_integral(diagonal({0.5, 2.0}), diagonal({1.0, 0.1}), 1, shifted);
    const double z = r.estimate.z_score(sampling::group_integral_rhs(a, b, 1) * options.corrupt_cnp);
    checks.push_back({"group_integral_indicator", z, 3.0, z < 3.0 && r.flagged > 0});
  }
  {
    const std::vector<double> a{1.0, 2.0}, b{0.0, 1.0};
    sampling::McOptions shifted = mc;
    shifted.seed = options.seed + 2;
    const auto r = sampling::mc_hciz(diagonal({1.0, 2.0}), diagonal({0.0, 1.0}), 1.0, shifted);
    const double z = r.estimate.z_score(sampling::hciz_exact(a, b, 1.0));
    checks.push_back({"hciz", z, 3.0, z < 3.0});
  }
  {
    double wrong = 0.0;
    for (const auto& spec : minimal_specs()) {
      const auto g = BiorthogonalSystem(spec).gram();
      for (std::size_t j = 0; j < g.size(); ++j) {
        for (std::size_t k = 0; k < g.size(); ++k) {
          if (g[j][k] != BigRational(j == k ? 1 : 0)) wrong += 1.0;
        }
      }
    }
    checks.push_back({"biorthogonality", wrong, 0.0, wrong == 0.0});
  }

  std::mt19937_64 engine = RngStream{options.seed, 0xfeedULL}.engine();
  {
    std::uniform_real_distribution<double> box(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Complex s(box(engine), box(engine)), t(box(engine), box(engine));
      worst = std::max(worst, kernels::telescoping_check(s, t, 1 + i % 6));
    }
    checks.push_back({"telescoping", worst, 1e-12, worst < 1e-12});
  }
  {
    auto f = [](double x) { return std::exp(-x); };
    std::vector<double> ys;
    for (int i = 1; i <= 20; ++i) ys.push_back(0.25 * i);
    double previous = INFINITY, ratio = 0.0;
    for (int m : {50, 100, 200}) {
      const double d = ensembles::mellin_bridge_distance(f, 0, 2, m, ys);
      if (std::isfinite(previous)) ratio = std::max(ratio, d / previous);
      previous = d;
    }
    checks.push_back({"mellin_bridge", ratio, 1.0, ratio < 1.0});
  }
  {
    std::normal_distribution<double> gauss;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      Eigen::MatrixXd a(6, 6);
      for (int r = 0; r < 6; ++r) {
        a(r, r) = 0.0;
        for (int c = r + 1; c < 6; ++c) {
          a(r, c) = gauss(engine);
          a(c, r) = -a(r, c);
        }
      }
      const double pf = special::pfaffian(a);
      const double det = a.determinant();
      worst = std::max(worst, std::abs(pf * pf - det) / std::max(std::abs(det), 1e-300));
    }
    checks.push_back({"pfaffian", worst, 1e-10, worst < 1e-10});
  }
  {
    auto f = [](double u, double v) { return (u - v) * std::exp(-u - v); };
    double worst = 0.0;
    for (auto [y1, y2] : {std::pair{0.2, 0.7}, std::pair{0.45, 0.9}, std::pair{0.1, 0.3}}) {
      worst = std::max(worst, std::abs(ensembles::debruijn_transform(f, 1, 2, y1, y2) +
                                       ensembles::debruijn_transform(f, 1, 2, y2, y1)));
    }
    checks.push_back({"debruijn_antisymmetry", worst, 1e-12, worst < 1e-12});
  }
  return checks;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Squared singular values of products of truncated unitary matrices"};
  RunConfig config;
  std::string command, format = "json", grid;
  std::optional<std::string> out_path;
  std::optional<int> r;
  std::uint64_t seed = 0;

  app.add_option("--command", command, "sample | density | kernel | hard-edge | verify")
      ->required()
      ->check(CLI::IsMember({"sample", "density", "kernel", "hard-edge", "verify"}));
  app.add_option("--n", config.spec.n, "number of nonzero squared singular values");
  app.add_option("--r", r, "number of factors (checked against --nu)");
  app.add_option("--nu", config.spec.nu, "comma list nu_1..nu_r")->delimiter(',');
  app.add_option("--m", config.spec.m, "comma list m_1..m_r")->delimiter(',');
  app.add_option("--J", config.J, "hard edge: comma list of indices in {2..r}")->delimiter(',');
  app.add_option("--mu", config.mu, "hard edge: comma list mu_1..mu_q")->delimiter(',');
  auto* seed_option = app.add_option("--seed", seed, "random seed");
  app.add_option("--samples", config.samples, "Monte Carlo draws");
  app.add_option("--grid", grid, "x0:x1:steps[,y0:y1:steps]");
  app.add_option("--out", out_path, "output file (stdout if omitted)");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tolerance", config.tolerance, "quadrature tolerance");
  app.add_option("--threads", config.threads, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--bins", config.bins, "histogram bins for sample");
  app.add_option("--corrupt-cnp", config.corrupt_cnp)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*seed_option) config.seed = seed;
    if (out_path) config.out = *out_path;
    config.format = format == "csv" ? Format::csv : Format::json;
    if (!grid.empty()) config.grid = parse_grid(grid);
    if (command == "sample") config.command = Command::sample;
    if (command == "density") config.command = Command::density;
    if (command == "kernel") config.command = Command::kernel;
    if (command == "hard-edge") config.command = Command::hard_edge;
    if (command == "verify") config.command = Command::verify;
    if (r && *r != config.spec.r()) throw SpecError("--r does not match the length of --nu");
    if (config.command != Command::verify && config.command != Command::hard_edge) config.spec.validate();
    if (config.command == Command::hard_edge && config.spec.nu.empty()) throw SpecError("--nu is required");

    switch (config.command) {
      case Command::sample:
        return cmd_sample(config, out);
      case Command::density:
        return cmd_density(config, out);
      case Command::kernel:
        return cmd_kernel(config, out);
      case Command::hard_edge:
        return cmd_hard_edge(config, out);
      case Command::verify:
        return cmd_verify(config, out);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 3;
}

}  // namespace truncprod::cli
