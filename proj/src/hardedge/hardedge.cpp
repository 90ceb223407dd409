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

#include "truncprod/hardedge.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/Dense>

#include "truncprod/contour.hpp"
#include "truncprod/errors.hpp"
#include "truncprod/kernels.hpp"
#include "truncprod/special.hpp"

namespace truncprod {

bool HardEdgeSpec::in_J(int j) const { return std::find(J.begin(), J.end(), j) != J.end(); }

void HardEdgeSpec::validate() const {
  if (nu.empty()) throw SpecError("hard edge: r must be at least 1");
  for (int v : nu) {
    if (v < 0) throw SpecError("hard edge: nu_j must be non-negative");
  }
  if (q() >= r()) throw SpecError("hard edge: |J| must be smaller than r");
  if (mu.size() != J.size()) throw SpecError("hard edge: mu must have one entry per index in J");
  for (int k = 0; k < q(); ++k) {
    if (J[k] < 2 || J[k] > r()) throw SpecError("hard edge: J must be a subset of {2, ..., r}");
    if (k > 0 && J[k] <= J[k - 1]) throw SpecError("hard edge: J must be strictly increasing");
    if (mu[k] < nu[J[k] - 1] + 1) throw SpecError("hard edge: mu_k must be at least nu_{j_k} + 1");
  }
}

namespace hardedge {
namespace {

using ComplexGrid = Eigen::MatrixXcd;
using LogFactor = std::function<Complex(Complex)>;

// (1 / (2 pi i)^2) sum_a sum_b  S_a(y) T_b(x) / (s_a - t_b) with
// S_a(y) = w_a exp(log_s(s_a)) y^{-s_a-1} and T_b(x) = w_b exp(log_t(t_b)) x^{t_b}.
ComplexGrid double_sum(const special::ContourRule& cs, const special::ContourRule& ct, const LogFactor& log_s,
                       const LogFactor& log_t, const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto ns = static_cast<Eigen::Index>(cs.points.size());
  const auto nt = static_cast<Eigen::Index>(ct.points.size());
  const auto nx = static_cast<Eigen::Index>(xs.size());
  const auto ny = static_cast<Eigen::Index>(ys.size());
  ComplexGrid s_part(ns, ny), t_part(nt, nx);
  for (Eigen::Index a = 0; a < ns; ++a) {
    const Complex s = cs.points[static_cast<std::size_t>(a)];
    const Complex base = log_s(s);
    for (Eigen::Index j = 0; j < ny; ++j) {
      s_part(a, j) = cs.weights[static_cast<std::size_t>(a)] * std::exp(base - (s + 1.0) * std::log(ys[static_cast<std::size_t>(j)]));
    }
  }
  for (Eigen::Index b = 0; b < nt; ++b) {
    const Complex t = ct.points[static_cast<std::size_t>(b)];
    const Complex base = log_t(t);
    for (Eigen::Index i = 0; i < nx; ++i) {
      t_part(b, i) = ct.weights[static_cast<std::size_t>(b)] * std::exp(base + t * std::log(xs[static_cast<std::size_t>(i)]));
    }
  }
  ComplexGrid out = ComplexGrid::Zero(nx, ny);
  constexpr Eigen::Index kBlock = 256;
  for (Eigen::Index b0 = 0; b0 < nt; b0 += kBlock) {
    const Eigen::Index rows = std::min(kBlock, nt - b0);
    ComplexGrid cauchy(rows, ns);
    for (Eigen::Index b = 0; b < rows; ++b) {
      const Complex t = ct.points[static_cast<std::size_t>(b0 + b)];
      for (Eigen::Index a = 0; a < ns; ++a) cauchy(b, a) = 1.0 / (cs.points[static_cast<std::size_t>(a)] - t);
    }
    out.noalias() += t_part.middleRows(b0, rows).transpose() * (cauchy * s_part);
  }
  return out / std::pow(Complex(0.0, 2.0 * std::numbers::pi), 2);
}

// First point of the sequence start, start + step, ... (|step| = 1) past which the
// log-magnitude stays `decay` below its running peak.
double cut_point(const std::function<double(double)>& log_magnitude, double start, double step, double decay,
                 double peak) {
  double p = start;
  for (int i = 0; i < 4000; ++i, p += step) {
    const double v = log_magnitude(p);
    peak = std::max(peak, v);
    if (i >= 2 && v < peak - decay) return p;
  }
  throw ConvergenceError("limit kernel: integrand does not decay along the contour");
}

struct Factors {
  LogFactor log_s;
  LogFactor log_t;
  // Net count of Gamma factors in s, less one for sin(pi s): the vertical line
  // decays like exp(-pi |Im s| excess / 2).
  int excess = 0;
};

Factors standard_factors(const HardEdgeSpec& h) {
  std::vector<double> nu{0.0};
  for (int v : h.nu) nu.push_back(v);
  std::vector<double> mu(h.mu.begin(), h.mu.end());
  Factors f;
  f.log_s = [nu, mu](Complex s) {
    Complex v = special::log_sinpi(s);
    for (double a : nu) v += special::complex_lgamma(s + 1.0 + a);
    for (double b : mu) v -= special::complex_lgamma(s + 1.0 + b);
    return v;
  };
  f.log_t = [nu, mu](Complex t) {
    Complex v = -special::log_sinpi(t);
    for (double a : nu) v -= special::complex_lgamma(t + 1.0 + a);
    for (double b : mu) v += special::complex_lgamma(t + 1.0 + b);
    return v;
  };
  f.excess = static_cast<int>(nu.size()) - static_cast<int>(mu.size()) - 2;
  return f;
}

Factors factored_factors(const HardEdgeSpec& h) {
  std::vector<double> nu{0.0};
  for (int j = 1; j <= h.r(); ++j) {
    if (!h.in_J(j)) nu.push_back(h.nu[static_cast<std::size_t>(j - 1)]);
  }
  const ExactPolynomial rt = rt_polynomial(h);
  Factors f;
  f.log_s = [nu, rt](Complex s) {
    Complex v = special::log_sinpi(s) - std::log(rt(s));
    for (double a : nu) v += special::complex_lgamma(s + 1.0 + a);
    return v;
  };
  f.log_t = [nu, rt](Complex t) {
    Complex v = std::log(rt(t)) - special::log_sinpi(t);
    for (double a : nu) v -= special::complex_lgamma(t + 1.0 + a);
    return v;
  };
  f.excess = static_cast<int>(nu.size()) - 2;
  return f;
}

ComplexGrid evaluate_level(const Factors& f, const std::vector<double>& xs, const std::vector<double>& ys,
                           SContour contour, int nodes, double decay) {
  const double x_max = *std::max_element(xs.begin(), xs.end());
  const double y_max = *std::max_element(ys.begin(), ys.end());
  const double y_min = *std::min_element(ys.begin(), ys.end());
  constexpr double kStandoff = 0.25, kHeight = 0.5, kCrossing = -0.5;

  // t: rectangle [-1/4, T] x [-1/2, 1/2] around the positive axis.
  auto log_t_size = [&](double re) {
    return (f.log_t(Complex(re, kHeight)) + Complex(re, kHeight) * std::log(x_max)).real();
  };
  const double t_peak = std::max(log_t_size(-0.25), log_t_size(0.5));
  const double t_end = std::ceil(cut_point(log_t_size, 0.5, 1.0, decay, t_peak));
  const auto ct = special::discretize({special::Rectangle{{-0.25, -kHeight}, {t_end, kHeight}}, nodes, 0.5});

  special::ContourRule cs;
  if (contour == SContour::hankel) {
    auto log_s_size = [&](double re) {
      const Complex s(re, kStandoff);
      return (f.log_s(s) - (s + 1.0) * std::log(re < -1.0 ? y_max : y_min)).real();
    };
    const double s_peak = log_s_size(kCrossing);
    const double leftmost = std::floor(cut_point(log_s_size, -1.0, -1.0, decay, s_peak));
    special::Hankel loop{kCrossing, kStandoff, leftmost, leftmost};
    cs = special::discretize({loop, nodes, 0.5});
  } else {
    if (f.excess <= 0) {
      throw DomainError("limit kernel: the vertical line needs q <= r - 2 for absolute convergence");
    }
    auto log_s_size = [&](double im) {
      const Complex s(kCrossing, im);
      return (f.log_s(s) - (s + 1.0) * std::log(y_max)).real();
    };
    const double height = std::ceil(cut_point(log_s_size, 1.0, 1.0, decay, log_s_size(0.0)));
    cs = special::discretize({special::VerticalLine{kCrossing, height}, nodes, 0.5});
  }
  return double_sum(cs, ct, f.log_s, f.log_t, xs, ys);
}

std::vector<std::vector<double>> converge(const Factors& f, const std::vector<double>& xs,
                                          const std::vector<double>& ys, const LimitKernelOptions& options) {
  if (xs.empty() || ys.empty()) return {};
  for (double v : xs) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("limit kernel: x must be positive");
  }
  for (double v : ys) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("limit kernel: y must be positive");
  }
  if (options.nodes < 16) throw DomainError("limit kernel: nodes must be at least 16");
  ComplexGrid previous = evaluate_level(f, xs, ys, options.s_contour, options.nodes, options.decay);
  for (int level = 1; level <= 2; ++level) {
    const ComplexGrid current =
        evaluate_level(f, xs, ys, options.s_contour, options.nodes << level, options.decay * 1.5);
    bool done = true;
    for (Eigen::Index i = 0; i < current.rows() && done; ++i) {
      for (Eigen::Index j = 0; j < current.cols(); ++j) {
        if (std::abs(current(i, j) - previous(i, j)) > options.tolerance * std::max(1.0, std::abs(current(i, j)))) {
          done = false;
          break;
        }
      }
    }
    if (done) {
      std::vector<std::vector<double>> out(xs.size(), std::vector<double>(ys.size()));
      for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < ys.size(); ++j) {
          out[i][j] = current(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).real();
        }
      }
      return out;
    }
    previous = current;
  }
  throw ConvergenceError("limit kernel: node doubling did not meet the tolerance");
}

}  // namespace

double scaling_constant(const ProductSpec& spec, const std::vector<int>& J) {
  spec.validate();
  HardEdgeSpec h{spec.nu, J, {}};
  for (int j : J) {
    if (j >= 1 && j <= spec.r()) h.mu.push_back(spec.m[static_cast<std::size_t>(j - 1)] - spec.n);
  }
  h.validate();
  double c = spec.n;
  for (int j = 1; j <= spec.r(); ++j) {
    if (!h.in_J(j)) c *= spec.m[static_cast<std::size_t>(j - 1)] - spec.n;
  }
  return c;
}

std::vector<std::vector<double>> limit_kernel_grid(const HardEdgeSpec& h, const std::vector<double>& xs,
                                                   const std::vector<double>& ys,
                                                   const LimitKernelOptions& options) {
  h.validate();
  return converge(standard_factors(h), xs, ys, options);
}

double limit_kernel(const HardEdgeSpec& h, double x, double y, const LimitKernelOptions& options) {
  return limit_kernel_grid(h, {x}, {y}, options)[0][0];
}

ExactPolynomial rt_polynomial(const HardEdgeSpec& h) {
  h.validate();
  ExactPolynomial r = ExactPolynomial::constant(1);
  for (int k = 0; k < h.q(); ++k) {
    const int nu = h.nu[static_cast<std::size_t>(h.J[k] - 1)];
    // Gamma(t+1+mu) / Gamma(t+1+nu) = (t+1+nu)(t+2+nu)...(t+mu)
    for (int l = nu + 1; l <= h.mu[k]; ++l) r = r * ExactPolynomial::linear(-l);
  }
  return r;
}

std::vector<std::vector<double>> limit_kernel_factored_grid(const HardEdgeSpec& h, const std::vector<double>& xs,
                                                            const std::vector<double>& ys,
                                                            const LimitKernelOptions& options) {
  h.validate();
  return converge(factored_factors(h), xs, ys, options);
}

ProductSpec HardEdgeFamily::at(int n) const {
  limit.validate();
  if (slope.size() != limit.nu.size() || offset.size() != limit.nu.size()) {
    throw SpecError("hard edge family: slope and offset need one entry per factor");
  }
  ProductSpec spec{n, limit.nu, std::vector<int>(limit.nu.size())};
  int k = 0;
  for (int j = 1; j <= limit.r(); ++j) {
    const auto idx = static_cast<std::size_t>(j - 1);
    spec.m[idx] = limit.in_J(j) ? n + limit.mu[static_cast<std::size_t>(k++)] : slope[idx] * n + offset[idx];
  }
  spec.validate();
  return spec;
}

std::vector<std::vector<double>> scaled_finite_kernel_grid(const ProductSpec& spec, const std::vector<int>& J,
                                                           const std::vector<double>& xs,
                                                           const std::vector<double>& ys) {
  const double c = scaling_constant(spec, J);
  std::vector<std::vector<double>> out(xs.size(), std::vector<double>(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      out[i][j] = kernels::kernel_kn_contour(spec, xs[i] / c, ys[j] / c) / c;
    }
  }
  return out;
}

std::vector<ConvergenceRow> convergence_experiment(const HardEdgeFamily& family, const std::vector<int>& ns,
                                                   const std::vector<double>& points,
                                                   const LimitKernelOptions& options) {
  const auto limit = limit_kernel_grid(family.limit, points, points, options);
  std::vector<ConvergenceRow> rows;
  for (int n : ns) {
    const ProductSpec spec = family.at(n);
    ConvergenceRow row{n, scaling_constant(spec, family.limit.J), 0.0};
    const auto finite = scaled_finite_kernel_grid(spec, family.limit.J, points, points);
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = 0; j < points.size(); ++j) {
        row.sup_error = std::max(row.sup_error, std::abs(finite[i][j] - limit[i][j]));
      }
    }
    rows.push_back(row);
  }
  return rows;
}

bool decreasing_within(const std::vector<ConvergenceRow>& rows, double slack) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].sup_error > (1.0 + slack) * rows[i - 1].sup_error) return false;
  }
  return true;
}

Complex scaled_gamma_ratio(Complex s, Complex t, double shift) {
  return std::exp((s - t) * std::log(std::abs(shift))) * special::gamma_ratio(t + 1.0 + shift, s + 1.0 + shift);
}

int numerical_rank(const std::vector<std::vector<double>>& matrix, double relative_tolerance) {
  if (matrix.empty()) return 0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(matrix.size()), static_cast<Eigen::Index>(matrix[0].size()));
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (matrix[i].size() != matrix[0].size()) throw DimensionError("numerical_rank: ragged matrix");
    for (std::size_t j = 0; j < matrix[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = matrix[i][j];
    }
  }
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > relative_tolerance * sv(0)) ++rank;
  }
  return rank;
}

}  // namespace hardedge
}  // namespace truncprod
