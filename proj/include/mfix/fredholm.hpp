//  Copyright 2026 The mfix Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.


#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mfix/contraction.hpp"
#include "mfix/distance_space.hpp"
#include "mfix/fixpoint.hpp"
#include "mfix/instances/grid_function.hpp"
#include "mfix/report.hpp"
#include "mfix/spectral.hpp"

namespace mfix {

/// Nodes and non-negative weights discretizing a finite measure on T.
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  double measure() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }

  /// Composite midpoint rule on [a, b] with n cells.
  static Quadrature midpoint(double a, double b, std::size_t n) {
    if (n == 0 || !(b > a)) throw Error(ErrorKind::invalid_argument, "midpoint rule needs n >= 1 and a < b");
    Quadrature q;
    const double h = (b - a) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      q.nodes.push_back(a + (static_cast<double>(i) + 0.5) * h);
      q.weights.push_back(h);
    }
    return q;
  }

  /// User table; `total` is mu(T), matched by the weight sum to 1e-12.
  static Quadrature from_table(std::vector<double> nodes, std::vector<double> weights,
                               std::optional<double> total = std::nullopt) {
    if (nodes.empty() || nodes.size() != weights.size())
      throw Error(ErrorKind::invalid_argument, "quadrature needs matching non-empty node and weight lists");
    for (double w : weights)
      if (!(w >= 0.0)) throw Error(ErrorKind::invalid_argument, "quadrature weights must be non-negative");
    Quadrature q{std::move(nodes), std::move(weights)};
    if (total && std::abs(q.measure() - *total) > 1e-12)
      throw Error(ErrorKind::invalid_argument, "quadrature weights do not sum to the measure of T");
    return q;
  }
};

/// Dominating kernel Q >= 0 with its weighted discretization Q(t_i, s_j) w_j.
struct KernelBound {
  std::function<double(double, double)> Q;
  Eigen::MatrixXd weighted;
};

inline KernelBound make_kernel_bound(std::function<double(double, double)> Q, const Quadrature& quad) {
  const auto n = static_cast<Eigen::Index>(quad.size());
  Eigen::MatrixXd w(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double q = Q(quad.nodes[i], quad.nodes[j]);
      if (!(q >= 0.0)) throw Error(ErrorKind::invalid_argument, "kernel bound must be non-negative");
      w(i, j) = q * quad.weights[j];
    }
  return {std::move(Q), std::move(w)};
}

/// Kernel bound from node values Q(t_i, s_j).
inline KernelBound tabulated_kernel_bound(const Eigen::MatrixXd& values, const Quadrature& quad) {
  const auto n = static_cast<Eigen::Index>(quad.size());
  if (values.rows() != n || values.cols() != n)
    throw Error(ErrorKind::grid_mismatch, "tabulated kernel does not match the quadrature");
  std::vector<double> nodes = quad.nodes;
  auto index_of = [nodes](double t) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == t) return static_cast<Eigen::Index>(i);
    throw Error(ErrorKind::index_out_of_range, "tabulated kernel evaluated off the grid");
  };
  return make_kernel_bound([values, index_of](double t, double s) { return values(index_of(t), index_of(s)); },
                           quad);
}

/// Q_1, ..., Q_n with Q_k = Q_{k-1} Q_1 in weighted form.
inline std::vector<Eigen::MatrixXd> iterated_kernels(const KernelBound& bound, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::invalid_argument, "need at least one iterated kernel");
  std::vector<Eigen::MatrixXd> out{bound.weighted};
  out.reserve(n);
  for (std::size_t k = 1; k < n; ++k) out.push_back(out.back() * bound.weighted);
  return out;
}

struct FredholmCertificate {
  Certificate overall;
  Certificate spectral;
  Certificate series;
  bool agree = true;

  nlohmann::json to_json() const {
    return {{"overall", overall.to_json()}, {"spectral", spectral.to_json()},
            {"series", series.to_json()}, {"agree", agree}};
  }
};

/// Both routes: rho(Qmat) < 1, and the Cauchy test on the row sums
/// r_n(t_i) = sum_j Q_n[i, j] in the grid-function monoid.
inline FredholmCertificate convergence_certificate(const KernelBound& bound, const Quadrature& quad,
                                                   Horizon h = {20, 200}) {
  FredholmCertificate out;
  out.spectral = spectral_certificate(bound.weighted);

  GridFunctionMonoid m(make_grid(quad.nodes));
  auto fam = grid_family(m, h);
  std::vector<GridFunction> rows;
  rows.reserve(h.terms);
  Eigen::VectorXd r = bound.weighted.rowwise().sum();
  for (std::size_t n = 0; n < h.terms; ++n) {
    rows.push_back(m.make(std::vector<double>(r.data(), r.data() + r.size())));
    r = bound.weighted * r;
  }
  out.series.method = "cauchy-series";
  if (auto v = cauchy_series_test(rows, fam, h)) {
    out.series.status = CertificateStatus::certified;
    out.series.detail = "row-sum series certified within " + std::to_string(h.terms) + " kernels";
  } else {
    out.series.status = is_null(rows, fam, h) ? CertificateStatus::inconclusive : CertificateStatus::refuted;
    out.series.detail = "row-sum tail from kernel " + std::to_string(v.n + 1) + " exceeds level " +
                        std::to_string(v.level);
  }

  out.agree = out.series.status == out.spectral.status;
  out.overall = out.spectral;
  out.overall.method = "spectral-radius+cauchy-series";
  if (!out.agree) out.overall.detail += "; row-sum route " + to_string(out.series.status);
  return out;
}

using NodeValues = std::vector<std::vector<double>>;
using Nonlinearity = std::function<std::vector<double>(double, double, const std::vector<double>&)>;

struct FredholmProblem {
  Quadrature quad;
  NodeValues f;  // one R^d value per node
  Nonlinearity g;
  KernelBound bound;
  std::size_t tol_level = 30;
  std::size_t max_iter = 10'000;
  bool override_certificate = false;
  std::optional<NodeValues> x0{};
  Horizon certificate_horizon{20, 200};
};

using FredholmSpace = DistanceSpace<GridFunctionMonoid, NodeValues>;

/// Grid functions of R^d values with d(x, y)(t_i) = |x(t_i) - y(t_i)|_2.
inline FredholmSpace fredholm_space(const GridFunctionMonoid& m) {
  FredholmSpace space{grid_family(m), {}, SpaceClass::metric, "node_values", true, false};
  space.dist = [m](const NodeValues& x, const NodeValues& y) {
    if (x.size() != m.size() || y.size() != m.size())
      throw Error(ErrorKind::grid_mismatch, "node values do not match the grid");
    std::vector<double> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].size() != y[i].size()) throw Error(ErrorKind::invalid_argument, "value dimensions differ");
      double s = 0.0;
      for (std::size_t k = 0; k < x[i].size(); ++k) s += (x[i][k] - y[i][k]) * (x[i][k] - y[i][k]);
      d[i] = std::sqrt(s);
    }
    return m.make(std::move(d));
  };
  return space;
}

/// x(t_i) = f(t_i) + sum_j w_j g(t_i, s_j, x(s_j)).
inline std::function<NodeValues(const NodeValues&)> fredholm_operator(const Quadrature& quad, NodeValues f,
                                                                     Nonlinearity g) {
  return [quad, f = std::move(f), g = std::move(g)](const NodeValues& x) {
    NodeValues y = f;
    for (std::size_t i = 0; i < quad.size(); ++i)
      for (std::size_t j = 0; j < quad.size(); ++j) {
        const auto v = g(quad.nodes[i], quad.nodes[j], x[j]);
        if (v.size() != y[i].size()) throw Error(ErrorKind::invalid_argument, "g changes the value dimension");
        for (std::size_t k = 0; k < v.size(); ++k) y[i][k] += quad.weights[j] * v[k];
      }
    return y;
  };
}

struct FredholmResult {
  TraceFor<FredholmSpace> trace;
  FredholmCertificate certificate;
  FredholmSpace space;
  std::vector<double> nodes;

  const NodeValues& values() const { return trace.iterates.back(); }
};

inline FredholmResult fredholm_solve(const FredholmProblem& pb) {
  const std::size_t n = pb.quad.size();
  if (pb.f.size() != n) throw Error(ErrorKind::grid_mismatch, "f must have one value per node");
  if (!pb.g) throw Error(ErrorKind::invalid_argument, "g is not set");
  if (static_cast<std::size_t>(pb.bound.weighted.rows()) != n)
    throw Error(ErrorKind::grid_mismatch, "kernel bound does not match the quadrature");

  GridFunctionMonoid m(make_grid(pb.quad.nodes));
  auto space = fredholm_space(m);
  auto cert = convergence_certificate(pb.bound, pb.quad, pb.certificate_horizon);

  FixpointProblem<FredholmSpace> fp{space,
                                    fredholm_operator(pb.quad, pb.f, pb.g),
                                    integral_contraction(m, pb.bound.weighted),
                                    pb.x0 ? *pb.x0 : pb.f,
                                    {pb.tol_level, pb.max_iter},
                                    {},
                                    {},
                                    cert.overall};
  fp.options.override_certificate = pb.override_certificate;
  auto trace = picard_solve(fp);
  return {std::move(trace), std::move(cert), std::move(space), pb.quad.nodes};
}

/// Samples |g(t, s, x) - g(t, s, y)|_2 <= Q(t, s) |x - y|_2 over node pairs.
inline Report verify_kernel_bound(const KernelBound& bound, const Quadrature& quad, const Nonlinearity& g,
                                  std::size_t dim, std::uint64_t seed, std::size_t samples = 1000) {
  Report report("kernel_bound");
  auto& dom = report.add("dominates_g");
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> node(0, quad.size() - 1);
  std::uniform_real_distribution<double> val(-10.0, 10.0);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = quad.nodes[node(rng)], s = quad.nodes[node(rng)];
    std::vector<double> x(dim), y(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      x[i] = val(rng);
      y[i] = val(rng);
    }
    const auto gx = g(t, s, x), gy = g(t, s, y);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      lhs += (gx[i] - gy[i]) * (gx[i] - gy[i]);
      rhs += (x[i] - y[i]) * (x[i] - y[i]);
    }
    ++dom.checked;
    if (std::sqrt(lhs) > bound.Q(t, s) * std::sqrt(rhs) + 1e-12) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "t = %.17g, s = %.17g", t, s);
      fail(dom, buf);
    }
  }
  return report;
}

}  // namespace mfix
