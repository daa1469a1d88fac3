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

#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mfix/instances/grid_function.hpp"
#include "mfix/instances/power.hpp"
#include "mfix/instances/reals.hpp"
#include "mfix/ordered_monoid.hpp"
#include "mfix/report.hpp"
#include "mfix/spectral.hpp"

namespace mfix {

enum class CertificateStatus { certified, refuted, inconclusive };

inline std::string to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::certified: return "certified";
    case CertificateStatus::refuted: return "refuted";
    case CertificateStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

/// Outcome of a convergence precheck on sum_n lambda^n(alpha).
struct Certificate {
  CertificateStatus status = CertificateStatus::inconclusive;
  std::string method;
  std::optional<double> spectral_radius;
  std::string detail;
  bool overridden = false;

  bool certified() const { return status == CertificateStatus::certified; }

  nlohmann::json to_json() const {
    nlohmann::json j{{"status", to_string(status)}, {"method", method}, {"detail", detail},
                     {"overridden", overridden}};
    j["spectral_radius"] = spectral_radius ? nlohmann::json(*spectral_radius) : nlohmann::json();
    return j;
  }
};

namespace lambda_kind {
struct Scalar {
  double q;
};
struct Matrix {
  Eigen::MatrixXd L;
};
// Weighted kernel matrix Q(t_i, s_j) w_j acting on grid functions.
struct Integral {
  Eigen::MatrixXd Q;
};
struct Custom {
  std::string label;
};
}  // namespace lambda_kind

using LambdaKind =
    std::variant<lambda_kind::Scalar, lambda_kind::Matrix, lambda_kind::Integral, lambda_kind::Custom>;

/// A monotone self-map of M+ used to bound step distances.
template <OrderedMonoid M>
struct ContractionOperator {
  using value_type = element_t<M>;

  M monoid;
  std::function<value_type(const value_type&)> apply;
  LambdaKind kind;

  value_type operator()(const value_type& x) const { return apply(x); }

  std::string describe() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, lambda_kind::Scalar>) return "scalar";
          else if constexpr (std::is_same_v<K, lambda_kind::Matrix>) return "matrix";
          else if constexpr (std::is_same_v<K, lambda_kind::Integral>) return "integral";
          else return "custom:" + k.label;
        },
        kind);
  }
};

inline ContractionOperator<Reals> scalar_contraction(double q, Reals m = Reals{}) {
  if (!(q >= 0.0)) throw Error(ErrorKind::invalid_argument, "scalar contraction needs q >= 0");
  return {m, [q](const double& t) { return q * t; }, lambda_kind::Scalar{q}};
}

inline ContractionOperator<VectorMonoid> matrix_contraction(const Eigen::MatrixXd& L) {
  if (L.rows() != L.cols() || L.rows() == 0)
    throw Error(ErrorKind::invalid_argument, "contraction matrix must be square");
  if ((L.array() < 0.0).any())
    throw Error(ErrorKind::invalid_argument, "contraction matrix must be non-negative");
  const auto dim = static_cast<std::size_t>(L.rows());
  return {vector_monoid(dim),
          [L, dim](const std::vector<double>& t) {
            if (t.size() != dim) throw Error(ErrorKind::invalid_argument, "vector has wrong dimension");
            Eigen::VectorXd v = L * Eigen::Map<const Eigen::VectorXd>(t.data(), static_cast<Eigen::Index>(dim));
            return std::vector<double>(v.data(), v.data() + v.size());
          },
          lambda_kind::Matrix{L}};
}

inline ContractionOperator<GridFunctionMonoid> integral_contraction(const GridFunctionMonoid& m,
                                                                    const Eigen::MatrixXd& Q) {
  const auto n = static_cast<Eigen::Index>(m.size());
  if (Q.rows() != n || Q.cols() != n)
    throw Error(ErrorKind::grid_mismatch, "kernel matrix does not match the grid");
  if ((Q.array() < 0.0).any()) throw Error(ErrorKind::invalid_argument, "kernel bound must be non-negative");
  return {m,
          [m, Q, n](const GridFunction& u) {
            if (static_cast<Eigen::Index>(u.size()) != n)
              throw Error(ErrorKind::grid_mismatch, "grid function has wrong number of values");
            Eigen::VectorXd v = Q * Eigen::Map<const Eigen::VectorXd>(u.values.data(), n);
            return m.make(std::vector<double>(v.data(), v.data() + v.size()));
          },
          lambda_kind::Integral{Q}};
}

template <OrderedMonoid M>
ContractionOperator<M> custom_contraction(M m, std::function<element_t<M>(const element_t<M>&)> fn,
                                          std::string label) {
  return {std::move(m), std::move(fn), lambda_kind::Custom{std::move(label)}};
}

/// Maps a spectral estimate to a certificate. Certified iff rho < 1.
inline Certificate spectral_certificate(const Eigen::MatrixXd& L, double tol = 1e-10) {
  auto est = spectral_radius(L, tol);
  Certificate c;
  c.method = "spectral-radius";
  c.spectral_radius = est.rho;
  bool below = est.upper < 1.0 || (est.lower < 1.0 && est.rho < 1.0 - tol);
  c.status = below ? CertificateStatus::certified : CertificateStatus::refuted;
  char buf[160];
  std::snprintf(buf, sizeof buf, "rho in [%.17g, %.17g] after %zu iterations", est.lower,
                std::min(est.upper, 1e300), est.iterations);
  c.detail = buf;
  return c;
}

namespace detail {

template <OrderedMonoid M>
void sample_monotone(const ContractionOperator<M>& lambda, std::uint64_t seed, std::size_t samples) {
  const M& m = lambda.monoid;
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto x = m.sample(rng);
    const auto y = m.add(x, m.sample(rng));
    const auto lx = lambda(x), ly = lambda(y);
    if (!is_positive(m, lx) || !le(m, lx, ly)) {
      throw Error(ErrorKind::non_monotone, "lambda(" + m.encode(x).dump() + ") = " + m.encode(lx).dump() +
                                               " is not below lambda(" + m.encode(y).dump() +
                                               ") = " + m.encode(ly).dump());
    }
  }
}

}  // namespace detail

/// Decides whether sum_n lambda^n(alpha) is a Cauchy series. Monotonicity is
/// sampled first.
template <OrderedMonoid M>
Certificate precheck_lambda(const ContractionOperator<M>& lambda, const element_t<M>& alpha,
                            const NullFamily<M>& fam, const Horizon& h, std::uint64_t seed = 1,
                            std::size_t samples = 200) {
  const M& m = lambda.monoid;
  if (!is_positive(m, alpha))
    throw Error(ErrorKind::negative_term, "alpha " + m.encode(alpha).dump() + " is not in M+");
  detail::sample_monotone(lambda, seed, samples);

  if (const auto* s = std::get_if<lambda_kind::Scalar>(&lambda.kind)) {
    Certificate c;
    c.method = "geometric";
    c.spectral_radius = s->q;
    c.status = s->q < 1.0 ? CertificateStatus::certified : CertificateStatus::refuted;
    char buf[64];
    std::snprintf(buf, sizeof buf, "q = %.17g", s->q);
    c.detail = buf;
    return c;
  }
  if (const auto* mat = std::get_if<lambda_kind::Matrix>(&lambda.kind)) return spectral_certificate(mat->L);

  std::vector<element_t<M>> terms;
  terms.reserve(h.terms);
  element_t<M> t = alpha;
  for (std::size_t n = 0; n < h.terms; ++n) {
    terms.push_back(t);
    t = lambda(t);
  }
  Certificate c;
  c.method = "cauchy-series";
  auto v = cauchy_series_test(terms, fam, h);
  if (v) {
    c.status = CertificateStatus::certified;
    c.detail = "tail sums below every level within " + std::to_string(h.terms) + " terms";
  } else if (is_null(terms, fam, h)) {
    c.status = CertificateStatus::inconclusive;
    c.detail = "terms are null but the tail from " + std::to_string(v.n) + " exceeds level " +
               std::to_string(v.level);
  } else {
    c.status = CertificateStatus::refuted;
    c.detail = "tail from " + std::to_string(v.n) + " exceeds level " + std::to_string(v.level);
  }
  return c;
}

/// Samples monotonicity and null preservation of lambda.
template <OrderedMonoid M>
Report verify_contraction_operator(const ContractionOperator<M>& lambda, const NullFamily<M>& fam,
                                   std::uint64_t seed, std::size_t samples = 1000) {
  const M& m = lambda.monoid;
  Report report("lambda/" + lambda.describe());
  auto& mono = report.add("monotone");
  auto& cone = report.add("maps_into_cone");
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto x = m.sample(rng);
    const auto y = m.add(x, m.sample(rng));
    const auto lx = lambda(x), ly = lambda(y);
    ++cone.checked;
    if (!is_positive(m, lx)) fail(cone, m.encode(x).dump());
    ++mono.checked;
    if (!le(m, lx, ly)) fail(mono, "x = " + m.encode(x).dump() + ", y = " + m.encode(y).dump());
  }

  // Images of eps sequences, with enough terms that a bounded scale factor
  // on lambda still leaves room in the horizon window.
  auto& null = report.add("null_preserving");
  const std::size_t len = 4 * fam.horizon().levels + 4;
  const Horizon wide{fam.horizon().levels, len};
  for (int copies : {1, 2}) {
    std::vector<element_t<M>> image;
    for (std::size_t n = 0; n < len; ++n) {
      auto e = fam.eps(n + 1);
      image.push_back(lambda(copies == 1 ? e : m.add(e, e)));
    }
    ++null.checked;
    if (auto v = is_null(image, fam, wide); !v)
      fail(null, "image of an eps sequence fails at level " + std::to_string(v.level));
  }
  return report;
}

}  // namespace mfix
