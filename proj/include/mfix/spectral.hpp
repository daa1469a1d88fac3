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

#include <algorithm>
#include <cstddef>
#include <limits>

#include <Eigen/Dense>

#include "mfix/error.hpp"

namespace mfix {

struct SpectralEstimate {
  double rho = 0.0;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  bool converged = false;
};

/// Spectral radius of a non-negative square matrix.
///
/// Power iteration runs on A + I (primitive whenever A is irreducible, and
/// with the same Perron root shifted by one), bracketed by the
/// Collatz-Wielandt bounds min_i (Ax)_i / x_i <= rho <= max_i (Ax)_i / x_i
/// for a positive vector x. Stops when the bracket is narrower than `tol`.
/// Reducible input can stall the bracket; the estimate then falls back to the
/// largest eigenvalue modulus, clamped into the bracket.
inline SpectralEstimate spectral_radius(const Eigen::MatrixXd& a, double tol = 1e-10,
                                        std::size_t max_iter = 100'000) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw Error(ErrorKind::invalid_argument, "spectral radius needs a non-empty square matrix");
  if ((a.array() < 0.0).any())
    throw Error(ErrorKind::invalid_argument, "spectral radius expects a non-negative matrix");
  if (!a.allFinite()) throw Error(ErrorKind::invalid_argument, "matrix has non-finite entries");

  const Eigen::Index n = a.rows();
  SpectralEstimate est;
  if (a.isZero(0.0)) {
    est.rho = est.lower = est.upper = 0.0;
    est.converged = true;
    return est;
  }

  const Eigen::MatrixXd shifted = a + Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  est.lower = 0.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd y = shifted * x;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double r = y(i) / x(i);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    est.lower = std::max(est.lower, lo - 1.0);
    est.upper = std::min(est.upper, hi - 1.0);
    est.iterations = it;
    const double norm = y.maxCoeff();
    x = y / norm;
    // Keep x strictly positive so the ratios stay defined on reducible input.
    x = x.cwiseMax(std::numeric_limits<double>::min());
    est.rho = norm - 1.0;
    if (est.upper - est.lower < tol) {
      est.converged = true;
      est.rho = 0.5 * (est.lower + est.upper);
      break;
    }
  }
  est.lower = std::max(est.lower, 0.0);
  if (!est.converged) {
    const double r = a.eigenvalues().cwiseAbs().maxCoeff();
    est.rho = std::clamp(r, est.lower, std::max(est.lower, est.upper));
  }
  return est;
}

}  // namespace mfix
