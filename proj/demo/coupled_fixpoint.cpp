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


// Coupled fixed point of F(x, y) = (2x - y + 3) / 4 with sigma = {(0, 1), (1, 0)}:
// x* = F(x*, y*), y* = F(y*, x*).

#include <cstdio>

#include "mfix/mfix.hpp"

int main() {
  using Vec = std::vector<double>;
  mfix::MultipleProblem<mfix::Reals, double> pb{
      mfix::abs_metric_space(),
      [](const Vec& v) { return (2 * v[0] - v[1] + 3) / 4; },
      {{0, 1}, {1, 0}},
      {true, false},
      [](const double& a, const double& b) { return a <= b; },
      mfix::matrix_contraction((Eigen::MatrixXd(2, 2) << 0.5, 0.25, 0.25, 0.5).finished()),
      {0.0, 3.0},
      {34, 10'000}};

  auto trace = mfix::multiple_fixpoint_solve(pb);
  std::printf("certificate: %s (rho = %.6f)\n", mfix::to_string(trace.certificate.status).c_str(),
              trace.certificate.spectral_radius.value_or(-1));
  std::printf("termination: %s after %zu iterations\n", mfix::to_string(trace.termination).c_str(),
              trace.iterations());
  if (!trace.converged()) return 1;
  const auto& x = trace.fixpoint();
  std::printf("fixed point: (%.12f, %.12f)\n", x[0], x[1]);
  return 0;
}
