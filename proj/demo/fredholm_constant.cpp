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


// x(t) = 1 + 0.5 * integral_0^1 x(s) ds, whose solution is x = 2.

#include <cstdio>

#include "mfix/mfix.hpp"

int main() {
  auto quad = mfix::Quadrature::midpoint(0.0, 1.0, 64);
  auto kernel = [](double, double) { return 0.5; };
  mfix::FredholmProblem pb{quad, mfix::NodeValues(quad.nodes.size(), {1.0}),
                           [](double, double, const std::vector<double>& x) { return std::vector<double>{0.5 * x[0]}; },
                           mfix::make_kernel_bound(kernel, quad)};

  auto res = mfix::fredholm_solve(pb);
  std::printf("certificate: %s, spectral radius %.12f\n", mfix::to_string(res.certificate.overall.status).c_str(),
              res.certificate.spectral.spectral_radius.value_or(-1));
  if (!res.trace.converged()) {
    std::printf("termination: %s\n", mfix::to_string(res.trace.termination).c_str());
    return 1;
  }
  std::printf("converged in %zu iterations\n", res.trace.iterations());
  for (std::size_t i = 0; i < res.nodes.size(); i += 16)
    std::printf("  x(%.6f) = %.12f\n", res.nodes[i], res.values()[i][0]);
  return 0;
}
