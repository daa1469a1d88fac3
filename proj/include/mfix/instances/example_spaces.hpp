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
#include <utility>
#include <vector>

#include "mfix/distance_space.hpp"
#include "mfix/instances/grid_function.hpp"
#include "mfix/instances/power.hpp"
#include "mfix/instances/reals.hpp"

namespace mfix {

using RealLine = DistanceSpace<Reals, double>;

/// |x - y| if it is at most 1, (x - y)^2 otherwise.
inline double mixed_distance(double x, double y) {
  const double a = std::abs(x - y);
  return a <= 1.0 ? a : a * a;
}

inline double squared_distance(double x, double y) { return (x - y) * (x - y); }

inline RealLine abs_metric_space(Horizon h = {}) {
  return {reals_family(Reals{}, h), [](double x, double y) { return std::abs(x - y); },
          SpaceClass::metric, "abs", true, true};
}

/// FM-distance space that is not a metric space.
inline RealLine mixed_distance_space(Horizon h = {}) {
  return {reals_family(Reals{}, h), mixed_distance, SpaceClass::fm_distance, "mixed", true, true};
}

/// Frechet-Wilson but not strong Frechet-Wilson.
inline RealLine squared_distance_space(Horizon h = {}) {
  return {reals_family(Reals{}, h), squared_distance, SpaceClass::distance, "squared", true, true};
}

inline std::pair<RealLine, RealLine> non_metric_distances(Horizon h = {}) {
  return {mixed_distance_space(h), squared_distance_space(h)};
}

/// R^m points with the R^m_+-valued distance (|x_1 - y_1|, ..., |x_m - y_m|).
inline DistanceSpace<VectorMonoid, std::vector<double>> coordinate_space(std::size_t dim,
                                                                         Horizon h = {}) {
  return vector_product(abs_metric_space(h), dim);
}

/// Grid functions with the grid-function-valued distance
/// d(x, y)(t) = mixed(|x(t) - y(t)|, 0), read pointwise.
inline DistanceSpace<GridFunctionMonoid, std::vector<double>> pointwise_mixed_space(GridPtr grid,
                                                                                    Horizon h = {}) {
  GridFunctionMonoid m(grid);
  DistanceSpace<GridFunctionMonoid, std::vector<double>> space{grid_family(m, h), {},
                                                               SpaceClass::fm_distance,
                                                               "pointwise_mixed", true, false};
  space.dist = [m](const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != m.size() || y.size() != m.size())
      throw Error(ErrorKind::grid_mismatch, "point has wrong number of node values");
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = mixed_distance(x[i] - y[i], 0.0);
    return m.make(std::move(v));
  };
  return space;
}

}  // namespace mfix
