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
#include <cmath>
#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "mfix/instances/reals.hpp"
#include "mfix/ordered_monoid.hpp"

namespace mfix {

/// Finite node set T_h = {t_1, ..., t_N}.
struct Grid {
  std::vector<double> nodes;

  std::size_t size() const { return nodes.size(); }
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(std::vector<double> nodes) {
  if (nodes.empty()) throw Error(ErrorKind::invalid_argument, "grid needs at least one node");
  return std::make_shared<const Grid>(Grid{std::move(nodes)});
}

/// A real function sampled on a grid. Functions are only combined with
/// functions on the same grid object.
struct GridFunction {
  GridPtr grid;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

inline double sup_norm(const GridFunction& f) {
  double s = 0.0;
  for (double v : f.values) s = std::max(s, std::abs(v));
  return s;
}

/// Non-negative grid functions with pointwise addition and order; the
/// discrete stand-in for C(T, R+).
class GridFunctionMonoid {
 public:
  using value_type = GridFunction;
  static constexpr bool cancellative = true;

  explicit GridFunctionMonoid(GridPtr grid, double tolerance = 1e-12)
      : grid_(std::move(grid)), tolerance_(tolerance) {
    if (!grid_) throw Error(ErrorKind::invalid_argument, "null grid");
  }

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return grid_->size(); }

  GridFunction make(std::vector<double> values) const {
    if (values.size() != grid_->size()) {
      throw Error(ErrorKind::grid_mismatch, "expected " + std::to_string(grid_->size()) +
                                                " node values, got " + std::to_string(values.size()));
    }
    return {grid_, std::move(values)};
  }

  GridFunction constant(double c) const { return {grid_, std::vector<double>(grid_->size(), c)}; }

  GridFunction zero() const { return constant(0.0); }

  GridFunction add(const GridFunction& a, const GridFunction& b) const {
    return pointwise(a, b, [](double x, double y) { return x + y; });
  }

  std::partial_ordering compare(const GridFunction& a, const GridFunction& b) const {
    check(a);
    check(b);
    Reals r(tolerance_);
    bool any_less = false, any_greater = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto c = r.compare(a[i], b[i]);
      if (c == std::partial_ordering::unordered) return c;
      any_less = any_less || c == std::partial_ordering::less;
      any_greater = any_greater || c == std::partial_ordering::greater;
    }
    if (any_less && any_greater) return std::partial_ordering::unordered;
    if (any_less) return std::partial_ordering::less;
    if (any_greater) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }

  GridFunction sup(const GridFunction& a, const GridFunction& b) const {
    return pointwise(a, b, [](double x, double y) { return std::max(x, y); });
  }

  GridFunction inf(const GridFunction& a, const GridFunction& b) const {
    return pointwise(a, b, [](double x, double y) { return std::min(x, y); });
  }

  std::vector<GridFunction> difference_candidates(const GridFunction& a,
                                                  const GridFunction& b) const {
    check(a);
    check(b);
    GridFunction out{grid_, std::vector<double>(a.size())};
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] - b[i] < -tolerance_) return {};
      out.values[i] = std::max(a[i] - b[i], 0.0);
    }
    return {out};
  }

  GridFunction sample(Rng& rng) const {
    Reals r(tolerance_);
    GridFunction out = zero();
    for (auto& v : out.values) v = r.sample(rng);
    return out;
  }

  nlohmann::json encode(const GridFunction& a) const { return a.values; }
  std::string name() const { return "grid_functions(" + std::to_string(grid_->size()) + ")"; }

 private:
  void check(const GridFunction& a) const {
    if (a.grid != grid_ && (!a.grid || a.grid->nodes != grid_->nodes)) {
      throw Error(ErrorKind::grid_mismatch, "grid function lives on a different grid");
    }
    if (a.values.size() != grid_->size()) {
      throw Error(ErrorKind::grid_mismatch, "grid function has wrong number of values");
    }
  }

  template <class Op>
  GridFunction pointwise(const GridFunction& a, const GridFunction& b, Op op) const {
    check(a);
    check(b);
    GridFunction out{grid_, std::vector<double>(a.size())};
    for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = op(a[i], b[i]);
    return out;
  }

  GridPtr grid_;
  double tolerance_;
};

/// Constant functions 2^-k; comparing against them is a sup-norm test.
inline NullFamily<GridFunctionMonoid> grid_family(const GridFunctionMonoid& m, Horizon h = {}) {
  return NullFamily<GridFunctionMonoid>(
      m, [m](std::size_t k) { return m.constant(std::ldexp(1.0, -static_cast<int>(k))); },
      [](std::size_t k) -> std::optional<std::size_t> { return k + 1; }, h);
}

}  // namespace mfix
