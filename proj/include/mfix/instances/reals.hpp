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
#include <string>
#include <vector>

#include "mfix/ordered_monoid.hpp"

namespace mfix {

/// Non-negative reals under +, totally ordered, with absolute equality
/// tolerance.
class Reals {
 public:
  using value_type = double;
  static constexpr bool cancellative = true;

  explicit Reals(double tolerance = 1e-12) : tolerance_(tolerance) {}

  double tolerance() const { return tolerance_; }

  double zero() const { return 0.0; }
  double add(double a, double b) const { return a + b; }

  std::partial_ordering compare(double a, double b) const {
    if (std::isnan(a) || std::isnan(b)) return std::partial_ordering::unordered;
    if (std::abs(a - b) <= tolerance_) return std::partial_ordering::equivalent;
    return a < b ? std::partial_ordering::less : std::partial_ordering::greater;
  }

  double sup(double a, double b) const { return std::max(a, b); }
  double inf(double a, double b) const { return std::min(a, b); }

  std::vector<double> difference_candidates(double a, double b) const {
    if (a - b < -tolerance_) return {};
    return {std::max(a - b, 0.0)};
  }

  // Mix of exact zeros and magnitudes spread over several decades.
  double sample(Rng& rng) const {
    std::uniform_int_distribution<int> pick(0, 9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int p = pick(rng);
    if (p == 0) return 0.0;
    if (p <= 6) return 10.0 * unit(rng);
    return unit(rng) * std::pow(10.0, -std::uniform_int_distribution<int>(1, 8)(rng));
  }

  nlohmann::json encode(double x) const { return x; }
  std::string name() const { return "reals"; }

 private:
  double tolerance_;
};

/// E = {2^-k : k >= 1}; eps(k+1) halves eps(k).
inline NullFamily<Reals> reals_family(const Reals& m = Reals{}, Horizon h = {}) {
  return NullFamily<Reals>(
      m, [](std::size_t k) { return std::ldexp(1.0, -static_cast<int>(k)); },
      [](std::size_t k) -> std::optional<std::size_t> { return k + 1; }, h);
}

}  // namespace mfix
