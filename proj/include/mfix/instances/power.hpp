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

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "mfix/instances/reals.hpp"
#include "mfix/ordered_monoid.hpp"

namespace mfix {

/// M^m with coordinate-wise addition and order.
template <OrderedMonoid Base>
class Power {
 public:
  using base_type = Base;
  using base_value = element_t<Base>;
  using value_type = std::vector<base_value>;
  static constexpr bool cancellative = Cancellative<Base>;

  Power(Base base, std::size_t dim) : base_(std::move(base)), dim_(dim) {
    if (dim == 0) throw Error(ErrorKind::invalid_argument, "power monoid needs dim >= 1");
  }

  const Base& base() const { return base_; }
  std::size_t dim() const { return dim_; }

  value_type zero() const { return value_type(dim_, base_.zero()); }

  value_type add(const value_type& a, const value_type& b) const {
    check(a);
    check(b);
    value_type out;
    out.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out.push_back(base_.add(a[i], b[i]));
    return out;
  }

  std::partial_ordering compare(const value_type& a, const value_type& b) const {
    check(a);
    check(b);
    bool any_less = false, any_greater = false;
    for (std::size_t i = 0; i < dim_; ++i) {
      auto c = base_.compare(a[i], b[i]);
      if (c == std::partial_ordering::unordered) return c;
      any_less = any_less || c == std::partial_ordering::less;
      any_greater = any_greater || c == std::partial_ordering::greater;
    }
    if (any_less && any_greater) return std::partial_ordering::unordered;
    if (any_less) return std::partial_ordering::less;
    if (any_greater) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }

  value_type sup(const value_type& a, const value_type& b) const requires HasSup<Base> {
    return coordinatewise(a, b, [this](const auto& x, const auto& y) { return base_.sup(x, y); });
  }

  value_type inf(const value_type& a, const value_type& b) const requires HasInf<Base> {
    return coordinatewise(a, b, [this](const auto& x, const auto& y) { return base_.inf(x, y); });
  }

  // One candidate per coordinate combination; a second candidate appears
  // only when some coordinate offers several, which difference() reports.
  std::vector<value_type> difference_candidates(const value_type& a, const value_type& b) const
      requires Cancellative<Base> {
    check(a);
    check(b);
    value_type first;
    std::vector<value_type> out;
    std::size_t split = dim_;
    std::vector<base_value> alternates;
    for (std::size_t i = 0; i < dim_; ++i) {
      auto c = base_.difference_candidates(a[i], b[i]);
      if (c.empty()) return {};
      first.push_back(c.front());
      if (c.size() > 1 && split == dim_) {
        split = i;
        alternates.assign(c.begin() + 1, c.end());
      }
    }
    out.push_back(first);
    for (const auto& alt : alternates) {
      out.push_back(first);
      out.back()[split] = alt;
    }
    return out;
  }

  value_type sample(Rng& rng) const {
    value_type out;
    out.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out.push_back(base_.sample(rng));
    return out;
  }

  nlohmann::json encode(const value_type& a) const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& x : a) arr.push_back(base_.encode(x));
    return arr;
  }

  std::string name() const { return base_.name() + "^" + std::to_string(dim_); }

 private:
  void check(const value_type& a) const {
    if (a.size() != dim_) {
      throw Error(ErrorKind::invalid_argument, name() + " element has " + std::to_string(a.size()) +
                                                   " coordinates");
    }
  }

  template <class Op>
  value_type coordinatewise(const value_type& a, const value_type& b, Op op) const {
    check(a);
    check(b);
    value_type out;
    out.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out.push_back(op(a[i], b[i]));
    return out;
  }

  Base base_;
  std::size_t dim_;
};

/// N(M^m): a tuple sequence is null iff every coordinate sequence is null,
/// realised by eps(k) = (eps_base(k), ..., eps_base(k)).
template <OrderedMonoid Base>
NullFamily<Power<Base>> power_family(const NullFamily<Base>& base, std::size_t dim) {
  Power<Base> m(base.monoid(), dim);
  return NullFamily<Power<Base>>(
      m,
      [base, dim](std::size_t k) { return element_t<Power<Base>>(dim, base.eps(k)); },
      [base](std::size_t k) { return base.halve(k); }, base.horizon());
}

using VectorMonoid = Power<Reals>;

inline VectorMonoid vector_monoid(std::size_t dim, double tolerance = 1e-12) {
  return VectorMonoid(Reals(tolerance), dim);
}

inline NullFamily<VectorMonoid> vector_family(std::size_t dim, Horizon h = {}) {
  return power_family(reals_family(Reals{}, h), dim);
}

}  // namespace mfix
