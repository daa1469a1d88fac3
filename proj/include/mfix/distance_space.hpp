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

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mfix/axioms.hpp"
#include "mfix/instances/power.hpp"
#include "mfix/ordered_monoid.hpp"
#include "mfix/report.hpp"

namespace mfix {

/// Declared classification; validated by sampling, never inferred.
enum class SpaceClass { distance, metric, fm_distance };

inline std::string to_string(SpaceClass c) {
  switch (c) {
    case SpaceClass::distance: return "distance";
    case SpaceClass::metric: return "metric";
    case SpaceClass::fm_distance: return "fm-distance";
  }
  return "unknown";
}

/// A set of points with a symmetric M+-valued distance that vanishes
/// exactly on the diagonal.
template <OrderedMonoid M, class P>
struct DistanceSpace {
  using monoid_type = M;
  using point_type = P;
  using value_type = element_t<M>;
  using Distance = std::function<value_type(const P&, const P&)>;

  NullFamily<M> family;
  Distance dist;
  SpaceClass cls = SpaceClass::distance;
  std::string name;
  bool complete = true;
  // The point order (when one is used) has binary suprema.
  bool upper_riesz = false;

  const M& monoid() const { return family.monoid(); }
  value_type operator()(const P& a, const P& b) const { return dist(a, b); }

  /// d(a, b) < eps(level), with exact zero always passing.
  bool below(const value_type& d, std::size_t level) const {
    return is_zero(monoid(), d) || lt(monoid(), d, family.eps(level));
  }
};

namespace detail {

template <class P>
nlohmann::json encode_point(const P& p) {
  if constexpr (std::is_constructible_v<nlohmann::json, const P&>) {
    return nlohmann::json(p);
  } else {
    return "<point>";
  }
}

template <class P>
std::string show_points(std::initializer_list<P> ps) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : ps) arr.push_back(encode_point(p));
  return arr.dump();
}

}  // namespace detail

/// First (x, z, y) among `points` with d(x, y) not <= d(x, z) + d(z, y).
template <OrderedMonoid M, class P>
std::optional<std::tuple<P, P, P>> check_triangle(const DistanceSpace<M, P>& space,
                                                  const std::vector<P>& points) {
  const M& m = space.monoid();
  for (const auto& x : points)
    for (const auto& z : points)
      for (const auto& y : points)
        if (!le(m, space(x, y), m.add(space(x, z), space(z, y)))) return std::tuple{x, z, y};
  return std::nullopt;
}

/// Symmetry, identity and (for declared metrics) the triangle inequality on
/// the given sample points. Triangles use all triples up to 64 points and a
/// seeded subset beyond that.
template <OrderedMonoid M, class P>
Report verify_space_axioms(const DistanceSpace<M, P>& space, const std::vector<P>& samples,
                           std::uint64_t seed = 1) {
  const M& m = space.monoid();
  Report report(space.name.empty() ? m.name() + "/space" : space.name);
  auto& cone = report.add("distance_in_cone");
  auto& sym = report.add("symmetry");
  auto& ident = report.add("identity");

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& x = samples[i];
    ++ident.checked;
    if (!is_zero(m, space(x, x))) fail(ident, "d(x,x) != 0 at " + detail::show_points({x}));
    for (std::size_t j = i + 1; j < samples.size() && j < i + 8; ++j) {
      const auto& y = samples[j];
      const auto dxy = space(x, y);
      ++cone.checked;
      if (!is_positive(m, dxy)) fail(cone, detail::show_points({x, y}));
      ++sym.checked;
      if (!equal(m, dxy, space(y, x))) fail(sym, detail::show_points({x, y}));
      ++ident.checked;
      if (!(x == y) && is_zero(m, dxy)) fail(ident, "d(x,y) = 0 for x != y at " + detail::show_points({x, y}));
    }
  }

  if (space.cls == SpaceClass::metric) {
    auto& tri = report.add("triangle");
    auto check = [&](const P& x, const P& z, const P& y) {
      ++tri.checked;
      if (!le(m, space(x, y), m.add(space(x, z), space(z, y))))
        fail(tri, "x, z, y = " + detail::show_points({x, z, y}));
    };
    if (samples.size() <= 64) {
      for (const auto& x : samples)
        for (const auto& z : samples)
          for (const auto& y : samples) check(x, z, y);
    } else {
      Rng rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
      for (std::size_t i = 0; i < 16 * samples.size(); ++i)
        check(samples[pick(rng)], samples[pick(rng)], samples[pick(rng)]);
    }
  }
  return report;
}

template <class P, class V>
struct FWWitness {
  std::vector<P> path;
  V chain_sum;
  V endpoint;
};

/// Yields finite paths until exhausted (std::nullopt).
template <class P>
using PathGenerator = std::function<std::optional<std::vector<P>>()>;

/// Searches for a path whose chain sum is below eps(level) while its
/// endpoint distance is not below eps(endpoint_level). Finding none within
/// the budget says nothing about the strong Frechet-Wilson property.
template <OrderedMonoid M, class P>
std::optional<FWWitness<P, element_t<M>>> strong_fw_probe(const DistanceSpace<M, P>& space,
                                                          const PathGenerator<P>& paths,
                                                          std::size_t budget, std::size_t level,
                                                          std::size_t endpoint_level) {
  const M& m = space.monoid();
  const auto chain_eps = space.family.eps(level);
  const auto end_eps = space.family.eps(endpoint_level);
  for (std::size_t b = 0; b < budget; ++b) {
    auto path = paths();
    if (!path) break;
    if (path->size() < 2) continue;
    element_t<M> chain = m.zero();
    for (std::size_t i = 0; i + 1 < path->size(); ++i)
      chain = m.add(chain, space((*path)[i], (*path)[i + 1]));
    if (!(is_zero(m, chain) || lt(m, chain, chain_eps))) continue;
    auto end = space(path->front(), path->back());
    if (is_zero(m, end) || lt(m, end, end_eps)) continue;
    return FWWitness<P, element_t<M>>{std::move(*path), std::move(chain), std::move(end)};
  }
  return std::nullopt;
}

/// {d(seq[n], x)} is null.
template <OrderedMonoid M, class P>
NullVerdict converges_to(const std::vector<P>& seq, const P& x, const DistanceSpace<M, P>& space,
                         const Horizon& h) {
  std::vector<element_t<M>> d;
  d.reserve(seq.size());
  for (const auto& p : seq) d.push_back(space(p, x));
  return is_null(d, space.family, h);
}

struct CauchyVerdict {
  bool accepted = true;
  std::string schedule;  // "(k,2k)" or "(k,k+1)" when rejected
  NullVerdict detail;

  explicit operator bool() const { return accepted; }
};

/// Cauchy-sequence check on the index schedules (k, 2k) and (k, k+1).
template <OrderedMonoid M, class P>
CauchyVerdict is_cauchy_sequence(const std::vector<P>& seq, const DistanceSpace<M, P>& space,
                                 const Horizon& h) {
  std::vector<element_t<M>> doubling, adjacent;
  for (std::size_t k = 1; 2 * k < seq.size(); ++k) doubling.push_back(space(seq[k], seq[2 * k]));
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) adjacent.push_back(space(seq[k], seq[k + 1]));
  if (auto v = is_null(doubling, space.family, h); !v) return {false, "(k,2k)", v};
  if (auto v = is_null(adjacent, space.family, h); !v) return {false, "(k,k+1)", v};
  return {};
}

enum class ProductMode { sigma, sup };

/// X^m with d^Sigma (sum of coordinate distances) or d^v (their supremum).
template <OrderedMonoid M, class P>
DistanceSpace<M, std::vector<P>> product_space(const DistanceSpace<M, P>& space, std::size_t m,
                                               ProductMode mode) {
  if (m == 0) throw Error(ErrorKind::invalid_argument, "product needs m >= 1");
  auto check = [m](const std::vector<P>& a, const std::vector<P>& b) {
    if (a.size() != m || b.size() != m)
      throw Error(ErrorKind::invalid_argument, "tuple size differs from product arity");
  };
  DistanceSpace<M, std::vector<P>> out{space.family, {}, SpaceClass::fm_distance,
                                       space.name + (mode == ProductMode::sigma ? "^sigma" : "^sup") +
                                           std::to_string(m),
                                       space.complete, false};
  if (mode == ProductMode::sigma) {
    out.dist = [space, check](const std::vector<P>& a, const std::vector<P>& b) {
      check(a, b);
      auto acc = space.monoid().zero();
      for (std::size_t k = 0; k < a.size(); ++k) acc = space.monoid().add(acc, space(a[k], b[k]));
      return acc;
    };
  } else {
    if constexpr (HasSup<M>) {
      out.dist = [space, check](const std::vector<P>& a, const std::vector<P>& b) {
        check(a, b);
        auto acc = space.monoid().zero();
        for (std::size_t k = 0; k < a.size(); ++k) acc = space.monoid().sup(acc, space(a[k], b[k]));
        return acc;
      };
    } else {
      throw Error(ErrorKind::sup_unavailable, space.monoid().name() + " has no supremum");
    }
  }
  return out;
}

/// X^m with the M^m-valued distance d^m = (d(x_1, y_1), ..., d(x_m, y_m)).
template <OrderedMonoid M, class P>
DistanceSpace<Power<M>, std::vector<P>> vector_product(const DistanceSpace<M, P>& space,
                                                       std::size_t m) {
  DistanceSpace<Power<M>, std::vector<P>> out{power_family(space.family, m), {},
                                              SpaceClass::fm_distance,
                                              space.name + "^" + std::to_string(m), space.complete,
                                              space.upper_riesz};
  out.dist = [space, m](const std::vector<P>& a, const std::vector<P>& b) {
    if (a.size() != m || b.size() != m)
      throw Error(ErrorKind::invalid_argument, "tuple size differs from product arity");
    element_t<Power<M>> d;
    d.reserve(m);
    for (std::size_t k = 0; k < m; ++k) d.push_back(space(a[k], b[k]));
    return d;
  };
  return out;
}

}  // namespace mfix
