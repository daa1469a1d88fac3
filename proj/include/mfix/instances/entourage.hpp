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
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "mfix/distance_space.hpp"
#include "mfix/ordered_monoid.hpp"
#include "mfix/report.hpp"

namespace mfix {

/// Binary relation on {0, ..., n-1}, n <= 64, stored as one bitmask per row.
class Relation {
 public:
  static constexpr std::size_t max_size = 64;

  Relation() = default;
  explicit Relation(std::size_t n) : rows_(n, 0) {
    if (n == 0 || n > max_size)
      throw Error(ErrorKind::invalid_argument, "ground set size must be in [1, 64]");
  }

  static Relation diagonal(std::size_t n) {
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i) r.rows_[i] = bit(i);
    return r;
  }

  static Relation full(std::size_t n) {
    Relation r(n);
    for (auto& row : r.rows_) row = r.row_mask();
    return r;
  }

  /// Union of blocks B x B of a partition given as block labels per point.
  static Relation from_partition(const std::vector<int>& labels) {
    Relation r(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = 0; j < labels.size(); ++j)
        if (labels[i] == labels[j]) r.set(i, j);
    return r;
  }

  static Relation from_matrix(const std::vector<std::vector<int>>& m) {
    Relation r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i].size() != m.size()) throw Error(ErrorKind::invalid_argument, "relation matrix must be square");
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[i][j] != 0 && m[i][j] != 1) throw Error(ErrorKind::invalid_argument, "relation entries must be 0/1");
        if (m[i][j]) r.set(i, j);
      }
    }
    return r;
  }

  std::size_t size() const { return rows_.size(); }
  bool contains(std::size_t i, std::size_t j) const { return (rows_[i] >> j) & 1u; }
  void set(std::size_t i, std::size_t j) { rows_[i] |= bit(j); }
  std::uint64_t row(std::size_t i) const { return rows_[i]; }

  std::size_t cardinality() const {
    std::size_t c = 0;
    for (auto row : rows_) c += static_cast<std::size_t>(std::popcount(row));
    return c;
  }

  /// A o B = {(x, y) : exists z, (x, z) in A and (z, y) in B}.
  Relation compose(const Relation& b) const {
    same_size(b);
    Relation out(size());
    for (std::size_t x = 0; x < size(); ++x) {
      std::uint64_t acc = 0;
      for (std::size_t z = 0; z < size(); ++z)
        if (contains(x, z)) acc |= b.rows_[z];
      out.rows_[x] = acc;
    }
    return out;
  }

  Relation intersect(const Relation& b) const {
    same_size(b);
    Relation out(size());
    for (std::size_t i = 0; i < size(); ++i) out.rows_[i] = rows_[i] & b.rows_[i];
    return out;
  }

  Relation unite(const Relation& b) const {
    same_size(b);
    Relation out(size());
    for (std::size_t i = 0; i < size(); ++i) out.rows_[i] = rows_[i] | b.rows_[i];
    return out;
  }

  Relation transpose() const {
    Relation out(size());
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (contains(i, j)) out.set(j, i);
    return out;
  }

  bool subset_of(const Relation& b) const {
    same_size(b);
    for (std::size_t i = 0; i < size(); ++i)
      if (rows_[i] & ~b.rows_[i]) return false;
    return true;
  }

  bool symmetric() const { return *this == transpose(); }
  bool contains_diagonal() const { return diagonal(size()).subset_of(*this); }

  std::vector<std::vector<int>> to_matrix() const {
    std::vector<std::vector<int>> m(size(), std::vector<int>(size(), 0));
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) m[i][j] = contains(i, j) ? 1 : 0;
    return m;
  }

  bool operator==(const Relation&) const = default;

 private:
  static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }
  std::uint64_t row_mask() const {
    return size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
  }
  void same_size(const Relation& b) const {
    if (b.size() != size()) throw Error(ErrorKind::invalid_argument, "relations on different ground sets");
  }

  std::vector<std::uint64_t> rows_;
};

/// Relations containing the diagonal, composed as A + B = A o B, ordered by
/// inclusion. Every element is positive.
class EntourageMonoid {
 public:
  using value_type = Relation;

  explicit EntourageMonoid(std::size_t n) : n_(n) { Relation check(n); }

  std::size_t ground_size() const { return n_; }

  Relation zero() const { return Relation::diagonal(n_); }
  Relation add(const Relation& a, const Relation& b) const { return a.compose(b); }

  std::partial_ordering compare(const Relation& a, const Relation& b) const {
    const bool ab = a.subset_of(b), ba = b.subset_of(a);
    if (ab && ba) return std::partial_ordering::equivalent;
    if (ab) return std::partial_ordering::less;
    if (ba) return std::partial_ordering::greater;
    return std::partial_ordering::unordered;
  }

  Relation sup(const Relation& a, const Relation& b) const { return a.unite(b); }
  Relation inf(const Relation& a, const Relation& b) const { return a.intersect(b); }

  Relation sample(Rng& rng) const {
    std::bernoulli_distribution on(std::uniform_real_distribution<double>(0.0, 0.5)(rng));
    Relation r = zero();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (on(rng)) r.set(i, j);
    return r;
  }

  nlohmann::json encode(const Relation& r) const { return r.to_matrix(); }
  std::string name() const { return "entourages(" + std::to_string(n_) + ")"; }

 private:
  std::size_t n_;
};

/// A finite base of entourages on {0, ..., n-1}. Every member must contain
/// the diagonal; symmetry and separation are checked by the verifiers.
class EntourageBase {
 public:
  EntourageBase(std::size_t n, std::vector<Relation> relations)
      : n_(n), relations_(std::move(relations)) {
    if (relations_.empty()) throw Error(ErrorKind::invalid_argument, "entourage base is empty");
    for (const auto& r : relations_) {
      if (r.size() != n_) throw Error(ErrorKind::invalid_argument, "relation size differs from ground set");
      if (!r.contains_diagonal()) throw Error(ErrorKind::not_entourage, "base relation misses the diagonal");
    }
  }

  std::size_t ground_size() const { return n_; }
  const std::vector<Relation>& relations() const { return relations_; }

  Relation intersection() const {
    Relation acc = Relation::full(n_);
    for (const auto& r : relations_) acc = acc.intersect(r);
    return acc;
  }

  bool separating() const { return intersection() == Relation::diagonal(n_); }

  bool symmetric() const {
    return std::all_of(relations_.begin(), relations_.end(), [](const Relation& r) { return r.symmetric(); });
  }

 private:
  std::size_t n_;
  std::vector<Relation> relations_;
};

/// Base file: {"schema_version": 1, "ground_set_size": n,
/// "relations": [[[0/1, ...], ...], ...]}.
inline EntourageBase load_entourage_base(const nlohmann::json& j) {
  try {
    if (j.contains("schema_version") && j.at("schema_version").get<int>() != 1)
      throw Error(ErrorKind::parse_error, "unsupported entourage schema_version");
    const auto n = j.at("ground_set_size").get<std::size_t>();
    std::vector<Relation> rels;
    for (const auto& m : j.at("relations")) {
      auto r = Relation::from_matrix(m.get<std::vector<std::vector<int>>>());
      if (r.size() != n) throw Error(ErrorKind::parse_error, "relation size differs from ground_set_size");
      rels.push_back(std::move(r));
    }
    return EntourageBase(n, std::move(rels));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("entourage base: ") + e.what());
  }
}

inline nlohmann::json save_entourage_base(const EntourageBase& base) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["ground_set_size"] = base.ground_size();
  auto& rels = j["relations"] = nlohmann::json::array();
  for (const auto& r : base.relations()) rels.push_back(r.to_matrix());
  return j;
}

namespace detail {

inline Relation base_intersection_containing(const EntourageBase& base, std::size_t x, std::size_t y) {
  Relation acc = Relation::full(base.ground_size());
  for (const auto& r : base.relations())
    if (r.contains(x, y)) acc = acc.intersect(r);
  return acc;
}

}  // namespace detail

/// d(x, y) = intersection of the base entourages containing (x, y).
inline Relation entourage_distance(std::size_t x, std::size_t y, const EntourageBase& base) {
  if (x >= base.ground_size() || y >= base.ground_size())
    throw Error(ErrorKind::index_out_of_range, "point outside the ground set");
  if (!base.separating())
    throw Error(ErrorKind::not_separating, "intersection of the base is larger than the diagonal");
  return detail::base_intersection_containing(base, x, y);
}

/// E = base members other than the diagonal, coarsest first, cycled by
/// level. Halving picks the first member whose self-composition fits.
inline NullFamily<EntourageMonoid> entourage_family(const EntourageBase& base, Horizon h = {}) {
  EntourageMonoid m(base.ground_size());
  std::vector<Relation> eps;
  for (const auto& r : base.relations())
    if (!(r == m.zero()) && std::find(eps.begin(), eps.end(), r) == eps.end()) eps.push_back(r);
  if (eps.empty()) eps.push_back(Relation::full(base.ground_size()));
  std::stable_sort(eps.begin(), eps.end(),
                   [](const Relation& a, const Relation& b) { return a.cardinality() > b.cardinality(); });
  const std::size_t count = eps.size();
  return NullFamily<EntourageMonoid>(
      m, [eps](std::size_t k) { return eps[(k - 1) % eps.size()]; },
      [eps, count](std::size_t k) -> std::optional<std::size_t> {
        const auto& target = eps[(k - 1) % count];
        for (std::size_t j = 0; j < count; ++j)
          if (eps[j].compose(eps[j]).subset_of(target)) return j + 1;
        return std::nullopt;
      },
      h);
}

/// The M-metric space ({0..n-1}, d) induced by a separating symmetric base.
inline DistanceSpace<EntourageMonoid, std::size_t> entourage_space(const EntourageBase& base,
                                                                   Horizon h = {}) {
  if (!base.separating())
    throw Error(ErrorKind::not_separating, "intersection of the base is larger than the diagonal");
  DistanceSpace<EntourageMonoid, std::size_t> space{entourage_family(base, h), {}, SpaceClass::metric,
                                                    "entourage_space", true, false};
  space.dist = [base](std::size_t x, std::size_t y) { return entourage_distance(x, y, base); };
  return space;
}

/// Exhaustive check of the M-metric axioms over every point, pair and triple
/// of the ground set.
inline Report verify_entourage_metric(const EntourageBase& base) {
  const std::size_t n = base.ground_size();
  EntourageMonoid m(n);
  Report report("entourage_metric(" + std::to_string(n) + ")");
  auto& sep = report.add("separating");
  auto& sym = report.add("symmetry");
  auto& ident = report.add("identity");
  auto& tri = report.add("triangle");

  auto& base_sym = report.add("base_symmetric");
  for (const auto& r : base.relations()) {
    ++base_sym.checked;
    if (!r.symmetric()) fail(base_sym, "asymmetric member " + m.encode(r).dump());
  }

  ++sep.checked;
  if (!base.separating()) fail(sep, "intersection of base = " + m.encode(base.intersection()).dump());

  std::vector<std::vector<Relation>> d(n, std::vector<Relation>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) d[x][y] = detail::base_intersection_containing(base, x, y);

  auto pair_str = [](std::size_t x, std::size_t y) {
    return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      ++sym.checked;
      if (!(d[x][y] == d[y][x])) fail(sym, "d" + pair_str(x, y) + " != d" + pair_str(y, x));
      ++ident.checked;
      if ((d[x][y] == m.zero()) != (x == y)) fail(ident, "at " + pair_str(x, y));
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        ++tri.checked;
        if (!d[x][z].subset_of(m.add(d[x][y], d[y][z])))
          fail(tri, "x,y,z = " + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z));
      }
  return report;
}

/// Nested partition chain {{0},...,{n-1}} < ... < {{0..n-1}} obtained by
/// merging one more point into the first block at each step.
inline EntourageBase partition_chain_base(std::size_t n) {
  std::vector<Relation> rels;
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i);
  rels.push_back(Relation::from_partition(labels));
  for (std::size_t i = 1; i < n; ++i) {
    labels[i] = 0;
    rels.push_back(Relation::from_partition(labels));
  }
  return EntourageBase(n, std::move(rels));
}

}  // namespace mfix
