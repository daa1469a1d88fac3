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
#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfix/error.hpp"

namespace mfix {

using Rng = std::mt19937_64;

/// A partially ordered monoid.
///
/// `compare` is the partial order: `less`/`equivalent`/`greater` when the
/// two elements are comparable, `unordered` otherwise. Float-backed
/// instances fold their equality tolerance into `equivalent`.
/// `sample` draws an element of the positive cone M+ = {x : zero <= x}.
template <class M>
concept OrderedMonoid = std::copy_constructible<M> &&
    requires(const M& m, const typename M::value_type& a,
             const typename M::value_type& b, Rng& rng) {
  typename M::value_type;
  { m.zero() } -> std::convertible_to<typename M::value_type>;
  { m.add(a, b) } -> std::convertible_to<typename M::value_type>;
  { m.compare(a, b) } -> std::same_as<std::partial_ordering>;
  { m.sample(rng) } -> std::convertible_to<typename M::value_type>;
  { m.encode(a) } -> std::same_as<nlohmann::json>;
  { m.name() } -> std::convertible_to<std::string>;
};

template <class M>
concept HasSup = OrderedMonoid<M> && requires(const M& m, const typename M::value_type& a) {
  { m.sup(a, a) } -> std::convertible_to<typename M::value_type>;
};

template <class M>
concept HasInf = OrderedMonoid<M> && requires(const M& m, const typename M::value_type& a) {
  { m.inf(a, a) } -> std::convertible_to<typename M::value_type>;
};

/// Cancellative instances supply their own witness search for a = b + z.
template <class M>
concept Cancellative = OrderedMonoid<M> && M::cancellative &&
    requires(const M& m, const typename M::value_type& a) {
  { m.difference_candidates(a, a) } -> std::convertible_to<std::vector<typename M::value_type>>;
};

template <OrderedMonoid M>
using element_t = typename M::value_type;

/// Three-valued answer of `a <= b`.
enum class Leq { yes, no, incomparable };

template <OrderedMonoid M>
Leq leq(const M& m, const element_t<M>& a, const element_t<M>& b) {
  auto c = m.compare(a, b);
  if (c == std::partial_ordering::less || c == std::partial_ordering::equivalent) return Leq::yes;
  if (c == std::partial_ordering::greater) return Leq::no;
  return Leq::incomparable;
}

/// `a <= b`; incomparable counts as failure.
template <OrderedMonoid M>
bool le(const M& m, const element_t<M>& a, const element_t<M>& b) {
  return leq(m, a, b) == Leq::yes;
}

/// Strict order: `a <= b` and `a != b`.
template <OrderedMonoid M>
bool lt(const M& m, const element_t<M>& a, const element_t<M>& b) {
  return m.compare(a, b) == std::partial_ordering::less;
}

template <OrderedMonoid M>
bool equal(const M& m, const element_t<M>& a, const element_t<M>& b) {
  return m.compare(a, b) == std::partial_ordering::equivalent;
}

template <OrderedMonoid M>
bool is_zero(const M& m, const element_t<M>& a) {
  return equal(m, a, m.zero());
}

template <OrderedMonoid M>
bool is_positive(const M& m, const element_t<M>& a) {
  return le(m, m.zero(), a);
}

/// Left-to-right sum of a range of elements.
template <OrderedMonoid M>
element_t<M> sum(const M& m, std::span<const element_t<M>> xs) {
  element_t<M> acc = m.zero();
  for (const auto& x : xs) acc = m.add(acc, x);
  return acc;
}

/// The unique z with a = b + z, if it exists.
template <OrderedMonoid M>
std::optional<element_t<M>> difference(const element_t<M>& a, const element_t<M>& b, const M& m) {
  if constexpr (!Cancellative<M>) {
    throw Error(ErrorKind::non_cancellative, m.name() + " has no difference operation");
  } else {
    std::vector<element_t<M>> witnesses;
    for (auto& z : m.difference_candidates(a, b)) {
      if (!equal(m, m.add(b, z), a)) continue;
      bool seen = false;
      for (const auto& w : witnesses) seen = seen || equal(m, w, z);
      if (!seen) witnesses.push_back(std::move(z));
    }
    if (witnesses.empty()) return std::nullopt;
    if (witnesses.size() > 1) {
      throw Error(ErrorKind::ambiguous, "difference of " + m.encode(a).dump() + " and " +
                                            m.encode(b).dump() + " has several witnesses");
    }
    return std::move(witnesses.front());
  }
}

/// Finite stand-in for the quantifiers of null and Cauchy checks.
///
/// At most `terms` leading entries of a sequence are inspected. A level k
/// passes when some N <= terms/2 makes every entry (or block sum) in the
/// window [N, end) strictly below eps(k); the window therefore always covers
/// at least the back half of the inspected prefix.
struct Horizon {
  std::size_t levels = 64;
  std::size_t terms = 10'000;
};

/// An epsilon family E: eps(1) > eps(2) > ... together with a halving
/// rule returning a level j with eps(j) + eps(j) <= eps(k).
template <OrderedMonoid M>
class NullFamily {
 public:
  using value_type = element_t<M>;
  using Generator = std::function<value_type(std::size_t)>;
  using Halving = std::function<std::optional<std::size_t>(std::size_t)>;

  NullFamily(M monoid, Generator eps, Halving halve, Horizon horizon = {})
      : monoid_(std::move(monoid)),
        eps_(std::move(eps)),
        halve_(std::move(halve)),
        horizon_(horizon) {}

  const M& monoid() const { return monoid_; }
  value_type eps(std::size_t k) const { return eps_(k); }
  std::optional<std::size_t> halve(std::size_t k) const { return halve_(k); }
  const Horizon& horizon() const { return horizon_; }

  NullFamily with_horizon(Horizon h) const {
    NullFamily copy = *this;
    copy.horizon_ = h;
    return copy;
  }

 private:
  M monoid_;
  Generator eps_;
  Halving halve_;
  Horizon horizon_;
};

struct NullVerdict {
  bool accepted = true;
  std::size_t level = 0;  // first failing level
  std::size_t index = 0;  // last offending position at that level

  explicit operator bool() const { return accepted; }
};

namespace detail {

template <OrderedMonoid M>
void require_positive(const M& m, std::span<const element_t<M>> seq, std::size_t count) {
  for (std::size_t n = 0; n < count; ++n) {
    if (!is_positive(m, seq[n])) {
      throw Error(ErrorKind::negative_term,
                  "term " + std::to_string(n) + " = " + m.encode(seq[n]).dump() + " is not in M+");
    }
  }
}

// Smallest N such that every entry of `values` from N on is below eps(k),
// for each level in turn; stops at the first level whose N exceeds the bound.
template <OrderedMonoid M>
NullVerdict scan_tails(const NullFamily<M>& fam, std::span<const element_t<M>> values,
                       const Horizon& h) {
  const M& m = fam.monoid();
  const std::size_t count = values.size();
  const std::size_t bound = count / 2;
  std::vector<char> zero(count);
  for (std::size_t n = 0; n < count; ++n) zero[n] = is_zero(m, values[n]) ? 1 : 0;

  for (std::size_t k = 1; k <= h.levels; ++k) {
    const auto e = fam.eps(k);
    std::size_t n = count;
    while (n > 0 && (zero[n - 1] || lt(m, values[n - 1], e))) --n;
    // values[n-1] is the last offender; N = n.
    if (n > bound) return {false, k, n - 1};
  }
  return {};
}

}  // namespace detail

/// Horizon-bounded membership test for the null family N_E(M).
/// Entries equal to zero (within the instance tolerance) always pass.
template <OrderedMonoid M>
NullVerdict is_null(std::span<const element_t<M>> seq, const NullFamily<M>& fam,
                    const Horizon& h) {
  const std::size_t count = std::min(seq.size(), h.terms);
  auto prefix = seq.first(count);
  detail::require_positive(fam.monoid(), prefix, count);
  return detail::scan_tails(fam, prefix, h);
}

template <OrderedMonoid M>
NullVerdict is_null(std::span<const element_t<M>> seq, const NullFamily<M>& fam) {
  return is_null(seq, fam, fam.horizon());
}

template <OrderedMonoid M>
NullVerdict is_null(const std::vector<element_t<M>>& seq, const NullFamily<M>& fam,
                    const Horizon& h) {
  return is_null(std::span<const element_t<M>>(seq), fam, h);
}

template <OrderedMonoid M>
NullVerdict is_null(const std::vector<element_t<M>>& seq, const NullFamily<M>& fam) {
  return is_null(std::span<const element_t<M>>(seq), fam, fam.horizon());
}

struct SeriesVerdict {
  bool certified = true;
  std::size_t level = 0;
  std::size_t n = 0;  // violating block is terms[n..m]
  std::size_t m = 0;

  explicit operator bool() const { return certified; }
};

/// Cauchy criterion for the series of `terms` at a finite horizon.
///
/// Block sums over [n, m] are dominated by the tail sum over [n, end) since
/// every term lies in M+, so only tail sums are compared against eps(k).
template <OrderedMonoid M>
SeriesVerdict cauchy_series_test(std::span<const element_t<M>> terms, const NullFamily<M>& fam,
                                 const Horizon& h) {
  const M& m = fam.monoid();
  const std::size_t count = std::min(terms.size(), h.terms);
  detail::require_positive(m, terms, count);
  if (count == 0) return {};

  std::vector<element_t<M>> tails(count, m.zero());
  tails[count - 1] = terms[count - 1];
  for (std::size_t n = count - 1; n-- > 0;) tails[n] = m.add(terms[n], tails[n + 1]);

  auto verdict = detail::scan_tails(fam, std::span<const element_t<M>>(tails), h);
  if (verdict.accepted) return {};
  return {false, verdict.level, verdict.index, count - 1};
}

template <OrderedMonoid M>
SeriesVerdict cauchy_series_test(const std::vector<element_t<M>>& terms,
                                 const NullFamily<M>& fam, const Horizon& h) {
  return cauchy_series_test(std::span<const element_t<M>>(terms), fam, h);
}

template <OrderedMonoid M>
SeriesVerdict cauchy_series_test(const std::vector<element_t<M>>& terms,
                                 const NullFamily<M>& fam) {
  return cauchy_series_test(std::span<const element_t<M>>(terms), fam, fam.horizon());
}

enum class SeriesStatus { cauchy_certified, cauchy_refuted_at_horizon, convergent_with_sum };

inline std::string to_string(SeriesStatus s) {
  switch (s) {
    case SeriesStatus::cauchy_certified: return "cauchy-certified";
    case SeriesStatus::cauchy_refuted_at_horizon: return "cauchy-refuted-at-horizon";
    case SeriesStatus::convergent_with_sum: return "convergent-with-sum";
  }
  return "unknown";
}

template <OrderedMonoid M>
struct SeriesState {
  std::vector<element_t<M>> terms;
  std::vector<element_t<M>> partial_sums;
  SeriesStatus status = SeriesStatus::cauchy_refuted_at_horizon;
  std::optional<element_t<M>> sum;
  std::vector<element_t<M>> remainders;
  SeriesVerdict cauchy;
};

/// Partial sums plus a status. A candidate sum s is accepted when every
/// remainder s (-) s_n exists and the remainders form a null sequence.
template <OrderedMonoid M>
SeriesState<M> analyze_series(std::vector<element_t<M>> terms, const NullFamily<M>& fam,
                              const Horizon& h,
                              std::optional<element_t<M>> candidate_sum = std::nullopt) {
  const M& m = fam.monoid();
  SeriesState<M> state;
  state.terms = std::move(terms);
  state.partial_sums.reserve(state.terms.size());
  element_t<M> acc = m.zero();
  for (const auto& t : state.terms) {
    acc = m.add(acc, t);
    state.partial_sums.push_back(acc);
  }
  state.cauchy = cauchy_series_test(state.terms, fam, h);
  state.status = state.cauchy ? SeriesStatus::cauchy_certified
                              : SeriesStatus::cauchy_refuted_at_horizon;

  if constexpr (Cancellative<M>) {
    if (candidate_sum) {
      std::vector<element_t<M>> rest;
      rest.reserve(state.partial_sums.size());
      bool all_exist = true;
      for (const auto& s : state.partial_sums) {
        auto r = difference(*candidate_sum, s, m);
        if (!r || !is_positive(m, *r)) {
          all_exist = false;
          break;
        }
        rest.push_back(std::move(*r));
      }
      if (all_exist && is_null(rest, fam, h)) {
        state.status = SeriesStatus::convergent_with_sum;
        state.sum = candidate_sum;
        state.remainders = std::move(rest);
      }
    }
  }
  return state;
}

}  // namespace mfix
