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
#include <cstdint>
#include <string>
#include <vector>

#include "mfix/ordered_monoid.hpp"
#include "mfix/report.hpp"

namespace mfix {

namespace detail {

template <OrderedMonoid M>
std::string show(const M& m, std::initializer_list<element_t<M>> xs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& x : xs) arr.push_back(m.encode(x));
  return arr.dump();
}

}  // namespace detail

/// Seeded sampling of the monoid and order laws. Elements are drawn from M+;
/// chains x <= x + a <= x + a + b are built explicitly so that transitivity
/// and the sup/inf laws see comparable inputs.
template <OrderedMonoid M>
Report monoid_axiom_suite(const M& m, std::uint64_t seed, std::size_t samples = 1000) {
  Report report(m.name());
  Rng rng(seed);
  const auto theta = m.zero();

  auto& assoc = report.add("associativity");
  auto& ident = report.add("identity");
  auto& refl = report.add("reflexivity");
  auto& anti = report.add("antisymmetry");
  auto& trans = report.add("transitivity");
  auto& compat = report.add("order_compatibility");
  auto& cone = report.add("positive_cone_nontrivial");

  bool nontrivial = false;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto x = m.sample(rng);
    const auto y = m.sample(rng);
    const auto z = m.sample(rng);

    ++assoc.checked;
    if (!equal(m, m.add(m.add(x, y), z), m.add(x, m.add(y, z))))
      fail(assoc, detail::show(m, {x, y, z}));

    ++ident.checked;
    if (!equal(m, m.add(theta, x), x) || !equal(m, m.add(x, theta), x))
      fail(ident, detail::show(m, {x}));

    ++refl.checked;
    if (!le(m, x, x)) fail(refl, detail::show(m, {x}));

    // x <= x + y, so the pair (x, x + y) exercises the comparable branch.
    const auto xy = m.add(x, y);
    const auto xyz = m.add(xy, z);
    for (const auto& [a, b] : {std::pair{x, y}, std::pair{x, xy}, std::pair{xy, x}}) {
      ++anti.checked;
      if (le(m, a, b) && le(m, b, a) && !equal(m, a, b)) fail(anti, detail::show(m, {a, b}));
    }

    for (const auto& [a, b, c] : {std::tuple{x, xy, xyz}, std::tuple{x, y, z}}) {
      ++trans.checked;
      if (le(m, a, b) && le(m, b, c) && !le(m, a, c)) fail(trans, detail::show(m, {a, b, c}));
    }

    // x <= x + y and z <= z + w imply x + z <= (x + y) + (z + w).
    const auto w = m.sample(rng);
    const auto zw = m.add(z, w);
    ++compat.checked;
    if (!le(m, m.add(x, z), m.add(xy, zw))) fail(compat, detail::show(m, {x, y, z, w}));

    nontrivial = nontrivial || (is_positive(m, x) && !is_zero(m, x));
  }
  cone.checked = samples;
  if (!nontrivial) fail(cone, "no sampled element of M+ differs from zero");

  if constexpr (HasSup<M>) {
    auto& upper = report.add("sup_upper_bound");
    auto& least = report.add("sup_least");
    for (std::size_t i = 0; i < samples; ++i) {
      const auto x = m.sample(rng);
      const auto y = m.sample(rng);
      const auto s = m.sup(x, y);
      ++upper.checked;
      if (!le(m, x, s) || !le(m, y, s)) fail(upper, detail::show(m, {x, y, s}));
      // x + y + w dominates both x and y.
      const auto bound = m.add(m.add(x, y), m.sample(rng));
      ++least.checked;
      if (!le(m, s, bound)) fail(least, detail::show(m, {x, y, bound}));
      ++least.checked;
      if (!le(m, s, m.sup(s, x))) fail(least, detail::show(m, {x, y}));
    }
  }

  if constexpr (HasInf<M>) {
    auto& lower = report.add("inf_lower_bound");
    auto& greatest = report.add("inf_greatest");
    for (std::size_t i = 0; i < samples; ++i) {
      const auto x = m.sample(rng);
      const auto y = m.sample(rng);
      const auto g = m.inf(x, y);
      ++lower.checked;
      if (!le(m, g, x) || !le(m, g, y)) fail(lower, detail::show(m, {x, y, g}));
      ++greatest.checked;
      if (!le(m, theta, g) || !le(m, m.inf(g, x), g)) fail(greatest, detail::show(m, {x, y}));
    }
  }

  if constexpr (Cancellative<M>) {
    auto& chain = report.add("difference_composition");
    for (std::size_t i = 0; i < samples; ++i) {
      // z <= y = z + a <= x = y + b, so all three differences exist.
      const auto z = m.sample(rng);
      const auto y = m.add(z, m.sample(rng));
      const auto x = m.add(y, m.sample(rng));
      const auto xy = difference(x, y, m);
      const auto yz = difference(y, z, m);
      const auto xz = difference(x, z, m);
      ++chain.checked;
      if (!xy || !yz || !xz || !equal(m, *xz, m.add(*xy, *yz)))
        fail(chain, detail::show(m, {x, y, z}));
      ++chain.checked;
      const auto self = difference(x, x, m);
      if (!self || !is_zero(m, *self)) fail(chain, detail::show(m, {x}));
    }
  }
  return report;
}

/// The five null-family laws plus the halving rule, checked on finite
/// sample sequences at horizon `h`. Every law is phrased as "accepted inputs
/// give accepted outputs", so rejected samples only feed the separation law.
template <OrderedMonoid M>
Report null_family_axiom_suite(const NullFamily<M>& fam,
                               const std::vector<std::vector<element_t<M>>>& samples,
                               const Horizon& h, std::uint64_t seed) {
  using Seq = std::vector<element_t<M>>;
  const M& m = fam.monoid();
  Report report(m.name() + "/null_family");
  Rng rng(seed);

  std::vector<char> accepted(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) accepted[i] = is_null(samples[i], fam, h) ? 1 : 0;

  auto seq_str = [&](const Seq& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t n = 0; n < std::min<std::size_t>(s.size(), 8); ++n) arr.push_back(m.encode(s[n]));
    return arr.dump() + (s.size() > 8 ? " ..." : "");
  };

  // 1: the zero sequence is null; constant sequences of nonzero elements are
  // not. Constants below eps(levels) cannot be told apart from zero at this
  // horizon and are skipped.
  auto& p1 = report.add("p1_constant_sequences");
  const std::size_t len = std::max<std::size_t>(2, std::min<std::size_t>(h.terms, 64));
  const auto finest = fam.eps(h.levels);
  ++p1.checked;
  if (!is_null(Seq(len, m.zero()), fam, h)) fail(p1, "zero sequence rejected");
  auto check_constant = [&](const element_t<M>& x) {
    if (is_zero(m, x) || le(m, x, finest)) return;
    ++p1.checked;
    if (is_null(Seq(len, x), fam, h)) fail(p1, "constant " + m.encode(x).dump() + " accepted");
  };
  for (const auto& s : samples)
    for (std::size_t n = 0; n < std::min<std::size_t>(s.size(), 4); ++n) check_constant(s[n]);
  for (std::size_t i = 0; i < 16; ++i) check_constant(m.sample(rng));

  // 2: sums of null sequences are null.
  auto& p2 = report.add("p2_sum_closure");
  // Pairs are taken within a sliding window so the cost stays linear.
  constexpr std::size_t kWindow = 8;
  const std::size_t total = samples.size();
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t w = 0; w < std::min(kWindow, total); ++w) {
      const std::size_t j = (i + w) % total;
      if (!accepted[i] || !accepted[j]) continue;
      const auto count = std::min(samples[i].size(), samples[j].size());
      Seq s(count, m.zero());
      for (std::size_t n = 0; n < count; ++n) s[n] = m.add(samples[i][n], samples[j][n]);
      ++p2.checked;
      if (!is_null(s, fam, h)) fail(p2, seq_str(samples[i]) + " + " + seq_str(samples[j]));
    }
  }

  // 3: squeeze.
  auto& p3 = report.add("p3_squeeze");
  auto dominated = [&](const Seq& lower, const Seq& upper) {
    if (lower.size() > upper.size()) return false;
    for (std::size_t n = 0; n < lower.size(); ++n)
      if (!is_positive(m, lower[n]) || !le(m, lower[n], upper[n])) return false;
    return true;
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!accepted[i]) continue;
    for (std::size_t j = 0; j < total; ++j) {
      if (i == j || !dominated(samples[j], samples[i])) continue;
      ++p3.checked;
      if (!accepted[j]) fail(p3, seq_str(samples[j]) + " <= " + seq_str(samples[i]));
    }
    if constexpr (HasInf<M>) {
      for (std::size_t w = 1; w < std::min(kWindow, total); ++w) {
        const std::size_t j = (i + w) % total;
        const auto count = std::min(samples[i].size(), samples[j].size());
        Seq s(count, m.zero());
        for (std::size_t n = 0; n < count; ++n) s[n] = m.inf(samples[i][n], samples[j][n]);
        ++p3.checked;
        if (!is_null(s, fam, h)) fail(p3, "inf with " + seq_str(samples[j]) + " of " + seq_str(samples[i]));
      }
    }
  }

  // 4: substituting, adding or removing finitely many leading terms.
  auto& p4 = report.add("p4_finite_modification");
  constexpr std::size_t kEdit = 3;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!accepted[i] || samples[i].size() <= 2 * kEdit) continue;
    const Seq& s = samples[i];
    Seq dropped(s.begin() + kEdit, s.end());
    Seq prefixed;
    for (std::size_t n = 0; n < kEdit; ++n) prefixed.push_back(m.sample(rng));
    prefixed.insert(prefixed.end(), s.begin(), s.end());
    Seq replaced = s;
    for (std::size_t n = 0; n < kEdit; ++n) replaced[n] = m.sample(rng);
    for (const Seq* edit : {&dropped, &prefixed, &replaced}) {
      ++p4.checked;
      if (!is_null(*edit, fam, h)) fail(p4, "edit of " + seq_str(s) + " -> " + seq_str(*edit));
    }
  }

  // 5: subsequences.
  auto& p5 = report.add("p5_subsequence");
  std::bernoulli_distribution keep(0.75);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!accepted[i]) continue;
    const Seq& s = samples[i];
    Seq stride, random;
    for (std::size_t n = 0; n < s.size(); n += 2) stride.push_back(s[n]);
    for (std::size_t n = 0; n < s.size(); ++n)
      if (keep(rng)) random.push_back(s[n]);
    for (const Seq* sub : {&stride, &random}) {
      if (sub->empty()) continue;
      ++p5.checked;
      if (!is_null(*sub, fam, h)) fail(p5, "subsequence of " + seq_str(s));
    }
  }

  // eps(j) + eps(j) <= eps(k) for every level above the tolerance floor.
  auto& halving = report.add("halving");
  for (std::size_t k = 1; k <= h.levels; ++k) {
    const auto e = fam.eps(k);
    if (!is_positive(m, e)) {
      fail(halving, "eps(" + std::to_string(k) + ") = " + m.encode(e).dump() + " not in M+");
      continue;
    }
    // Below the instance tolerance eps(k) is indistinguishable from zero.
    if (is_zero(m, e)) break;
    ++halving.checked;
    const auto j = fam.halve(k);
    if (!j) {
      fail(halving, "no halving level for eps(" + std::to_string(k) + ")");
      continue;
    }
    const auto d = fam.eps(*j);
    if (!le(m, m.add(d, d), e))
      fail(halving, "eps(" + std::to_string(*j) + ") doubled exceeds eps(" + std::to_string(k) + ")");
  }
  return report;
}

/// Horizon suited to null_sequence_samples() at its default length: eps
/// tails starting at level 8 or below reach `levels` well inside the first
/// half of every derived sequence.
inline Horizon sample_horizon(std::size_t levels = 24) { return {levels, 64}; }

/// Seeded mix of sequences for the null-family suite: eventually-zero
/// sequences, eps tails at several offsets, their sums and infima with
/// random elements, and constant or recurring sequences bounded below by eps(1).
template <OrderedMonoid M>
std::vector<std::vector<element_t<M>>> null_sequence_samples(const NullFamily<M>& fam, std::uint64_t seed,
                                                             std::size_t count, std::size_t length = 64) {
  using Seq = std::vector<element_t<M>>;
  const M& m = fam.monoid();
  Rng rng(seed);
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_int_distribution<std::size_t> offset(1, 8), cut(0, length / 4);
  std::vector<Seq> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Seq s(length, m.zero());
    switch (kind(rng)) {
      case 0: {
        const auto c = cut(rng);
        for (std::size_t n = 0; n < c; ++n) s[n] = m.sample(rng);
        break;
      }
      case 1: {
        const auto k0 = offset(rng);
        for (std::size_t n = 0; n < length; ++n) s[n] = fam.eps(k0 + n);
        break;
      }
      case 2: {
        const auto k0 = offset(rng);
        for (std::size_t n = 0; n < length; ++n) s[n] = m.add(fam.eps(k0 + n), fam.eps(k0 + 2 * n));
        break;
      }
      case 3: {
        const auto k0 = offset(rng);
        for (std::size_t n = 0; n < length; ++n) {
          if constexpr (HasInf<M>) s[n] = m.inf(m.sample(rng), fam.eps(k0 + n));
          else s[n] = fam.eps(k0 + n);
        }
        break;
      }
      case 4: {
        const auto x = m.add(m.sample(rng), fam.eps(1));
        for (auto& v : s) v = x;
        break;
      }
      default: {
        const auto x = m.add(m.sample(rng), fam.eps(1));
        for (std::size_t n = 0; n < length; n += 3) s[n] = x;
        break;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace mfix
