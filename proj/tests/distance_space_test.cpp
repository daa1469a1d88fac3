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


#include <cmath>
#include <optional>
#include <vector>

#include <gtest/gtest.h>

#include "mfix/distance_space.hpp"
#include "mfix/instances/entourage.hpp"
#include "mfix/instances/example_spaces.hpp"

namespace {

using mfix::Horizon;

mfix::PathGenerator<double> uniform_paths() {
  return [n = std::size_t{0}]() mutable -> std::optional<std::vector<double>> {
    ++n;
    std::vector<double> p;
    for (std::size_t i = 0; i <= n; ++i) p.push_back(static_cast<double>(i) / static_cast<double>(n));
    return p;
  };
}

TEST(StrongFW, SquaredDistanceHasWitness) {
  auto space = mfix::squared_distance_space();
  auto w = mfix::strong_fw_probe(space, uniform_paths(), 1000, 6, 1);
  ASSERT_TRUE(w);
  // Chain sum of 0, 1/n, ..., 1 is n / n^2 = 1/n; first n with 1/n < 2^-6 is 65.
  EXPECT_EQ(w->path.size(), 66u);
  EXPECT_NEAR(w->chain_sum, 1.0 / 65.0, 1e-15);
  EXPECT_DOUBLE_EQ(w->endpoint, 1.0);
}

TEST(StrongFW, MetricHasNoWitness) {
  auto space = mfix::abs_metric_space();
  EXPECT_FALSE(mfix::strong_fw_probe(space, uniform_paths(), 2000, 6, 1));
}

TEST(StrongFW, ExhaustedGeneratorStops) {
  std::size_t calls = 0;
  mfix::PathGenerator<double> gen = [&]() -> std::optional<std::vector<double>> {
    if (calls++ >= 3) return std::nullopt;
    return std::vector<double>{0.0, 1.0};
  };
  EXPECT_FALSE(mfix::strong_fw_probe(mfix::squared_distance_space(), gen, 100, 2, 1));
  EXPECT_EQ(calls, 4u);
}

TEST(Convergence, RealSequences) {
  const Horizon h{20, 4000};
  auto space = mfix::abs_metric_space(h);
  std::vector<double> seq;
  for (std::size_t n = 1; n <= h.terms; ++n) seq.push_back(2.0 + std::pow(0.5, static_cast<double>(n)));
  EXPECT_TRUE(mfix::converges_to(seq, 2.0, space, h));
  EXPECT_FALSE(mfix::converges_to(seq, 2.1, space, h));
  EXPECT_TRUE(mfix::is_cauchy_sequence(seq, space, h));

  std::vector<double> partial_harmonic;
  double acc = 0;
  for (std::size_t n = 1; n <= h.terms; ++n) partial_harmonic.push_back(acc += 1.0 / static_cast<double>(n));
  auto v = mfix::is_cauchy_sequence(partial_harmonic, space, h);
  EXPECT_FALSE(v);
  // H_{2k} - H_k tends to ln 2.
  EXPECT_EQ(v.schedule, "(k,2k)");
}

TEST(Products, SigmaAndSupDistances) {
  auto base = mfix::abs_metric_space();
  auto sigma = mfix::product_space(base, 3, mfix::ProductMode::sigma);
  auto sup = mfix::product_space(base, 3, mfix::ProductMode::sup);
  auto vec = mfix::vector_product(base, 3);
  std::vector<double> x{0, 1, 2}, y{1, -1, 2.5};
  EXPECT_DOUBLE_EQ(sigma(x, y), 3.5);
  EXPECT_DOUBLE_EQ(sup(x, y), 2.0);
  EXPECT_EQ(vec(x, y), (std::vector<double>{1, 2, 0.5}));
  EXPECT_EQ(sigma.cls, mfix::SpaceClass::fm_distance);
  EXPECT_THROW(sigma(x, {1.0}), mfix::Error);
}

// Reals without suprema.
struct NoSupReals {
  using value_type = double;
  double zero() const { return 0; }
  double add(double a, double b) const { return a + b; }
  std::partial_ordering compare(double a, double b) const { return a <=> b; }
  double sample(mfix::Rng& rng) const { return std::uniform_real_distribution<double>(0, 1)(rng); }
  nlohmann::json encode(double x) const { return x; }
  std::string name() const { return "nosup"; }
};

TEST(Products, SupNeedsSuprema) {
  static_assert(!mfix::HasSup<NoSupReals>);
  mfix::NullFamily<NoSupReals> fam(NoSupReals{}, [](std::size_t k) { return std::ldexp(1.0, -static_cast<int>(k)); },
                                   [](std::size_t k) -> std::optional<std::size_t> { return k + 1; });
  mfix::DistanceSpace<NoSupReals, double> space{fam, [](double a, double b) { return std::abs(a - b); },
                                                mfix::SpaceClass::metric, "nosup"};
  EXPECT_NO_THROW(mfix::product_space(space, 2, mfix::ProductMode::sigma));
  try {
    mfix::product_space(space, 2, mfix::ProductMode::sup);
    FAIL();
  } catch (const mfix::Error& e) {
    EXPECT_EQ(e.kind(), mfix::ErrorKind::sup_unavailable);
  }
}

TEST(SpaceAxioms, BrokenDistancesAreReported) {
  auto space = mfix::abs_metric_space();
  space.dist = [](double a, double b) { return std::abs(a - 2 * b); };
  auto r = mfix::verify_space_axioms(space, std::vector<double>{0.0, 1.0, 2.0, 3.0});
  EXPECT_FALSE(r.find("symmetry")->passed);
  EXPECT_FALSE(r.find("identity")->passed);

  auto bad_tri = mfix::squared_distance_space();
  bad_tri.cls = mfix::SpaceClass::metric;
  auto r2 = mfix::verify_space_axioms(bad_tri, std::vector<double>{0.0, 1.0, 2.0});
  EXPECT_FALSE(r2.find("triangle")->passed);
  EXPECT_NE(r2.find("triangle")->counterexample.find("[0.0,1.0,2.0]"), std::string::npos);
}

TEST(SpaceAxioms, EntourageTriangleOnAllTriples) {
  auto space = mfix::entourage_space(mfix::partition_chain_base(5));
  auto r = mfix::verify_space_axioms(space, std::vector<std::size_t>{0, 1, 2, 3, 4});
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.find("triangle")->checked, 125u);
}

}  // namespace
