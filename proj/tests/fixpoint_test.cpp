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
#include <vector>

#include <gtest/gtest.h>

#include "mfix/fixpoint.hpp"
#include "mfix/instances/example_spaces.hpp"

namespace {

using mfix::FixpointProblem;
using mfix::RealLine;
using mfix::Termination;
using Vec = std::vector<double>;
using VecSpace = mfix::DistanceSpace<mfix::VectorMonoid, Vec>;

Eigen::MatrixXd m2(double a, double b, double c, double d) { return (Eigen::MatrixXd(2, 2) << a, b, c, d).finished(); }

FixpointProblem<RealLine> halving_problem() {
  return {mfix::abs_metric_space(), [](const double& x) { return x / 2 + 1; }, mfix::scalar_contraction(0.5), 0.0};
}

TEST(Picard, ClassicalContractionMatchesClosedFormIterates) {
  auto t = mfix::picard_solve(halving_problem());
  ASSERT_EQ(t.termination, Termination::converged);
  EXPECT_EQ(t.certificate.status, mfix::CertificateStatus::certified);
  for (std::size_t n = 0; n < t.iterates.size(); ++n)
    EXPECT_DOUBLE_EQ(t.iterates[n], 2.0 - std::ldexp(1.0, 1 - static_cast<int>(n)));
  // d_n = 2^-n; both d_{n-1} and d_n drop below 2^-30 first at n = 32.
  EXPECT_EQ(t.iterations(), 32u);
  EXPECT_LT(std::abs(t.fixpoint() - 2.0), 1e-9);
  EXPECT_DOUBLE_EQ(*t.residual, std::ldexp(1.0, -32));
  EXPECT_EQ(t.uniqueness, "unique");
}

TEST(Picard, DeeperLevelStaysWithinFortyIterations) {
  auto pb = halving_problem();
  pb.stop.eps_level = 40;
  auto t = mfix::picard_solve(pb);
  ASSERT_TRUE(t.converged());
  EXPECT_LE(t.iterations(), 42u);
  EXPECT_LT(std::abs(t.fixpoint() - 2.0), 1e-11);
}

TEST(Picard, StepDistancesObeyLambda) {
  auto t = mfix::picard_solve(halving_problem());
  ASSERT_EQ(t.step_dists.size(), t.iterates.size());
  for (std::size_t n = 1; n < t.step_dists.size(); ++n) EXPECT_LE(t.step_dists[n], 0.5 * t.step_dists[n - 1] + 1e-15);
  EXPECT_TRUE(t.orbit_violations.empty());
}

TEST(Picard, IdentityOnPointConvergesImmediately) {
  FixpointProblem<RealLine> pb{mfix::abs_metric_space(), [](const double& x) { return x; }, mfix::scalar_contraction(0.5),
                               3.0};
  auto t = mfix::picard_solve(pb);
  EXPECT_TRUE(t.converged());
  EXPECT_EQ(t.iterations(), 0u);
  EXPECT_EQ(*t.residual, 0.0);
}

TEST(Picard, AffineMapOnPlaneWithLargeCoupling) {
  // x = L x + b with fixed point (1, 1).
  const Eigen::MatrixXd L = m2(0.5, 10, 0.01, 0.5);
  const Eigen::Vector2d b = (Eigen::Matrix2d::Identity() - L) * Eigen::Vector2d(1, 1);
  FixpointProblem<VecSpace> pb{mfix::coordinate_space(2),
                               [L, b](const Vec& x) {
                                 Eigen::Vector2d y = L * Eigen::Vector2d(x[0], x[1]) + b;
                                 return Vec{y(0), y(1)};
                               },
                               mfix::matrix_contraction(L), Vec{0, 0}};
  pb.stop.eps_level = 36;
  auto t = mfix::picard_solve(pb);
  ASSERT_TRUE(t.converged());
  const Eigen::Vector2d oracle = (Eigen::Matrix2d::Identity() - L).partialPivLu().solve(b);
  EXPECT_NEAR(t.fixpoint()[0], oracle(0), 1e-8);
  EXPECT_NEAR(t.fixpoint()[1], oracle(1), 1e-8);
  EXPECT_NEAR(oracle(0), 1.0, 1e-14);
}

TEST(Picard, RefusedCertificateStopsWithoutOverride) {
  FixpointProblem<VecSpace> pb{mfix::coordinate_space(2), [](const Vec& x) { return x; },
                               mfix::matrix_contraction(m2(1.0, 0, 0, 0.5)), Vec{1, 1}};
  auto t = mfix::picard_solve(pb);
  EXPECT_EQ(t.termination, Termination::certificate_refused);
  EXPECT_EQ(t.iterates.size(), 1u);
  EXPECT_THROW(t.fixpoint(), mfix::Error);
}

TEST(Picard, ShiftDiverges) {
  FixpointProblem<RealLine> pb{mfix::abs_metric_space(), [](const double& x) { return x + 1; },
                               mfix::scalar_contraction(1.0), 0.0};
  EXPECT_EQ(mfix::picard_solve(pb).termination, Termination::certificate_refused);
  pb.options.override_certificate = true;
  auto t = mfix::picard_solve(pb);
  EXPECT_EQ(t.termination, Termination::divergence_detected);
  EXPECT_EQ(*t.failure_step, 50u);
  EXPECT_TRUE(t.certificate.overridden);
  EXPECT_EQ(t.uniqueness, "not claimed");
  EXPECT_EQ(mfix::picard_solve_orbital(pb).termination, Termination::divergence_detected);
}

TEST(Picard, MaxIterExhausted) {
  auto pb = halving_problem();
  pb.stop.max_iter = 5;
  auto t = mfix::picard_solve(pb);
  EXPECT_EQ(t.termination, Termination::max_iter_exhausted);
  EXPECT_EQ(t.iterations(), 5u);
}

TEST(Picard, SampledContractionCheck) {
  auto pb = halving_problem();
  pb.sampler = [](mfix::Rng& rng) { return std::uniform_real_distribution<double>(-10, 10)(rng); };
  auto t = mfix::picard_solve(pb);
  EXPECT_EQ(t.contraction_check.sampled, 200u);
  EXPECT_EQ(t.contraction_check.violations, 0u);

  pb.lambda = mfix::scalar_contraction(0.4);
  t = mfix::picard_solve(pb);
  EXPECT_EQ(t.contraction_check.violations, 200u);
  EXPECT_FALSE(t.contraction_check.witness.empty());
}

TEST(Orbital, SameAsGeneralOnContraction) {
  auto g = mfix::picard_solve(halving_problem());
  auto o = mfix::picard_solve_orbital(halving_problem());
  ASSERT_TRUE(o.converged());
  EXPECT_EQ(o.iterates, g.iterates);
  EXPECT_EQ(o.uniqueness, "not claimed");
  ASSERT_FALSE(o.notes.empty());
}

TEST(Orbital, SquareMapFromInsideTheBasin) {
  FixpointProblem<RealLine> pb{mfix::abs_metric_space(), [](const double& x) { return x * x; },
                               mfix::scalar_contraction(0.9), 0.4};
  auto t = mfix::picard_solve_orbital(pb);
  ASSERT_TRUE(t.converged());
  for (std::size_t n = 0; n < t.iterates.size(); ++n) {
    const double expected = std::pow(0.4, std::ldexp(1.0, static_cast<int>(n)));
    EXPECT_NEAR(t.iterates[n], expected, 1e-13 * expected);
  }
  EXPECT_NEAR(t.fixpoint(), 0.0, 1e-9);
}

TEST(Orbital, SquareMapFromPointNine) {
  FixpointProblem<RealLine> pb{mfix::abs_metric_space(), [](const double& x) { return x * x; },
                               mfix::scalar_contraction(0.9), 0.9};
  // d_1 = 0.81 - 0.6561 exceeds 0.9 d_0 = 0.081.
  auto t = mfix::picard_solve_orbital(pb);
  EXPECT_EQ(t.termination, Termination::orbit_contraction_violated);
  EXPECT_EQ(*t.failure_step, 1u);

  pb.lambda = mfix::scalar_contraction(1.8);
  EXPECT_EQ(mfix::picard_solve_orbital(pb).termination, Termination::certificate_refused);
  pb.options.override_certificate = true;
  auto o = mfix::picard_solve_orbital(pb);
  ASSERT_TRUE(o.converged());
  EXPECT_DOUBLE_EQ(o.iterates[3], std::pow(0.9, 8.0));
  EXPECT_NEAR(o.fixpoint(), 0.0, 1e-9);
}

std::function<bool(const double&, const double&)> leq() {
  return [](const double& a, const double& b) { return a <= b; };
}

TEST(Monotone, SqrtShiftRisesToTwo) {
  FixpointProblem<RealLine> pb{mfix::abs_metric_space(), [](const double& x) { return std::sqrt(x + 2); },
                               mfix::scalar_contraction(1 / (2 * std::sqrt(2.0))), 0.0};
  pb.sampler = [](mfix::Rng& rng) { return std::uniform_real_distribution<double>(0, 2)(rng); };
  auto t = mfix::monotone_picard_solve(pb, leq());
  ASSERT_TRUE(t.converged());
  EXPECT_NEAR(t.fixpoint(), 2.0, 1e-9);
  double x = 0;
  for (std::size_t n = 0; n < t.iterates.size(); ++n) {
    EXPECT_DOUBLE_EQ(t.iterates[n], x);
    x = std::sqrt(x + 2);
  }
  for (std::size_t n = 1; n < t.iterates.size(); ++n) EXPECT_LE(t.iterates[n - 1], t.iterates[n]);
  EXPECT_EQ(t.contraction_check.violations, 0u);
  EXPECT_EQ(t.uniqueness, "unique");
}

TEST(Monotone, UpperRieszClaimsUniqueness) {
  auto space = mfix::abs_metric_space();
  space.upper_riesz = true;
  FixpointProblem<RealLine> pb{space, [](const double& x) { return std::sqrt(x + 2); },
                               mfix::scalar_contraction(0.5), 0.0};
  EXPECT_EQ(mfix::monotone_picard_solve(pb, leq()).uniqueness, "unique");
  space.upper_riesz = false;
  pb.space = space;
  EXPECT_EQ(mfix::monotone_picard_solve(pb, leq()).uniqueness, "within comparable points");
}

TEST(Monotone, StartAtFixedPoint) {
  FixpointProblem<RealLine> pb{mfix::abs_metric_space(), [](const double& x) { return std::sqrt(x + 2); },
                               mfix::scalar_contraction(0.5), 2.0};
  auto t = mfix::monotone_picard_solve(pb, leq());
  EXPECT_TRUE(t.converged());
  EXPECT_EQ(t.iterations(), 0u);
}

TEST(Monotone, DecreasingMapBreaksChain) {
  FixpointProblem<RealLine> pb{mfix::abs_metric_space(), [](const double& x) { return -x; },
                               mfix::scalar_contraction(0.5), -1.0};
  auto t = mfix::monotone_picard_solve(pb, leq());
  EXPECT_EQ(t.termination, Termination::order_violated);
  EXPECT_EQ(*t.failure_step, 1u);

  pb.x0 = 1.0;
  EXPECT_EQ(mfix::monotone_picard_solve(pb, leq()).termination, Termination::not_monotone_start);
}

TEST(SigmaLift, Substitution) {
  std::function<double(const Vec&)> f = [](const Vec& v) { return (2 * v[0] - v[1] + 3) / 4; };
  auto lift = mfix::sigma_lift<double>(f, {{0, 1}, {1, 0}});
  auto y = lift({0.7, -1.3});
  EXPECT_DOUBLE_EQ(y[0], (2 * 0.7 + 1.3 + 3) / 4);
  EXPECT_DOUBLE_EQ(y[1], (2 * -1.3 - 0.7 + 3) / 4);

  std::function<double(const Vec&)> g = [](const Vec& v) { return 3 * v[0]; };
  EXPECT_EQ(mfix::sigma_lift<double>(g, {{0}})({2.0}), Vec{6.0});

  std::function<double(const Vec&)> c = [](const Vec&) { return 4.0; };
  EXPECT_EQ(mfix::sigma_lift<double>(c, {{0, 0, 1}, {2, 2, 2}, {1, 0, 2}})({9, 8, 7}), (Vec{4, 4, 4}));
}

TEST(SigmaLift, IndexOutOfRange) {
  std::function<double(const Vec&)> f = [](const Vec& v) { return v[0]; };
  try {
    mfix::sigma_lift<double>(f, {{0, 2}, {1, 0}});
    FAIL();
  } catch (const mfix::Error& e) {
    EXPECT_EQ(e.kind(), mfix::ErrorKind::index_out_of_range);
  }
}

mfix::MultipleProblem<mfix::Reals, double> coupled(Vec x0) {
  return {mfix::abs_metric_space(),
          [](const Vec& v) { return (2 * v[0] - v[1] + 3) / 4; },
          {{0, 1}, {1, 0}},
          {true, false},
          leq(),
          mfix::matrix_contraction(m2(0.5, 0.25, 0.25, 0.5)),
          std::move(x0)};
}

TEST(Multiple, CoupledFixedPoint) {
  auto pb = coupled({0, 3});
  pb.stop.eps_level = 34;
  auto t = mfix::multiple_fixpoint_solve(pb);
  ASSERT_TRUE(t.converged()) << mfix::to_string(t.termination);
  EXPECT_EQ(t.variant, mfix::Variant::multiple);
  // 2x + y = 3, x + 2y = 3.
  const Eigen::Vector2d oracle = m2(2, 1, 1, 2).fullPivLu().solve(Eigen::Vector2d(3, 3));
  EXPECT_NEAR(t.fixpoint()[0], oracle(0), 1e-8);
  EXPECT_NEAR(t.fixpoint()[1], oracle(1), 1e-8);
  for (std::size_t n = 1; n < t.iterates.size(); ++n) {
    EXPECT_LE(t.iterates[n - 1][0], t.iterates[n][0]);
    EXPECT_GE(t.iterates[n - 1][1], t.iterates[n][1]);
  }
}

TEST(Multiple, ConstantMapStopsAfterTwoSmallSteps) {
  auto pb = coupled({0, 3});
  pb.f = [](const Vec&) { return 1.5; };
  auto t = mfix::multiple_fixpoint_solve(pb);
  ASSERT_TRUE(t.converged());
  EXPECT_EQ(t.iterations(), 2u);
  EXPECT_EQ(t.fixpoint(), (Vec{1.5, 1.5}));
}

TEST(Multiple, SpectralRadiusAboveOneRefused) {
  auto pb = coupled({0, 3});
  pb.lambda = mfix::matrix_contraction(m2(0.7, 0.5, 0.5, 0.7));
  EXPECT_EQ(mfix::multiple_fixpoint_solve(pb).termination, Termination::certificate_refused);
}

TEST(Multiple, StartMustBeBelowLift) {
  auto pb = coupled({3, 0});
  EXPECT_EQ(mfix::multiple_fixpoint_solve(pb).termination, Termination::not_monotone_start);
}

TEST(Multiple, OneDimensionalLiftMatchesMonotoneSolve) {
  FixpointProblem<RealLine> single{mfix::abs_metric_space(), [](const double& x) { return std::sqrt(x + 2); },
                                   mfix::scalar_contraction(0.5), 0.0};
  auto direct = mfix::monotone_picard_solve(single, leq());
  mfix::MultipleProblem<mfix::Reals, double> lifted{single.space,
                                                    [](const Vec& v) { return std::sqrt(v[0] + 2); },
                                                    {{0}},
                                                    {true},
                                                    leq(),
                                                    mfix::matrix_contraction(Eigen::MatrixXd::Constant(1, 1, 0.5)),
                                                    {0.0}};
  auto via = mfix::multiple_fixpoint_solve(lifted);
  ASSERT_EQ(via.iterates.size(), direct.iterates.size());
  for (std::size_t n = 0; n < via.iterates.size(); ++n) {
    EXPECT_EQ(via.iterates[n][0], direct.iterates[n]);
    EXPECT_EQ(via.step_dists[n][0], direct.step_dists[n]);
  }
}

TEST(MultiStart, AgreementOnCertifiedProblem) {
  mfix::Rng rng(99);
  std::uniform_real_distribution<double> u(-100, 100);
  std::vector<double> starts(10);
  for (auto& s : starts) s = u(rng);
  auto res = mfix::multi_start(halving_problem(), starts,
                               [](const FixpointProblem<RealLine>& p) { return mfix::picard_solve(p); }, 28);
  EXPECT_TRUE(res.all_converged);
  EXPECT_TRUE(res.agree);
  EXPECT_EQ(res.traces.size(), 10u);
}

TEST(TraceJson, StructureAndDeterminism) {
  auto pb = halving_problem();
  auto a = mfix::trace_to_json(mfix::picard_solve(pb), pb.space).dump();
  auto b = mfix::trace_to_json(mfix::picard_solve(pb), pb.space).dump();
  EXPECT_EQ(a, b);
  auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["termination"]["reason"], "converged");
  EXPECT_TRUE(j["steps"][0]["step_dist"].is_null());
  EXPECT_EQ(j["steps"][1]["step_dist"], 1.0);
  EXPECT_EQ(j["steps"][1]["residual"], 0.5);
  EXPECT_EQ(j["certificate"]["status"], "certified");
}

}  // namespace
