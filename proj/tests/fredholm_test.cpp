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
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "mfix/fredholm.hpp"

namespace {

using mfix::CertificateStatus;
using mfix::NodeValues;
using mfix::Quadrature;

NodeValues node_values(const Quadrature& q, double (*f)(double)) {
  NodeValues v;
  for (double t : q.nodes) v.push_back({f(t)});
  return v;
}

mfix::Nonlinearity linear(std::function<double(double, double)> k) {
  return [k](double t, double s, const std::vector<double>& x) { return std::vector<double>{k(t, s) * x[0]}; };
}

// Dense solve of (I - K W) x = f.
Eigen::VectorXd dense_solution(const Quadrature& q, const std::function<double(double, double)>& k,
                               const NodeValues& f) {
  const auto n = static_cast<Eigen::Index>(q.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    rhs(i) = f[i][0];
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) -= k(q.nodes[i], q.nodes[j]) * q.weights[j];
  }
  return a.partialPivLu().solve(rhs);
}

TEST(Quadrature, MidpointRule) {
  auto q = Quadrature::midpoint(0, 1, 4);
  EXPECT_EQ(q.nodes, (std::vector<double>{0.125, 0.375, 0.625, 0.875}));
  EXPECT_DOUBLE_EQ(q.measure(), 1.0);
  EXPECT_THROW(Quadrature::from_table({0, 1}, {0.5, -0.5}), mfix::Error);
  EXPECT_THROW(Quadrature::from_table({0, 1}, {0.5, 0.4}, 1.0), mfix::Error);
  EXPECT_NO_THROW(Quadrature::from_table({0, 1}, {0.5, 0.5}, 1.0));
}

TEST(IteratedKernels, ConstantKernelPowers) {
  auto q = Quadrature::midpoint(0, 1, 16);
  auto bound = mfix::make_kernel_bound([](double, double) { return 0.5; }, q);
  auto ks = mfix::iterated_kernels(bound, 5);
  ASSERT_EQ(ks.size(), 5u);
  EXPECT_EQ(ks[0], bound.weighted);
  // Q_n = c^n, weighted by 1/16.
  for (std::size_t n = 0; n < 5; ++n)
    EXPECT_NEAR(ks[n](3, 7), std::pow(0.5, static_cast<double>(n + 1)) / 16.0, 1e-15);
}

TEST(IteratedKernels, ProductKernelSecondPower) {
  auto q = Quadrature::midpoint(0, 1, 400);
  auto bound = mfix::make_kernel_bound([](double t, double s) { return t * s; }, q);
  auto ks = mfix::iterated_kernels(bound, 2);
  // Q_2(t, s) = t s / 3, up to midpoint error in the inner integral.
  for (Eigen::Index i : {0, 100, 399})
    for (Eigen::Index j : {5, 250}) {
      const double t = q.nodes[i], s = q.nodes[j];
      EXPECT_NEAR(ks[1](i, j) / q.weights[j], t * s / 3.0, 1e-5);
    }
}

TEST(IteratedKernels, SemigroupProperty) {
  auto q = Quadrature::midpoint(0, 2, 12);
  auto bound = mfix::make_kernel_bound([](double t, double s) { return 0.1 * (1 + t * s); }, q);
  auto ks = mfix::iterated_kernels(bound, 6);
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m = 1; m <= 3; ++m)
      EXPECT_LT((ks[n + m - 1] - ks[n - 1] * ks[m - 1]).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Certificate, ConstantKernels) {
  auto q = Quadrature::midpoint(0, 1, 64);
  auto half = mfix::convergence_certificate(mfix::make_kernel_bound([](double, double) { return 0.5; }, q), q);
  EXPECT_EQ(half.overall.status, CertificateStatus::certified);
  EXPECT_EQ(half.series.status, CertificateStatus::certified);
  EXPECT_TRUE(half.agree);
  EXPECT_NEAR(*half.spectral.spectral_radius, 0.5, 1e-10);

  auto one = mfix::convergence_certificate(mfix::make_kernel_bound([](double, double) { return 1.0; }, q), q);
  EXPECT_EQ(one.overall.status, CertificateStatus::refuted);
  EXPECT_EQ(one.series.status, CertificateStatus::refuted);
  EXPECT_TRUE(one.agree);
}

TEST(Certificate, RatioIsKernelTimesMeasure) {
  // Q = c on [0, 2]: row sums (2c)^n.
  auto q = Quadrature::midpoint(0, 2, 32);
  for (double c : {0.1, 0.2, 0.3}) {
    auto cert = mfix::convergence_certificate(mfix::make_kernel_bound([c](double, double) { return c; }, q), q);
    EXPECT_EQ(cert.overall.status, CertificateStatus::certified) << c;
    EXPECT_NEAR(*cert.spectral.spectral_radius, 2 * c, 1e-10);
    EXPECT_TRUE(cert.agree);
  }
  auto over = mfix::convergence_certificate(mfix::make_kernel_bound([](double, double) { return 0.6; }, q), q);
  EXPECT_EQ(over.overall.status, CertificateStatus::refuted);
}

TEST(Certificate, ProductKernelRoutesAgree) {
  auto q = Quadrature::midpoint(0, 1, 64);
  auto cert = mfix::convergence_certificate(mfix::make_kernel_bound([](double t, double s) { return t * s; }, q), q);
  EXPECT_TRUE(cert.agree);
  EXPECT_EQ(cert.overall.status, CertificateStatus::certified);
  EXPECT_NEAR(*cert.spectral.spectral_radius, 1.0 / 3.0, 1e-4);
}

TEST(Solve, ConstantKernelLinear) {
  auto q = Quadrature::midpoint(0, 1, 64);
  auto k = [](double, double) { return 0.5; };
  mfix::FredholmProblem pb{q, node_values(q, [](double) { return 1.0; }), linear(k), mfix::make_kernel_bound(k, q)};
  auto res = mfix::fredholm_solve(pb);
  ASSERT_TRUE(res.trace.converged());
  const auto dense = dense_solution(q, k, pb.f);
  for (std::size_t i = 0; i < q.size(); ++i) {
    EXPECT_NEAR(res.values()[i][0], 2.0, 1e-8);
    EXPECT_NEAR(dense(static_cast<Eigen::Index>(i)), 2.0, 1e-12);
  }
  // Grid-pointwise bound d_k <= Q d_{k-1}.
  EXPECT_TRUE(res.trace.orbit_violations.empty());
}

TEST(Solve, ZeroKernelReturnsF) {
  auto q = Quadrature::midpoint(0, 1, 8);
  mfix::FredholmProblem pb{q, node_values(q, [](double t) { return std::sin(t); }),
                           [](double, double, const std::vector<double>& x) { return std::vector<double>(x.size(), 0.0); },
                           mfix::make_kernel_bound([](double, double) { return 0.0; }, q)};
  auto res = mfix::fredholm_solve(pb);
  ASSERT_TRUE(res.trace.converged());
  EXPECT_EQ(res.values(), pb.f);
  EXPECT_LE(res.trace.iterations(), 1u);
}

TEST(Solve, SeparableKernel) {
  auto q = Quadrature::midpoint(0, 1, 64);
  auto k = [](double t, double s) { return t * s; };
  mfix::FredholmProblem pb{q, node_values(q, [](double t) { return t; }), linear(k), mfix::make_kernel_bound(k, q)};
  auto res = mfix::fredholm_solve(pb);
  ASSERT_TRUE(res.trace.converged());
  const auto dense = dense_solution(q, k, pb.f);
  const double cond = 1.0 / (1.0 - 1.0 / 3.0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    EXPECT_NEAR(res.values()[i][0], 1.5 * q.nodes[i], 1e-4);
    // Picard result against the dense solve, up to the stopping level.
    EXPECT_NEAR(res.values()[i][0], dense(static_cast<Eigen::Index>(i)),
                std::ldexp(1.0, -30) * cond + 10 * std::numeric_limits<double>::epsilon() * cond);
  }
}

TEST(Solve, VectorValuedUnknowns) {
  // Two decoupled components: x = 1 + 0.5 * int x and y = t + 0.5 * int y.
  auto q = Quadrature::midpoint(0, 1, 32);
  NodeValues f;
  for (double t : q.nodes) f.push_back({1.0, t});
  mfix::FredholmProblem pb{q, f,
                           [](double, double, const std::vector<double>& x) {
                             return std::vector<double>{0.5 * x[0], 0.5 * x[1]};
                           },
                           mfix::make_kernel_bound([](double, double) { return 0.5; }, q)};
  auto res = mfix::fredholm_solve(pb);
  ASSERT_TRUE(res.trace.converged());
  // y(t) = t + 0.5 * Y with Y = int y = 1/2 + Y/2, so Y = 1.
  for (std::size_t i = 0; i < q.size(); ++i) {
    EXPECT_NEAR(res.values()[i][0], 2.0, 1e-8);
    EXPECT_NEAR(res.values()[i][1], q.nodes[i] + 0.5, 1e-8);
  }
}

TEST(Solve, RefusedWithoutOverride) {
  auto q = Quadrature::midpoint(0, 1, 16);
  auto k = [](double, double) { return 1.0; };
  mfix::FredholmProblem pb{q, node_values(q, [](double) { return 1.0; }), linear(k), mfix::make_kernel_bound(k, q)};
  auto res = mfix::fredholm_solve(pb);
  EXPECT_EQ(res.trace.termination, mfix::Termination::certificate_refused);
  pb.override_certificate = true;
  pb.max_iter = 400;
  res = mfix::fredholm_solve(pb);
  // x_k = 1 + k: constant steps trip the divergence window.
  EXPECT_EQ(res.trace.termination, mfix::Termination::divergence_detected);
}

TEST(KernelBound, DominationSampling) {
  auto q = Quadrature::midpoint(0, 1, 10);
  auto bound = mfix::make_kernel_bound([](double t, double s) { return 0.5 * (t + s); }, q);
  auto good = [](double t, double s, const std::vector<double>& x) {
    return std::vector<double>{0.5 * (t + s) * std::sin(x[0])};
  };
  EXPECT_TRUE(mfix::verify_kernel_bound(bound, q, good, 1, 3).all_passed());
  auto bad = [](double, double, const std::vector<double>& x) { return std::vector<double>{2 * x[0]}; };
  EXPECT_FALSE(mfix::verify_kernel_bound(bound, q, bad, 1, 3).all_passed());
}

}  // namespace
