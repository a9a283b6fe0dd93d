// Copyright 2026 The vqc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <vqc/kernel.hpp>
#include <vqc/rng.hpp>

using namespace vqc;

namespace {

void random_problem(int N, int M, Rng& rng, RMat& x, RVec& y) {
  x.resize(N, M);
  y.resize(N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < M; ++j) x(i, j) = rng.uniform(-1, 1);
    y(i) = x(i, 0) + 0.3 * x(i, 1) > 0 ? 1.0 : -1.0;
  }
}

// sum_i (y_i - v.phi_i)^2 / N + lambda |v|^2 in primal form, v = Phi^T a
double ridge_objective(const KernelModel& m, const RVec& y) {
  RVec v = m.phi.transpose() * m.a;
  return (y - m.phi * v).squaredNorm() / double(y.size()) + m.lambda * v.squaredNorm();
}

}  // namespace

TEST(FeatureMap, Examples) {
  RVec x(2);
  x << 3, 4;
  RVec e(2);
  e << 0.6, 0.8;
  EXPECT_LT((feature_map({FeatureKind::Linear, true, false}, x) - e).norm(), 1e-15);
  RVec p(5);
  p << 3, 4, 9, 12, 16;
  EXPECT_EQ(feature_map({FeatureKind::Poly2, false, false}, x), p);
  EXPECT_EQ(feature_dim({FeatureKind::Poly2, false, false}, 4), 14);
  EXPECT_EQ(feature_dim({FeatureKind::Poly2, false, true}, 4), 15);
  RVec lb = feature_map({FeatureKind::Linear, false, true}, x);
  EXPECT_EQ(lb.size(), 3);
  EXPECT_EQ(lb(2), 1.0);
  EXPECT_THROW(feature_map({FeatureKind::Linear, true, false}, RVec::Zero(2)), invalid_input);
}

TEST(KernelRidge, ScalarSolve) {
  RMat x = RMat::Ones(1, 1);
  RVec y = RVec::Constant(1, -1.0);
  KernelModel m = kernel_fit(x, y, {}, 1.0);
  EXPECT_NEAR(m.a(0), -0.5, 1e-15);
}

TEST(KernelRidge, ResidualAndStationarity) {
  Rng rng(60);
  for (FeatureKind k : {FeatureKind::Linear, FeatureKind::Poly2}) {
    RMat x;
    RVec y;
    random_problem(40, 4, rng, x, y);
    KernelModel m = kernel_fit(x, y, {k, false, true}, 0.1);
    RMat K = m.phi * m.phi.transpose();
    RVec lhs = (K + 0.1 * 40 * RMat::Identity(40, 40)) * m.a;
    EXPECT_LT((lhs - y).norm() / y.norm(), 1e-8);
    // K symmetric PSD
    EXPECT_LT((K - K.transpose()).norm(), 1e-12);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<RMat>(K).eigenvalues().minCoeff(), -1e-10);
    // primal gradient -2/N Phi^T (y - Phi v) + 2 lambda v vanishes
    RVec v = m.phi.transpose() * m.a;
    RVec g = -2.0 / 40 * m.phi.transpose() * (y - m.phi * v) + 2 * 0.1 * v;
    EXPECT_LT(g.norm(), 1e-8);
  }
}

TEST(KernelRidge, PrimalDualAndLinearity) {
  Rng rng(61);
  RMat x;
  RVec y;
  random_problem(30, 5, rng, x, y);
  FeatureMap fm{FeatureKind::Poly2, true, false};
  KernelModel m = kernel_fit(x, y, fm, 0.05), mneg = kernel_fit(x, -y, fm, 0.05);
  RVec v = m.phi.transpose() * m.a;
  for (int t = 0; t < 20; ++t) {
    RVec q(5);
    for (int j = 0; j < 5; ++j) q(j) = rng.uniform(-1, 1);
    EXPECT_NEAR(kernel_predict(m, q), v.dot(feature_map(fm, q)), 1e-10);
    EXPECT_NEAR(kernel_predict(mneg, q), -kernel_predict(m, q), 1e-12);
  }
  RVec all = kernel_predict_all(m, x);
  for (int i = 0; i < 30; ++i) EXPECT_NEAR(all(i), kernel_predict(m, x.row(i).transpose()), 1e-12);
}

TEST(KernelRidge, InterpolatesAtTinyLambda) {
  Rng rng(62);
  RMat x;
  RVec y;
  random_problem(6, 8, rng, x, y);  // more features than points
  KernelModel m = kernel_fit(x, y, {}, 1e-8);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(kernel_predict(m, x.row(i).transpose()), y(i), 1e-5);
}

TEST(KernelRidge, OptimalObjectiveGrowsWithLambda) {
  Rng rng(63);
  RMat x;
  RVec y;
  random_problem(25, 3, rng, x, y);
  double prev = -1;
  for (double lam : {0.01, 0.02, 0.04, 0.08, 0.16}) {
    double obj = ridge_objective(kernel_fit(x, y, {}, lam), y);
    EXPECT_GE(obj, prev);
    prev = obj;
  }
}

TEST(KernelRidge, RejectsBadInput) {
  EXPECT_THROW(kernel_fit(RMat::Ones(2, 2), RVec::Ones(2), {}, 0.0), invalid_input);
  KernelModel m = kernel_fit(RMat::Ones(2, 2), RVec::Ones(2), {}, 1.0);
  EXPECT_THROW(kernel_predict(m, RVec::Ones(3)), invalid_input);
}

TEST(KernelRidge, SumScaleIsMeanScaleWithLambdaOverN) {
  Rng rng(64);
  RMat x;
  RVec y;
  random_problem(20, 4, rng, x, y);
  KernelModel s = kernel_fit(x, y, {}, 0.3, RidgeScale::Sum), m = kernel_fit(x, y, {}, 0.3 / 20, RidgeScale::Mean);
  EXPECT_LT((s.a - m.a).norm(), 1e-10 * m.a.norm());
}
