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

#include <vqc/encode.hpp>
#include <vqc/predict.hpp>

#include "oracles.hpp"

using namespace vqc;

namespace {
RVec vec(std::initializer_list<double> v) {
  RVec r(v.size());
  int i = 0;
  for (double x : v) r(i++) = x;
  return r;
}
}  // namespace

TEST(Encode, QubitsFor) {
  EXPECT_EQ(qubits_for(1), 1);
  EXPECT_EQ(qubits_for(2), 1);
  EXPECT_EQ(qubits_for(4), 2);
  EXPECT_EQ(qubits_for(13), 4);
  EXPECT_EQ(qubits_for(30), 5);
  EXPECT_EQ(qubits_for(60), 6);
  EXPECT_EQ(qubits_for(256), 8);
}

TEST(Encode, AmplitudesAndPadding) {
  EXPECT_LT((amplitude_encode(vec({1, 0, 0, 0})) - vec({1, 0, 0, 0}).cast<cplx>()).norm(), 1e-15);
  EXPECT_LT((amplitude_encode(vec({1, 1, 1, 1})) - vec({.5, .5, .5, .5}).cast<cplx>()).norm(), 1e-15);
  EXPECT_LT((amplitude_encode(vec({1, 2, 2})) - vec({1. / 3, 2. / 3, 2. / 3, 0}).cast<cplx>()).norm(), 1e-15);
  EXPECT_THROW(amplitude_encode(vec({0, 0, 0})), invalid_input);
}

TEST(Encode, ScaleInvarianceAndSignFlip) {
  Rng rng(20);
  for (int t = 0; t < 100; ++t) {
    RVec x(5);
    for (int i = 0; i < 5; ++i) x(i) = rng.uniform(-3, 3);
    double c = rng.uniform(0.1, 10);
    CVec e = amplitude_encode(x);
    EXPECT_NEAR(e.norm(), 1.0, 1e-12);
    EXPECT_EQ(e.size(), 8);
    EXPECT_LT((amplitude_encode(c * x) - e).norm(), 1e-12);
    EXPECT_LT((amplitude_encode(-x) + e).norm(), 1e-12);
  }
}

TEST(Predict, FpredBasics) {
  CVec zero = CVec::Zero(2), one = CVec::Zero(2);
  zero(0) = 1;
  one(1) = 1;
  Observables z = default_observables(1);
  EXPECT_DOUBLE_EQ(f_pred(identity(2), zero, z, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(f_pred(identity(2), one, z, 0.5), -0.5);
  EXPECT_THROW(f_pred(identity(4), zero, z, 0.0), invalid_input);
}

TEST(Predict, ComponentFormAndBounds) {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + t % 3, d = 1 << n;
    CMat u = oracle::random_unitary(d, rng);
    CVec psi = oracle::random_state(d, rng);
    Observables obs = {{oracle::random_hermitian(d, rng), 0.7}, {oracle::random_hermitian(d, rng), -1.3}};
    // sum_j xi_j sum_{k,l} psi_k^* (U^H O_j U)_{kl} psi_l written as explicit loops
    double direct = 0.4;
    for (const auto& o : obs) {
      CMat w = u.adjoint() * o.matrix * u;
      cplx s = 0;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) s += std::conj(psi(k)) * w(k, l) * psi(l);
      direct += o.xi * s.real();
    }
    EXPECT_NEAR(f_pred(u, psi, obs, 0.4), direct, 1e-12);
    double z = f_pred(u, psi, default_observables(n), 0.0);
    EXPECT_LE(std::abs(z), 1.0 + 1e-12);
  }
}

TEST(Predict, Losses) {
  EXPECT_EQ(loss(LossKind::SquaredError, 1, 1), 0.0);
  EXPECT_EQ(loss(LossKind::SquaredError, 1, -1), 2.0);
  EXPECT_EQ(loss(LossKind::Hinge, 1, 2), 0.0);
  EXPECT_EQ(loss(LossKind::Hinge, 1, 0.5), 0.5);
  EXPECT_NEAR(loss_grad(LossKind::SquaredError, 1, 0.3), -0.7, 1e-15);
  EXPECT_EQ(loss_grad(LossKind::Hinge, 1, 1), 0.0);  // kink
  EXPECT_NEAR(loss(LossKind::CrossEntropy, 1, 0.5), std::log(2.0), 1e-15);
  EXPECT_THROW(loss(LossKind::CrossEntropy, 1, 1.5), numerical_error);
}

TEST(Predict, LossGradMatchesFiniteDifference) {
  Rng rng(22);
  for (int t = 0; t < 200; ++t) {
    double y = t % 2 ? 1.0 : -1.0, z = rng.uniform(-2, 2);
    for (LossKind k : {LossKind::SquaredError, LossKind::Hinge}) {
      if (k == LossKind::Hinge && std::abs(1 - y * z) < 1e-3) continue;
      auto f = [&](const RVec& v) { return loss(k, y, v(0)); };
      EXPECT_NEAR(loss_grad(k, y, z), oracle::central_diff(f, RVec::Constant(1, z), 0), 1e-8);
    }
    double y01 = t % 2, p = rng.uniform(0.05, 0.95);
    auto fx = [&](const RVec& v) { return loss(LossKind::CrossEntropy, y01, v(0)); };
    EXPECT_NEAR(loss_grad(LossKind::CrossEntropy, y01, p), oracle::central_diff(fx, RVec::Constant(1, p), 0), 1e-7);
  }
}

TEST(Predict, CorrespondenceIdentity) {
  Rng rng(23);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    int n = 1 + t % 4, d = 1 << n;
    RVec x(d);
    for (int i = 0; i < d; ++i) x(i) = rng.uniform(-1, 1);
    Observables obs = {{oracle::random_hermitian(d, rng), rng.uniform(-2, 2)}};
    worst = std::max(worst, correspondence_check(oracle::random_unitary(d, rng), obs, amplitude_encode(x)));
  }
  EXPECT_LT(worst, 1e-10);
  // U = I and one-qubit Z: f = |a|^2 - |b|^2
  CVec psi(2);
  psi << 0.6, 0.8;
  EXPECT_LT(correspondence_check(identity(2), default_observables(1), psi), 1e-15);
  EXPECT_NEAR(f_pred(identity(2), psi, default_observables(1), 0), 0.36 - 0.64, 1e-15);
}

TEST(Predict, AccuracyAndTieRule) {
  EXPECT_EQ(accuracy(vec({0.2, -0.3}), vec({1, -1})), 1.0);
  EXPECT_EQ(accuracy(vec({0.2, -0.3}), vec({-1, -1})), 0.5);
  EXPECT_EQ(accuracy(vec({0.0}), vec({1})), 1.0);
  EXPECT_THROW(accuracy(RVec(), RVec()), invalid_input);
}
