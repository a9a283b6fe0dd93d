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

#include <vqc/qcl.hpp>

#include "oracles.hpp"

using namespace vqc;

namespace {

EncodedSet random_set(int n, int N, Rng& rng) {
  EncodedSet d;
  d.n = n;
  d.y.resize(N);
  for (int i = 0; i < N; ++i) {
    RVec x(1 << n);
    for (int k = 0; k < x.size(); ++k) x(k) = rng.uniform(-1, 1);
    d.psi.push_back(amplitude_encode(x));
    d.y(i) = x(0) > 0 ? 1.0 : -1.0;
  }
  return d;
}

}  // namespace

TEST(Qcl, ZeroIterationsKeepsInitialization) {
  Rng rng(40);
  EncodedSet d = random_set(2, 12, rng);
  AnsatzSpec s{AnsatzKind::CnotBased, 2, 2};
  SgdCfg cfg;
  cfg.iters = 0;
  cfg.seed = 5;
  QclFit fit = qcl_fit(d, s, LossKind::SquaredError, cfg, false);
  Rng init(derive_seed(5, 0));
  EXPECT_EQ(fit.model.theta, random_params(s, init));
  EXPECT_EQ(fit.train_acc.size(), 1u);
  EXPECT_EQ(fit.best_iter, 0);
}

TEST(Qcl, PredictionAtZeroAnglesIsOnePlusBias) {
  QclModel m{{AnsatzKind::CRotBased, 3, 2}, RVec::Zero(36), 0.25, true, default_observables(3)};
  CVec psi = CVec::Zero(8);
  psi(0) = 1;
  EXPECT_NEAR(qcl_predict(m, psi), 1.25, 1e-14);
}

TEST(Qcl, PredictPathsAgree) {
  Rng rng(41);
  for (AnsatzKind k : {AnsatzKind::CnotBased, AnsatzKind::CRotBased, AnsatzKind::Heis1d, AnsatzKind::HeisFC}) {
    AnsatzSpec s{k, 3, 3, 0.1};
    QclModel m{s, random_params(s, rng), rng.uniform(-1, 1), true, default_observables(3)};
    EncodedSet d = random_set(3, 10, rng);
    RVec z = qcl_predict_all(m, d);
    CMat u = build_unitary(s, m.theta);
    for (std::size_t i = 0; i < d.size(); ++i) {
      EXPECT_NEAR(z(i), f_pred(u, d.psi[i], m.obs, m.theta_b), 1e-12);
      EXPECT_LE(std::abs(z(i) - m.theta_b), 1.0 + 1e-12);
    }
  }
}

TEST(Qcl, BatchGradientMatchesFiniteDifference) {
  Rng rng(42);
  for (LossKind lk : {LossKind::SquaredError, LossKind::Hinge}) {
    AnsatzSpec s{AnsatzKind::CRotBased, 2, 2};
    EncodedSet d = random_set(2, 9, rng);
    QclModel m{s, random_params(s, rng), 0.1, true, default_observables(2)};
    std::vector<std::size_t> batch{0, 2, 3, 5, 8};
    RVec g = qcl_batch_gradient(m, d, batch, lk);
    auto J = [&](const RVec& v) {
      QclModel mm = m;
      mm.theta = v.head(m.theta.size());
      mm.theta_b = v(v.size() - 1);
      RVec z = qcl_predict_all(mm, d);
      double s = 0;
      for (auto i : batch) s += loss(lk, d.y(i), z(i));
      return s / batch.size();
    };
    RVec v(m.theta.size() + 1);
    v << m.theta, m.theta_b;
    for (int j = 0; j < v.size(); ++j) EXPECT_NEAR(g(j), oracle::central_diff(J, v, j), 1e-7);
  }
}

TEST(Qcl, FullBatchSmallStepDecreasesLoss) {
  EncodedSet d;
  d.n = 1;
  CVec a = CVec::Zero(2), b = CVec::Zero(2);
  a(0) = 1;
  b(1) = 1;
  d.psi = {a, b};
  d.y.resize(2);
  d.y << 1, -1;
  SgdCfg cfg;
  cfg.batch = 2;
  cfg.eta = 0.05;
  cfg.iters = 10;
  cfg.seed = 3;
  QclFit fit = qcl_fit(d, {AnsatzKind::CnotBased, 1, 2}, LossKind::SquaredError, cfg, false);
  for (int k = 1; k <= 10; ++k) EXPECT_LT(fit.train_loss[k], fit.train_loss[k - 1]);
}

TEST(Qcl, ReproducibleAndSnapshotIsBest) {
  Rng rng(43);
  EncodedSet d = random_set(2, 40, rng);
  SgdCfg cfg;
  cfg.iters = 40;
  cfg.seed = 11;
  AnsatzSpec s{AnsatzKind::CnotBased, 2, 3};
  QclFit f1 = qcl_fit(d, s, LossKind::SquaredError, cfg, true);
  QclFit f2 = qcl_fit(d, s, LossKind::SquaredError, cfg, true);
  EXPECT_EQ(f1.model.theta, f2.model.theta);
  EXPECT_EQ(f1.model.theta_b, f2.model.theta_b);
  EXPECT_EQ(f1.train_acc, f2.train_acc);
  double best = f1.train_acc[f1.best_iter];
  for (double a : f1.train_acc) EXPECT_GE(best, a);
  EXPECT_EQ(accuracy(qcl_predict_all(f1.model, d), d.y), best);
}

TEST(Qcl, NoBiasKeepsBiasAtZero) {
  Rng rng(44);
  EncodedSet d = random_set(2, 10, rng);
  SgdCfg cfg;
  cfg.iters = 5;
  QclFit fit = qcl_fit(d, {AnsatzKind::CnotBased, 2, 1}, LossKind::SquaredError, cfg, false);
  EXPECT_EQ(fit.model.theta_b, 0.0);
}

TEST(Qcl, RejectsBadInput) {
  EncodedSet d;
  d.n = 1;
  EXPECT_THROW(qcl_fit(d, {AnsatzKind::CnotBased, 1, 1}, LossKind::SquaredError, {}, false), invalid_input);
  d.psi = {CVec::Ones(2) / std::sqrt(2.0)};
  d.y = RVec::Constant(1, 0.0);
  EXPECT_THROW(qcl_fit(d, {AnsatzKind::CnotBased, 1, 1}, LossKind::SquaredError, {}, false), invalid_input);
}
