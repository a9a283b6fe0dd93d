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

#include <vqc/ansatz.hpp>

#include "oracles.hpp"

using namespace vqc;

namespace {
const double pi = std::numbers::pi;
const AnsatzKind kAllKinds[] = {AnsatzKind::CnotBased, AnsatzKind::CRotBased, AnsatzKind::Heis1d, AnsatzKind::HeisFC};

// Dense reference assembly straight from kron/controlled and a Taylor expm.
CMat reference_unitary(const AnsatzSpec& s, const RVec& th) {
  const int n = s.n, b = block_size(s);
  const int dim = 1 << n;
  CMat heis = CMat::Zero(dim, dim);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      double J = s.kind == AnsatzKind::HeisFC ? 1.0 / n : (j == i + 1 ? 1.0 : 0.0);
      for (Axis a : {Axis::X, Axis::Y, Axis::Z}) heis += J * embed1(pauli(a), i, n) * embed1(pauli(a), j, n);
    }
  CMat heis_u = oracle::expm_taylor(cplx(0, -s.dt) * heis);
  CMat u = identity(dim);
  for (int l = 0; l < s.layers; ++l) {
    CMat ent = identity(dim);
    if (n > 1) {
      if (s.kind == AnsatzKind::CnotBased)
        for (int j = 1; j <= n; ++j) ent = controlled(j, j % n + 1, pauli(Axis::X), n) * ent;
      if (s.kind == AnsatzKind::CRotBased)
        for (int j = 1; j <= n; ++j) {
          int p = l * b + 3 * n + 3 * (j - 1);
          ent = controlled(j, j % n + 1, rot3d(th(p), th(p + 1), th(p + 2)), n) * ent;
        }
      if (s.kind == AnsatzKind::Heis1d || s.kind == AnsatzKind::HeisFC) ent = heis_u;
    }
    CMat rots = identity(1);
    for (int q = 1; q <= n; ++q) {
      int p = l * b + 3 * (q - 1);
      rots = kron(rots, rot3d(th(p), th(p + 1), th(p + 2)));
    }
    u = rots * ent * u;
  }
  return u;
}

RVec random_theta(const AnsatzSpec& s, Rng& rng) { return random_params(s, rng); }
}  // namespace

TEST(Ansatz, ParamCount) {
  EXPECT_EQ(param_count({AnsatzKind::CnotBased, 2, 5}), 30);
  EXPECT_EQ(param_count({AnsatzKind::CRotBased, 4, 5}), 120);
  EXPECT_EQ(param_count({AnsatzKind::Heis1d, 6, 5}), 90);
  EXPECT_THROW(param_count({AnsatzKind::CnotBased, 2, 0}), invalid_input);
}

TEST(Ansatz, CnotRingTwoQubits) {
  CMat c12(4, 4), c21(4, 4);
  c12 << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
  c21 << 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0;
  // Ct1[X2] acts first
  EXPECT_LT((entangler({AnsatzKind::CnotBased, 2, 1}) - c21 * c12).norm(), 1e-15);
}

TEST(Ansatz, CRotEntanglerAtZeroIsIdentity) {
  AnsatzSpec s{AnsatzKind::CRotBased, 3, 1};
  EXPECT_LT((entangler(s, RVec::Zero(9)) - identity(8)).norm(), 1e-15);
  EXPECT_THROW(entangler(s, RVec::Zero(4)), invalid_input);
  EXPECT_LT((build_unitary({AnsatzKind::CRotBased, 3, 2}, RVec::Zero(36)) - identity(8)).norm(), 1e-14);
}

TEST(Ansatz, HeisenbergEntanglerConservesTotalZ) {
  for (AnsatzKind k : {AnsatzKind::Heis1d, AnsatzKind::HeisFC}) {
    for (int n : {2, 3}) {
      CMat u = entangler({k, n, 1, 0.1});
      CMat sz = CMat::Zero(1 << n, 1 << n);
      for (int q = 1; q <= n; ++q) sz += embed1(pauli(Axis::Z), q, n);
      EXPECT_LT(unitarity_defect(u), 1e-12);
      EXPECT_LT((u * sz - sz * u).norm(), 1e-12);
    }
  }
}

TEST(Ansatz, SingleQubitRingIsIdentity) {
  RVec th(3);
  th << 0.3, 0.5, 0.7;
  EXPECT_LT((build_unitary({AnsatzKind::CnotBased, 1, 1}, th) - rot3d(0.3, 0.5, 0.7)).norm(), 1e-15);
}

TEST(Ansatz, MatchesDenseReference) {
  Rng rng(10);
  for (AnsatzKind k : kAllKinds)
    for (int n : {1, 2, 3})
      for (int L : {1, 3}) {
        AnsatzSpec s{k, n, L, 0.1};
        RVec th = random_theta(s, rng);
        EXPECT_LT((build_unitary(s, th) - reference_unitary(s, th)).norm(), 1e-11) << to_string(k) << " n=" << n;
      }
}

TEST(Ansatz, UnitaryForRandomParameters) {
  Rng rng(11);
  for (AnsatzKind k : kAllKinds) {
    AnsatzSpec s{k, 3, 4, 0.1};
    for (int t = 0; t < 100; ++t) EXPECT_LT(unitarity_defect(build_unitary(s, random_theta(s, rng))), 1e-10);
  }
}

TEST(Ansatz, DerivativeMatchesFiniteDifference) {
  Rng rng(12);
  for (AnsatzKind k : kAllKinds) {
    AnsatzSpec s{k, 3, 2, 0.1};
    RVec th = random_theta(s, rng);
    auto u_of = [&](const RVec& x) { return build_unitary(s, x); };
    for (int j = 0; j < th.size(); ++j) {
      CMat fd = oracle::central_diff_mat(u_of, th, j);
      CMat an = unitary_derivative(s, th, j);
      EXPECT_LT((an - fd).norm() / std::max(1.0, an.norm()), 1e-6) << to_string(k) << " j=" << j;
    }
  }
}

TEST(Ansatz, DerivativeSingleQubitClosedForm) {
  AnsatzSpec s{AnsatzKind::CnotBased, 1, 1};
  RVec th(3);
  th << 0.3, 0.5, 0.7;
  const cplx mi2(0, -0.5);
  CMat z = pauli(Axis::Z);
  // phi enters first: Rz(w) Ry(t) (-i/2 Z) Rz(phi)
  EXPECT_LT((unitary_derivative(s, th, 0) - rot(Axis::Z, 0.7) * rot(Axis::Y, 0.5) * (mi2 * z) * rot(Axis::Z, 0.3)).norm(), 1e-14);
  EXPECT_LT((unitary_derivative(s, th, 2) - mi2 * z * rot3d(0.3, 0.5, 0.7)).norm(), 1e-14);
}

TEST(Ansatz, ControlledAngleDerivativeAtZero) {
  AnsatzSpec s{AnsatzKind::CRotBased, 2, 1};
  // first entangler angle: Rz(phi) inside Ct1[R3d_2]
  CMat expect = cplx(0, -0.5) * projector(1, 1, 2) * embed1(pauli(Axis::Z), 2, 2);
  EXPECT_LT((unitary_derivative(s, RVec::Zero(12), 6) - expect).norm(), 1e-15);
  CMat expect_y = cplx(0, -0.5) * projector(1, 2, 2) * embed1(pauli(Axis::Y), 1, 2);
  EXPECT_LT((unitary_derivative(s, RVec::Zero(12), 10) - expect_y).norm(), 1e-15);
}

TEST(ExpectationGradient, RxClosedForm) {
  // R3d(pi/2, t, -pi/2) = Rx(t)
  AnsatzSpec s{AnsatzKind::CnotBased, 1, 1};
  RVec th(3);
  th << pi / 2, pi / 4, -pi / 2;
  EXPECT_LT((build_unitary(s, th) - rot(Axis::X, pi / 4)).norm(), 1e-14);
  CVec zero = CVec::Zero(2);
  zero(0) = 1;
  Observables z = {{pauli(Axis::Z), 1.0}};
  for (GradMethod m : {GradMethod::Adjoint, GradMethod::Shift})
    EXPECT_NEAR(expectation_gradient(s, th, zero, z, m)(1), -std::sqrt(2.0) / 2, 1e-14);
}

TEST(ExpectationGradient, IdentityObservableGivesZero) {
  Rng rng(13);
  AnsatzSpec s{AnsatzKind::CRotBased, 2, 2};
  RVec g = expectation_gradient(s, random_theta(s, rng), oracle::random_state(4, rng), {{identity(4), 1.0}});
  EXPECT_LT(g.norm(), 1e-13);
}

TEST(ExpectationGradient, ShiftAdjointAndFiniteDifferenceAgree) {
  Rng rng(14);
  for (AnsatzKind k : kAllKinds) {
    double max_shift = 0, max_fd = 0;
    for (int t = 0; t < 25; ++t) {
      AnsatzSpec s{k, 1 + int(rng.below(3)), 1 + int(rng.below(3)), 0.1};
      RVec th = random_theta(s, rng);
      CVec psi = oracle::random_state(1 << s.n, rng);
      Observables obs = {{oracle::random_hermitian(1 << s.n, rng), 1.0}};
      RVec ga = expectation_gradient(s, th, psi, obs, GradMethod::Adjoint);
      RVec gs = expectation_gradient(s, th, psi, obs, GradMethod::Shift);
      auto f = [&](const RVec& x) { return f_pred(build_unitary(s, x), psi, obs, 0.0); };
      for (int j = 0; j < th.size(); ++j) {
        max_shift = std::max(max_shift, oracle::rel_err(ga(j), gs(j), 1e-3));
        max_fd = std::max(max_fd, oracle::rel_err(ga(j), oracle::central_diff(f, th, j), 1e-3));
      }
    }
    EXPECT_LT(max_shift, 1e-9) << to_string(k);
    EXPECT_LT(max_fd, 1e-5) << to_string(k);
  }
}
