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

#pragma once

#include <vqc/gates.hpp>

#include <vector>

namespace vqc {

struct Observable {
  CMat matrix;
  double xi = 1.0;
};
using Observables = std::vector<Observable>;

// Z on qubit 1 with unit weight.
inline Observables default_observables(int n) { return {{embed1(pauli(Axis::Z), 1, n), 1.0}}; }

// sum_j xi_j O_j
inline CMat weighted_observable(const Observables& obs) {
  if (obs.empty()) throw invalid_input("observable list is empty");
  CMat o = obs[0].xi * obs[0].matrix;
  for (std::size_t j = 1; j < obs.size(); ++j) {
    if (obs[j].matrix.rows() != o.rows()) throw invalid_input("observable dimension mismatch");
    o += obs[j].xi * obs[j].matrix;
  }
  if (hermiticity_defect(o) > tol::hermitian) throw invalid_input("observable is not Hermitian");
  return o;
}

// Re <psi| M^H O M |psi> for a (possibly non-unitary) operator M.
inline double sandwich(const CMat& m, const CMat& o, const CVec& psi) {
  CVec v = m * psi;
  return v.dot(o * v).real();
}

inline double f_pred(const CMat& u, const CVec& psi, const Observables& obs, double theta_b) {
  if (u.cols() != psi.size() || u.rows() != u.cols())
    throw invalid_input("f_pred: dimension mismatch");
  double f = theta_b;
  for (const auto& o : obs) {
    if (o.matrix.rows() != u.rows()) throw invalid_input("f_pred: observable dimension mismatch");
    f += o.xi * sandwich(u, o.matrix, psi);
  }
  return f;
}

enum class LossKind { SquaredError, Hinge, CrossEntropy };

// SE and hinge take y in {-1, +1}; cross-entropy takes y in {0, 1} and z in (0, 1).
inline double loss(LossKind k, double y, double z) {
  switch (k) {
    case LossKind::SquaredError: return 0.5 * (y - z) * (y - z);
    case LossKind::Hinge: return std::max(0.0, 1.0 - y * z);
    case LossKind::CrossEntropy:
      if (!(z > 0.0 && z < 1.0)) throw numerical_error("cross-entropy: prediction outside (0,1)");
      return -y * std::log(z) - (1.0 - y) * std::log(1.0 - z);
  }
  return 0.0;
}

inline double loss_grad(LossKind k, double y, double z) {
  switch (k) {
    case LossKind::SquaredError: return -(y - z);
    case LossKind::Hinge: return 1.0 - y * z > 0.0 ? -y : 0.0;
    case LossKind::CrossEntropy:
      if (!(z > 0.0 && z < 1.0)) throw numerical_error("cross-entropy: prediction outside (0,1)");
      return -y / z + (1.0 - y) / (1.0 - z);
  }
  return 0.0;
}

// Label as the loss expects it: cross-entropy uses {0, 1}.
inline double loss_label(LossKind k, double y_pm) {
  return k == LossKind::CrossEntropy ? (y_pm > 0 ? 1.0 : 0.0) : y_pm;
}

// Distance between f_pred and the kernel form sum_kl w_kl conj(psi_k) psi_l
// with w = sum_j xi_j U^H O_j U.
inline double correspondence_check(const CMat& u, const Observables& obs, const CVec& psi) {
  double f = f_pred(u, psi, obs, 0.0);
  CMat w = CMat::Zero(u.rows(), u.cols());
  for (const auto& o : obs) w += o.xi * (u.adjoint() * o.matrix * u);
  cplx s = 0;
  for (Eigen::Index k = 0; k < w.rows(); ++k)
    for (Eigen::Index l = 0; l < w.cols(); ++l) s += w(k, l) * std::conj(psi(k)) * psi(l);
  return std::abs(f - s);
}

inline double sign_label(double z) { return z >= 0.0 ? 1.0 : -1.0; }

inline double accuracy(const RVec& z, const RVec& y) {
  if (z.size() != y.size()) throw invalid_input("accuracy: length mismatch");
  if (z.size() == 0) throw invalid_input("accuracy: empty input");
  Eigen::Index hit = 0;
  for (Eigen::Index i = 0; i < z.size(); ++i) hit += sign_label(z(i)) == y(i);
  return double(hit) / double(z.size());
}

}  // namespace vqc
