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
#include <vqc/predict.hpp>
#include <vqc/rng.hpp>

#include <numbers>
#include <string>
#include <vector>

// Parameter layout. Each layer owns a contiguous block of 3n values
// (6n for CRotBased). Within a block, rotation angles of qubit q sit at
// 3(q-1) + {0: phi, 1: theta, 2: omega}. CRotBased appends 3n entangler
// angles, the triple at 3n + 3(j-1) belonging to Ct_j[R3d_{j+1}].
//
// Layer i applies its entangler first, then R3d on every qubit, and
// layer 1 acts first on the input state.

namespace vqc {

enum class AnsatzKind { CnotBased, CRotBased, Heis1d, HeisFC };

struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::CnotBased;
  int n = 1;
  int layers = 1;
  double dt = 0.1;
};

inline void validate(const AnsatzSpec& s) {
  if (s.n < 1 || s.n > 8) throw invalid_input("ansatz: qubit count must be in [1, 8]");
  if (s.layers < 1) throw invalid_input("ansatz: layer count must be >= 1");
  if ((s.kind == AnsatzKind::Heis1d || s.kind == AnsatzKind::HeisFC) && !(s.dt > 0))
    throw invalid_input("ansatz: dt must be positive");
}

inline int block_size(const AnsatzSpec& s) { return (s.kind == AnsatzKind::CRotBased ? 6 : 3) * s.n; }

inline int param_count(const AnsatzSpec& s) {
  validate(s);
  return s.layers * block_size(s);
}

inline bool is_controlled_param(const AnsatzSpec& s, int j) {
  if (j < 0 || j >= param_count(s)) throw invalid_input("parameter index out of range");
  return s.kind == AnsatzKind::CRotBased && j % block_size(s) >= 3 * s.n;
}

inline RVec random_params(const AnsatzSpec& s, Rng& rng) {
  RVec th(param_count(s));
  for (Eigen::Index j = 0; j < th.size(); ++j) th(j) = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return th;
}

inline std::string to_string(AnsatzKind k) {
  switch (k) {
    case AnsatzKind::CnotBased: return "cnot";
    case AnsatzKind::CRotBased: return "crot";
    case AnsatzKind::Heis1d: return "heis1d";
    case AnsatzKind::HeisFC: return "heisfc";
  }
  return "?";
}

inline AnsatzKind parse_ansatz(const std::string& s) {
  if (s == "cnot") return AnsatzKind::CnotBased;
  if (s == "crot") return AnsatzKind::CRotBased;
  if (s == "heis1d") return AnsatzKind::Heis1d;
  if (s == "heisfc") return AnsatzKind::HeisFC;
  throw invalid_input("unknown ansatz '" + s + "'");
}

// sum_{i<j} J_ij (XX + YY + ZZ); J = 1 on the open chain (1d) or 1/n on
// every pair (FC).
inline CMat heisenberg_hamiltonian(const AnsatzSpec& s) {
  const int n = s.n;
  CMat h = CMat::Zero(Eigen::Index(1) << n, Eigen::Index(1) << n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      double J;
      if (s.kind == AnsatzKind::Heis1d) J = (j == i + 1) ? 1.0 : 0.0;
      else J = 1.0 / n;
      if (J == 0.0) continue;
      for (Axis a : {Axis::X, Axis::Y, Axis::Z})
        h += J * embed1(pauli(a), i, n) * embed1(pauli(a), j, n);
    }
  return h;
}

namespace detail {

inline int ring_next(int j, int n) { return j % n + 1; }

inline void push_rot3d(std::vector<LocalOp>& ops, int c, int q, const RVec& th, int base) {
  const Axis axes[3] = {Axis::Z, Axis::Y, Axis::Z};
  for (int k = 0; k < 3; ++k) {
    LocalOp op = c ? LocalOp::ctrl(c, q, rot2(axes[k], th(base + k)))
                   : LocalOp::single(q, rot2(axes[k], th(base + k)));
    op.param = base + k;
    op.gen = axes[k];
    ops.push_back(op);
  }
}

// Entangler ops for one layer; `base` is the layer's parameter offset.
inline void push_entangler(std::vector<LocalOp>& ops, const AnsatzSpec& s, const RVec& th, int base,
                           const CMat* heis) {
  const int n = s.n;
  if (n == 1) return;  // a one-qubit ring has no partner to entangle with
  switch (s.kind) {
    case AnsatzKind::CnotBased:
      for (int j = 1; j <= n; ++j) ops.push_back(LocalOp::ctrl(j, ring_next(j, n), pauli2(Axis::X)));
      break;
    case AnsatzKind::CRotBased:
      for (int j = 1; j <= n; ++j) push_rot3d(ops, j, ring_next(j, n), th, base + 3 * n + 3 * (j - 1));
      break;
    case AnsatzKind::Heis1d:
    case AnsatzKind::HeisFC: ops.push_back(LocalOp::full(*heis)); break;
  }
}

}  // namespace detail

// The circuit as an ordered gate list, first-applied gate first.
inline std::vector<LocalOp> circuit_ops(const AnsatzSpec& s, const RVec& th) {
  if (th.size() != param_count(s)) throw invalid_input("ansatz: parameter vector length mismatch");
  CMat heis;
  if ((s.kind == AnsatzKind::Heis1d || s.kind == AnsatzKind::HeisFC) && s.n > 1)
    heis = herm_expm(heisenberg_hamiltonian(s), s.dt);
  std::vector<LocalOp> ops;
  const int b = block_size(s);
  for (int l = 0; l < s.layers; ++l) {
    detail::push_entangler(ops, s, th, l * b, &heis);
    for (int q = 1; q <= s.n; ++q) detail::push_rot3d(ops, 0, q, th, l * b + 3 * (q - 1));
  }
  return ops;
}

inline CMat entangler(const AnsatzSpec& s, const RVec& layer_params = RVec()) {
  validate(s);
  RVec th = RVec::Zero(block_size(s));
  if (s.kind == AnsatzKind::CRotBased) {
    if (layer_params.size() != 3 * s.n) throw invalid_input("entangler: expected 3n parameters");
    th.segment(3 * s.n, 3 * s.n) = layer_params;
  } else if (layer_params.size() != 0) {
    throw invalid_input("entangler: this ansatz takes no entangler parameters");
  }
  CMat heis;
  if ((s.kind == AnsatzKind::Heis1d || s.kind == AnsatzKind::HeisFC) && s.n > 1)
    heis = herm_expm(heisenberg_hamiltonian(s), s.dt);
  std::vector<LocalOp> ops;
  detail::push_entangler(ops, s, th, 0, &heis);
  CMat u = identity(Eigen::Index(1) << s.n);
  for (const auto& op : ops) apply_left(op, u, s.n);
  return u;
}

inline CMat ops_unitary(const std::vector<LocalOp>& ops, int n) {
  CMat u = identity(Eigen::Index(1) << n);
  for (const auto& op : ops) apply_left(op, u, n);
  return u;
}

inline CMat build_unitary(const AnsatzSpec& s, const RVec& th) { return ops_unitary(circuit_ops(s, th), s.n); }

inline CVec run_circuit(const std::vector<LocalOp>& ops, const CVec& psi, int n) {
  CVec v = psi;
  for (const auto& op : ops) apply(op, v, n);
  return v;
}

// dU/dtheta_j = (gates after j) K_j G_j (gates before j).
inline CMat unitary_derivative(const AnsatzSpec& s, const RVec& th, int j) {
  if (j < 0 || j >= param_count(s)) throw invalid_input("parameter index out of range");
  auto ops = circuit_ops(s, th);
  CMat u = identity(Eigen::Index(1) << s.n);
  bool hit = false;
  for (const auto& op : ops) {
    apply_left(op, u, s.n);
    if (op.param == j) {
      apply_block_left(op.generator(), u, s.n);
      hit = true;
    }
  }
  if (!hit) u.setZero();  // e.g. entangler angles when n = 1
  return u;
}

enum class GradMethod { Adjoint, Shift };

// Gradient of sum_j xi_j <psi| U^H O_j U |psi> from a precompiled circuit,
// using one backward sweep: with phi the state after gate k and
// lam = (gates after k)^H O U psi, d<O>/dtheta = 2 Re <lam| K_k |phi>.
inline RVec expectation_gradient_ops(const std::vector<LocalOp>& ops, int n, int nparams, const CVec& psi,
                                     const CMat& o_eff, double* value = nullptr) {
  CVec phi = run_circuit(ops, psi, n);
  CVec lam = o_eff * phi;
  if (value) *value = phi.dot(lam).real();
  RVec g = RVec::Zero(nparams);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (it->param >= 0) g(it->param) += 2.0 * braket(lam, it->generator(), phi, n).real();
    LocalOp inv = it->adjoint();
    apply(inv, phi, n);
    apply(inv, lam, n);
  }
  return g;
}

inline RVec expectation_gradient(const AnsatzSpec& s, const RVec& th, const CVec& psi, const Observables& obs,
                                 GradMethod method = GradMethod::Adjoint) {
  const CMat o = weighted_observable(obs);
  if (psi.size() != (Eigen::Index(1) << s.n) || o.rows() != psi.size())
    throw invalid_input("expectation_gradient: dimension mismatch");
  if (method == GradMethod::Adjoint) return expectation_gradient_ops(circuit_ops(s, th), s.n, int(th.size()), psi, o);

  // Two-term shift for plain rotations; the controlled ones fall back to
  // the product-rule derivative since P1 sigma has three eigenvalues.
  RVec g(th.size());
  const CMat u = build_unitary(s, th);
  for (int j = 0; j < th.size(); ++j) {
    if (is_controlled_param(s, j)) {
      CVec a = u * psi, b = unitary_derivative(s, th, j) * psi;
      g(j) = 2.0 * a.dot(o * b).real();
    } else {
      RVec tp = th, tm = th;
      tp(j) += std::numbers::pi / 2;
      tm(j) -= std::numbers::pi / 2;
      g(j) = 0.5 * (sandwich(build_unitary(s, tp), o, psi) - sandwich(build_unitary(s, tm), o, psi));
    }
  }
  return g;
}

}  // namespace vqc
