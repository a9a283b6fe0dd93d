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

#include <vqc/qmat.hpp>

#include <numbers>

// Qubit q (1-based) is bit (n - q) of the basis index, so qubit 1 is the
// most significant bit and kron(A, B) puts A on qubit 1.

namespace vqc {

enum class Axis { X, Y, Z };

using Mat2 = Eigen::Matrix2cd;

inline Mat2 pauli2(Axis a) {
  const cplx i(0.0, 1.0);
  Mat2 m;
  switch (a) {
    case Axis::X: m << 0, 1, 1, 0; break;
    case Axis::Y: m << 0, -i, i, 0; break;
    case Axis::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

// exp(-i phi/2 sigma)
inline Mat2 rot2(Axis a, double phi) {
  double c = std::cos(phi / 2), s = std::sin(phi / 2);
  Mat2 m;
  switch (a) {
    case Axis::X: m << c, cplx(0, -s), cplx(0, -s), c; break;
    case Axis::Y: m << c, -s, s, c; break;
    case Axis::Z: m << std::polar(1.0, -phi / 2), 0, 0, std::polar(1.0, phi / 2); break;
  }
  return m;
}

// Rz(omega) Ry(theta) Rz(phi): phi acts first.
inline Mat2 rot3d2(double phi, double theta, double omega) {
  return rot2(Axis::Z, omega) * rot2(Axis::Y, theta) * rot2(Axis::Z, phi);
}

inline CMat pauli(Axis a) { return pauli2(a); }
inline CMat rot(Axis a, double phi) { return rot2(a, phi); }
inline CMat rot3d(double phi, double theta, double omega) { return rot3d2(phi, theta, omega); }

inline CMat global_phase(double lambda, int n) {
  return std::polar(1.0, -lambda) * identity(Eigen::Index(1) << n);
}

inline void check_qubit(int q, int n) {
  if (n < 1 || q < 1 || q > n) throw invalid_input("qubit index out of range");
}

inline CMat embed1(const CMat& g, int q, int n) {
  check_qubit(q, n);
  if (g.rows() != 2 || g.cols() != 2) throw invalid_input("embed1: gate must be 2x2");
  CMat out = identity(1);
  for (int k = 1; k <= n; ++k) out = kron(out, k == q ? g : identity(2));
  return out;
}

inline CMat projector(int bit, int q, int n) {
  CMat p = CMat::Zero(2, 2);
  p(bit, bit) = 1.0;
  return embed1(p, q, n);
}

// P0_c + P1_c g_t
inline CMat controlled(int c, int t, const CMat& g, int n) {
  check_qubit(c, n);
  check_qubit(t, n);
  if (c == t) throw invalid_input("controlled: control equals target");
  return projector(0, c, n) + projector(1, c, n) * embed1(g, t, n);
}

// A gate acting on a few qubits, applied without forming the 2^n operator.
// Single: g on qubit q. Controlled: g on q when qubit c is 1. Dense: full op.
struct LocalOp {
  enum class Kind { Single, Controlled, Dense };
  Kind kind = Kind::Single;
  int q = 1;
  int c = 0;
  Mat2 g = Mat2::Identity();
  CMat dense;
  // Parameter index this gate depends on, or -1. Parameterized gates are
  // exp(-i phi/2 sigma_gen) (optionally controlled), so dG/dphi = K G with
  // K = -(i/2) sigma_gen on the same support.
  int param = -1;
  Axis gen = Axis::Z;

  static LocalOp single(int q, const Mat2& g) {
    LocalOp op;
    op.q = q;
    op.g = g;
    return op;
  }
  static LocalOp ctrl(int c, int q, const Mat2& g) {
    LocalOp op;
    op.kind = Kind::Controlled;
    op.c = c;
    op.q = q;
    op.g = g;
    return op;
  }
  static LocalOp full(CMat m) {
    LocalOp op;
    op.kind = Kind::Dense;
    op.dense = std::move(m);
    return op;
  }

  LocalOp adjoint() const {
    LocalOp a = *this;
    a.g = g.adjoint();
    if (kind == Kind::Dense) a.dense = dense.adjoint();
    return a;
  }

  // The generator K as an op on the same support (Dense ops have none).
  LocalOp generator() const {
    LocalOp k = *this;
    k.g = cplx(0.0, -0.5) * pauli2(gen);
    return k;
  }

  CMat to_dense(int n) const {
    switch (kind) {
      case Kind::Single: return embed1(g, q, n);
      case Kind::Controlled: return controlled(c, q, g, n);
      case Kind::Dense: return dense;
    }
    return {};
  }
};

namespace detail {

inline Eigen::Index bit_of(int q, int n) { return Eigen::Index(1) << (n - q); }

// Calls f(i0, i1) for each basis pair differing only in the target bit and
// passing the control condition.
template <class F>
inline void for_pairs(const LocalOp& op, int n, F&& f) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  const Eigen::Index s = bit_of(op.q, n);
  const Eigen::Index cm = op.kind == LocalOp::Kind::Controlled ? bit_of(op.c, n) : 0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i & s) continue;
    if (cm && !(i & cm)) continue;
    f(i, i | s);
  }
}

}  // namespace detail

// v <- G v
inline void apply(const LocalOp& op, CVec& v, int n) {
  if (op.kind == LocalOp::Kind::Dense) {
    v = op.dense * v;
    return;
  }
  const Mat2& g = op.g;
  detail::for_pairs(op, n, [&](Eigen::Index i0, Eigen::Index i1) {
    cplx a = v(i0), b = v(i1);
    v(i0) = g(0, 0) * a + g(0, 1) * b;
    v(i1) = g(1, 0) * a + g(1, 1) * b;
  });
}

// M <- G M
inline void apply_left(const LocalOp& op, CMat& m, int n) {
  if (op.kind == LocalOp::Kind::Dense) {
    m = op.dense * m;
    return;
  }
  const Mat2& g = op.g;
  detail::for_pairs(op, n, [&](Eigen::Index i0, Eigen::Index i1) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      cplx a = m(i0, j), b = m(i1, j);
      m(i0, j) = g(0, 0) * a + g(0, 1) * b;
      m(i1, j) = g(1, 0) * a + g(1, 1) * b;
    }
  });
}

// M <- A M with A as in trace_with: rows outside the control-1 block are
// zeroed for controlled ops.
inline void apply_block_left(const LocalOp& op, CMat& m, int n) {
  apply_left(op, m, n);
  if (op.kind != LocalOp::Kind::Controlled) return;
  const Eigen::Index cm = detail::bit_of(op.c, n);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (!(i & cm)) m.row(i).setZero();
}

// M <- M G
inline void apply_right(const LocalOp& op, CMat& m, int n) {
  if (op.kind == LocalOp::Kind::Dense) {
    m = m * op.dense;
    return;
  }
  const Mat2& g = op.g;
  detail::for_pairs(op, n, [&](Eigen::Index i0, Eigen::Index i1) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      cplx a = m(r, i0), b = m(r, i1);
      m(r, i0) = a * g(0, 0) + b * g(1, 0);
      m(r, i1) = a * g(0, 1) + b * g(1, 1);
    }
  });
}

// Tr[A M] for a non-dense op, where A = g_q, or P1_c g_q for controlled ops
// (only the control-1 block counts, which is what generators need).
inline cplx trace_with(const LocalOp& op, const CMat& m, int n) {
  const Mat2& g = op.g;
  cplx t = 0;
  detail::for_pairs(op, n, [&](Eigen::Index i0, Eigen::Index i1) {
    t += g(0, 0) * m(i0, i0) + g(0, 1) * m(i1, i0) + g(1, 0) * m(i0, i1) + g(1, 1) * m(i1, i1);
  });
  return t;
}

// <a| A |b> with A as in trace_with.
inline cplx braket(const CVec& a, const LocalOp& op, const CVec& b, int n) {
  const Mat2& g = op.g;
  cplx t = 0;
  detail::for_pairs(op, n, [&](Eigen::Index i0, Eigen::Index i1) {
    t += std::conj(a(i0)) * (g(0, 0) * b(i0) + g(0, 1) * b(i1)) +
         std::conj(a(i1)) * (g(1, 0) * b(i0) + g(1, 1) * b(i1));
  });
  return t;
}

}  // namespace vqc
