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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace vqc {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Raised for rejected inputs (bad shapes, non-Hermitian operators, ...).
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a numerical routine cannot deliver its postcondition.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double svd_reconstruction = 1e-10;
inline constexpr double hermitian = 1e-10;
inline constexpr double unit_norm = 1e-10;
inline constexpr double imag_residue = 1e-12;
inline constexpr double unitary_load = 1e-8;
inline constexpr double sy_guard = 1e-12;
}  // namespace tol

inline CMat identity(Eigen::Index dim) { return CMat::Identity(dim, dim); }

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline double frobenius_norm(const CMat& a) { return a.norm(); }

inline bool is_real(const CMat& a) { return a.imag().cwiseAbs().maxCoeff() == 0.0; }

// ||U^H U - I||_F
inline double unitarity_defect(const CMat& u) {
  return (u.adjoint() * u - identity(u.cols())).norm();
}

inline double hermiticity_defect(const CMat& h) { return (h - h.adjoint()).norm(); }

struct SvdResult {
  CMat k1;
  RVec sigma;  // descending, >= 0
  CMat k2dag;
};

// Full SVD of a square matrix. Real input goes through the real solver so
// real-mode callers get real factors back.
inline SvdResult svd(const CMat& a) {
  if (a.rows() != a.cols()) throw invalid_input("svd: matrix must be square");
  if (!a.allFinite()) throw invalid_input("svd: non-finite entries");
  SvdResult r;
  if (is_real(a)) {
    Eigen::JacobiSVD<RMat> s(a.real(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    r.k1 = s.matrixU().cast<cplx>();
    r.sigma = s.singularValues();
    r.k2dag = s.matrixV().transpose().cast<cplx>();
  } else {
    Eigen::JacobiSVD<CMat> s(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    r.k1 = s.matrixU();
    r.sigma = s.singularValues();
    r.k2dag = s.matrixV().adjoint();
  }
  double scale = std::max(1.0, a.norm());
  double resid = (r.k1 * r.sigma.cast<cplx>().asDiagonal() * r.k2dag - a).norm();
  if (!(resid <= tol::svd_reconstruction * scale)) {
    std::ostringstream os;
    os << "svd: reconstruction residual " << resid << " exceeds tolerance";
    throw numerical_error(os.str());
  }
  return r;
}

// exp(-i t H) for Hermitian H, through its eigendecomposition.
inline CMat herm_expm(const CMat& h, double t) {
  if (h.rows() != h.cols()) throw invalid_input("herm_expm: matrix must be square");
  if (hermiticity_defect(h) > tol::hermitian)
    throw invalid_input("herm_expm: matrix is not Hermitian");
  CMat hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(hs);
  if (es.info() != Eigen::Success) throw numerical_error("herm_expm: eigensolver failed");
  CVec ph(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < ph.size(); ++k)
    ph(k) = std::exp(cplx(0.0, -t * es.eigenvalues()(k)));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

inline double expectation(const CMat& o, const CVec& psi) {
  if (o.rows() != o.cols() || o.cols() != psi.size())
    throw invalid_input("expectation: dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > tol::unit_norm)
    throw invalid_input("expectation: state is not normalized");
  cplx v = psi.dot(o * psi);  // dot conjugates the left operand
  double scale = std::max(1.0, o.norm());
  if (std::abs(v.imag()) > tol::imag_residue * scale)
    throw numerical_error("expectation: operator is not Hermitian");
  return v.real();
}

}  // namespace vqc
