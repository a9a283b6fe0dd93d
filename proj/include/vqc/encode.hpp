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

#include <vector>

namespace vqc {

inline int qubits_for(Eigen::Index m) {
  if (m < 1) throw invalid_input("qubits_for: dimension must be positive");
  int n = 0;
  while ((Eigen::Index(1) << n) < m) ++n;
  return std::max(n, 1);
}

// x / ||x|| zero-padded to 2^n amplitudes.
inline CVec amplitude_encode(const RVec& x) {
  if (!x.allFinite()) throw invalid_input("amplitude_encode: non-finite feature");
  double nrm = x.norm();
  if (nrm == 0.0) throw invalid_input("amplitude_encode: all-zero feature vector");
  CVec psi = CVec::Zero(Eigen::Index(1) << qubits_for(x.size()));
  psi.head(x.size()) = (x / nrm).cast<cplx>();
  return psi;
}

struct EncodedSet {
  int n = 0;
  std::vector<CVec> psi;
  RVec y;  // +-1
  std::size_t size() const { return psi.size(); }
};

// Rows of x are samples; qubit count is fixed by the full feature width so
// train/test subsets agree.
inline EncodedSet encode_rows(const RMat& x, const RVec& y) {
  if (x.rows() != y.size()) throw invalid_input("encode_rows: row/label count mismatch");
  EncodedSet e;
  e.n = qubits_for(x.cols());
  e.y = y;
  e.psi.reserve(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) e.psi.push_back(amplitude_encode(x.row(i).transpose()));
  return e;
}

}  // namespace vqc
