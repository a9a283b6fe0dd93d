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

#include <string>

namespace vqc {

enum class FeatureKind { Linear, Poly2 };

struct FeatureMap {
  FeatureKind kind = FeatureKind::Linear;
  bool normalize = false;
  bool bias = false;  // append a constant 1
};

inline Eigen::Index feature_dim(const FeatureMap& fm, Eigen::Index m) {
  Eigen::Index k = fm.kind == FeatureKind::Linear ? m : m + m * (m + 1) / 2;
  return k + (fm.bias ? 1 : 0);
}

inline RVec feature_map(const FeatureMap& fm, const RVec& x_in) {
  if (!x_in.allFinite()) throw invalid_input("feature_map: non-finite input");
  RVec x = x_in;
  if (fm.normalize) {
    double nrm = x.norm();
    if (nrm == 0.0) throw invalid_input("feature_map: cannot normalize a zero vector");
    x /= nrm;
  }
  const Eigen::Index m = x.size();
  RVec phi(feature_dim(fm, m));
  phi.head(m) = x;
  Eigen::Index p = m;
  if (fm.kind == FeatureKind::Poly2)
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = i; j < m; ++j) phi(p++) = x(i) * x(j);
  if (fm.bias) phi(p) = 1.0;
  return phi;
}

inline RMat feature_rows(const FeatureMap& fm, const RMat& x) {
  RMat phi(x.rows(), feature_dim(fm, x.cols()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) phi.row(i) = feature_map(fm, x.row(i).transpose()).transpose();
  return phi;
}

// Mean: loss averaged over samples, giving lambda N on the diagonal.
// Sum: summed loss, lambda alone (the convention behind the published tables).
enum class RidgeScale { Mean, Sum };

struct KernelModel {
  FeatureMap map;
  double lambda = 0.0;
  RidgeScale scale = RidgeScale::Mean;
  RVec a;
  RMat phi;  // training features, one row per sample
  Eigen::Index input_dim = 0;
};

// Dual ridge solution of (K + lambda N I) a = y with K = Phi Phi^T
// (N dropped under RidgeScale::Sum).
inline KernelModel kernel_fit(const RMat& x, const RVec& y, const FeatureMap& fm, double lambda,
                              RidgeScale scale = RidgeScale::Mean) {
  if (x.rows() < 1 || x.rows() != y.size()) throw invalid_input("kernel_fit: need N >= 1 rows matching labels");
  if (!(lambda > 0)) throw invalid_input("kernel_fit: lambda must be positive");
  KernelModel m;
  m.map = fm;
  m.lambda = lambda;
  m.scale = scale;
  m.input_dim = x.cols();
  m.phi = feature_rows(fm, x);
  const double N = scale == RidgeScale::Mean ? double(x.rows()) : 1.0;
  RMat A = m.phi * m.phi.transpose();
  A.diagonal().array() += lambda * N;
  Eigen::LLT<RMat> llt(A);
  if (llt.info() != Eigen::Success) throw numerical_error("kernel_fit: Cholesky factorization failed");
  m.a = llt.solve(y);
  if (!m.a.allFinite()) throw numerical_error("kernel_fit: non-finite solution");
  return m;
}

inline double kernel_predict(const KernelModel& m, const RVec& x) {
  if (x.size() != m.input_dim) throw invalid_input("kernel_predict: dimension mismatch");
  return m.a.dot(m.phi * feature_map(m.map, x));
}

inline RVec kernel_predict_all(const KernelModel& m, const RMat& x) {
  if (x.cols() != m.input_dim) throw invalid_input("kernel_predict: dimension mismatch");
  return feature_rows(m.map, x) * (m.phi.transpose() * m.a);
}

inline std::string to_string(FeatureKind k) { return k == FeatureKind::Linear ? "linear" : "poly2"; }

}  // namespace vqc
