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

#include <vqc/ansatz.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

// UMAT text format:
//   UMAT 1 <n>
//   2^n rows of 2^(n+1) numbers: re im re im ... (row-major, %.17g, LF)

namespace vqc {

inline std::string umat_string(const CMat& u) {
  int n = 0;
  while ((Eigen::Index(1) << n) < u.rows()) ++n;
  if ((Eigen::Index(1) << n) != u.rows() || u.rows() != u.cols())
    throw invalid_input("umat: matrix must be 2^n x 2^n");
  std::string s = "UMAT 1 " + std::to_string(n) + "\n";
  char buf[64];
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%s%.17g %.17g", j ? " " : "", u(i, j).real(), u(i, j).imag());
      s += buf;
    }
    s += "\n";
  }
  return s;
}

inline void write_umat(const std::string& path, const CMat& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << umat_string(u);
}

inline CMat parse_umat(std::istream& in) {
  std::string magic;
  int version = 0, n = -1;
  if (!(in >> magic >> version >> n) || magic != "UMAT" || version != 1 || n < 1 || n > 8)
    throw invalid_input("umat: bad header");
  const Eigen::Index d = Eigen::Index(1) << n;
  std::string line;
  std::getline(in, line);
  CMat u(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!std::getline(in, line)) throw invalid_input("umat: missing row " + std::to_string(i));
    std::istringstream row(line);
    for (Eigen::Index j = 0; j < d; ++j) {
      double re, im;
      if (!(row >> re >> im)) throw invalid_input("umat: short row " + std::to_string(i));
      u(i, j) = cplx(re, im);
    }
    std::string extra;
    if (row >> extra) throw invalid_input("umat: long row " + std::to_string(i));
  }
  if (!u.allFinite()) throw invalid_input("umat: non-finite entry");
  if (unitarity_defect(u) > tol::unitary_load) throw invalid_input("umat: matrix is not unitary");
  return u;
}

inline CMat read_umat(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open " + path);
  return parse_umat(in);
}

// Gate list, one gate per line: `layer qubit gate angle...`. Two-qubit gates
// write the qubit field as control>target; the global phase sits on layer 0
// with qubit '*'. Angles use %.17g.
inline std::string gate_list(const AnsatzSpec& s, const RVec& th, double lambda) {
  if (th.size() != param_count(s)) throw invalid_input("gate_list: parameter length mismatch");
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "0 * PHASE %.17g\n", lambda);
  os << buf;
  const int n = s.n, b = block_size(s);
  for (int l = 0; l < s.layers; ++l) {
    if (n > 1) {
      for (int j = 1; j <= n; ++j) {
        int t = j % n + 1;
        if (s.kind == AnsatzKind::CnotBased) {
          std::snprintf(buf, sizeof buf, "%d %d>%d CNOT\n", l + 1, j, t);
        } else if (s.kind == AnsatzKind::CRotBased) {
          int p = l * b + 3 * n + 3 * (j - 1);
          std::snprintf(buf, sizeof buf, "%d %d>%d CR3D %.17g %.17g %.17g\n", l + 1, j, t, th(p), th(p + 1), th(p + 2));
        } else {
          if (j > 1) break;
          std::snprintf(buf, sizeof buf, "%d * %s %.17g\n", l + 1, s.kind == AnsatzKind::Heis1d ? "HEIS1D" : "HEISFC", s.dt);
        }
        os << buf;
      }
    }
    for (int q = 1; q <= n; ++q) {
      int p = l * b + 3 * (q - 1);
      std::snprintf(buf, sizeof buf, "%d %d R3D %.17g %.17g %.17g\n", l + 1, q, th(p), th(p + 1), th(p + 2));
      os << buf;
    }
  }
  return os.str();
}

}  // namespace vqc
