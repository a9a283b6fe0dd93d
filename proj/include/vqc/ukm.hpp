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

#include <vqc/encode.hpp>
#include <vqc/optim.hpp>
#include <vqc/parallel.hpp>
#include <vqc/predict.hpp>
#include <vqc/rng.hpp>

#include <array>
#include <cstdint>

namespace vqc {

enum class UkmMode { Real, Complex };
enum class UkmVariant { X = 0, P = 1, OUofX = 2 };

inline const char* to_string(UkmVariant v) {
  switch (v) {
    case UkmVariant::X: return "X";
    case UkmVariant::P: return "P";
    case UkmVariant::OUofX: return "OU";
  }
  return "?";
}

struct UkmCfg {
  UkmMode mode = UkmMode::Complex;
  bool use_bias = false;
  double r = 0.010;
  int K = 30;
  int Kp = 10;
  std::uint64_t seed = 0;
  bool random_p0 = false;  // draw P0 at random instead of the identity
  LineSearchCfg ls{};
};

struct SocState {
  CMat X, P, D;
  double theta_b = 0.0;
  double r = 0.010;
  int k = 0;
};

// Nearest unitary K1 K2^H from Y = K1 S K2^H.
inline CMat ou(const CMat& y) {
  SvdResult s = svd(y);
  return s.k1 * s.k2dag;
}

// Haar-ish random unitary (orthogonal when real) via QR of a Gaussian matrix.
inline CMat random_unitary(Eigen::Index dim, Rng& rng, bool real = false) {
  CMat g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = cplx(rng.normal(), real ? 0.0 : rng.normal());
  if (real) {
    Eigen::HouseholderQR<RMat> qr(g.real());
    return RMat(qr.householderQ()).cast<cplx>();
  }
  Eigen::HouseholderQR<CMat> qr(g);
  return CMat(qr.householderQ());
}

// Flattened layout: entries row-major; complex mode interleaves (Re, Im),
// real mode stores Re only; theta_b last when the bias is on.
inline Eigen::Index flat_size(Eigen::Index dim, UkmMode mode, bool bias) {
  return dim * dim * (mode == UkmMode::Complex ? 2 : 1) + (bias ? 1 : 0);
}

inline RVec flatten(const CMat& x, double theta_b, UkmMode mode, bool bias) {
  const Eigen::Index d = x.rows();
  RVec v(flat_size(d, mode, bias));
  Eigen::Index p = 0;
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l) {
      v(p++) = x(k, l).real();
      if (mode == UkmMode::Complex) v(p++) = x(k, l).imag();
    }
  if (bias) v(p) = theta_b;
  return v;
}

inline void unflatten(const RVec& v, Eigen::Index d, UkmMode mode, bool bias, CMat& x, double& theta_b) {
  x.resize(d, d);
  Eigen::Index p = 0;
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l) {
      double re = v(p++);
      x(k, l) = cplx(re, mode == UkmMode::Complex ? v(p++) : 0.0);
    }
  theta_b = bias ? v(p) : 0.0;
}

// J_SOC at the flattened point v = (X, theta_b):
//   (1/N) sum_i l(y_i, <psi_i|X^H O X|psi_i> + theta_b) + (r/2) ||X - P + D||_F^2
// Complex gradient (2/N) sum_i l'_i (O X psi_i) psi_i^H + r (X - P + D); its
// real and imaginary parts are the partials in Re X and Im X.
inline double soc_objective(const SocState& st, const EncodedSet& data, const CMat& o, LossKind kind,
                            const UkmCfg& cfg, const RVec& v, RVec& grad) {
  const Eigen::Index d = st.P.rows();
  CMat x;
  double tb;
  unflatten(v, d, cfg.mode, cfg.use_bias, x, tb);
  const std::size_t N = data.size(), chunks = reduction_chunks(N);
  std::vector<CMat> gpart(chunks, CMat::Zero(d, d));
  std::vector<double> lpart(chunks, 0.0), bpart(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c) {
    for (std::size_t i = chunk_begin(c, chunks, N); i < chunk_begin(c + 1, chunks, N); ++i) {
      const CVec& psi = data.psi[i];
      CVec xv = x * psi;
      CVec oxv = o * xv;
      double z = xv.dot(oxv).real() + tb;
      double y = loss_label(kind, data.y(i));
      lpart[c] += loss(kind, y, z);
      double lg = loss_grad(kind, y, z);
      bpart[c] += lg;
      gpart[c].noalias() += (lg * oxv) * psi.adjoint();
    }
  });
  CMat g = CMat::Zero(d, d);
  double L = 0, gb = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    g += gpart[c];
    L += lpart[c];
    gb += bpart[c];
  }
  const CMat pen = x - st.P + st.D;
  g = (2.0 / double(N)) * g + st.r * pen;
  grad = flatten(g, gb / double(N), cfg.mode, cfg.use_bias);
  return L / double(N) + 0.5 * st.r * pen.squaredNorm();
}

// Kp CG iterations on J_SOC in (X, theta_b) with P, D frozen.
inline OptimReport soc_x_step(SocState& st, const EncodedSet& data, const CMat& o, LossKind kind,
                              const UkmCfg& cfg) {
  const Eigen::Index d = st.P.rows();
  auto f = [&](const RVec& v, RVec& g) { return soc_objective(st, data, o, kind, cfg, v, g); };
  OptimReport rep = cg_minimize(f, flatten(st.X, st.theta_b, cfg.mode, cfg.use_bias), cfg.Kp, cfg.ls);
  if (rep.aborted) throw numerical_error("soc_x_step: " + rep.message);
  unflatten(rep.x, d, cfg.mode, cfg.use_bias, st.X, st.theta_b);
  return rep;
}

struct UkmModel {
  CMat op;
  double theta_b = 0.0;
  Observables obs;
};

inline double ukm_predict(const UkmModel& m, const CVec& psi) { return f_pred(m.op, psi, m.obs, m.theta_b); }

inline RVec ukm_predict_all(const UkmModel& m, const EncodedSet& d) {
  const CMat o = weighted_observable(m.obs);
  RVec z(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) z(i) = sandwich(m.op, o, d.psi[i]) + m.theta_b;
  return z;
}

struct UkmFit {
  std::array<UkmModel, 3> best;  // indexed by UkmVariant
  std::array<int, 3> best_iter{};
  std::array<std::vector<double>, 3> train_acc;  // per outer iteration 1..K
  std::vector<std::vector<double>> soc_traces;   // J_SOC over each X-step
  SocState state;
};

inline UkmModel ukm_variant(const SocState& st, UkmVariant v, const Observables& obs) {
  switch (v) {
    case UkmVariant::X: return {st.X, st.theta_b, obs};
    case UkmVariant::P: return {st.P, st.theta_b, obs};
    case UkmVariant::OUofX: return {ou(st.X), st.theta_b, obs};
  }
  return {};
}

inline UkmFit ukm_fit(const EncodedSet& data, const UkmCfg& cfg, LossKind kind, Observables obs = {}) {
  if (data.size() == 0) throw invalid_input("ukm_fit: empty dataset");
  for (Eigen::Index i = 0; i < data.y.size(); ++i)
    if (data.y(i) != 1.0 && data.y(i) != -1.0) throw invalid_input("ukm_fit: labels must be +1 or -1");
  if (!(cfg.r > 0) || cfg.K < 1 || cfg.Kp < 1) throw invalid_input("ukm_fit: need r > 0, K >= 1, K' >= 1");
  if (obs.empty()) obs = default_observables(data.n);
  const CMat o = weighted_observable(obs);
  const Eigen::Index d = Eigen::Index(1) << data.n;

  SocState st;
  st.r = cfg.r;
  if (cfg.random_p0) {
    Rng rng(derive_seed(cfg.seed, 2));
    st.P = random_unitary(d, rng, cfg.mode == UkmMode::Real);
  } else {
    st.P = identity(d);
  }
  st.D = CMat::Zero(d, d);
  st.X = st.P;

  UkmFit out;
  for (int k = 1; k <= cfg.K; ++k) {
    st.k = k;
    OptimReport rep = soc_x_step(st, data, o, kind, cfg);
    out.soc_traces.push_back(rep.trace);
    st.P = ou(st.X + st.D);
    st.D += st.X - st.P;
    for (int v = 0; v < 3; ++v) {
      UkmModel m = ukm_variant(st, UkmVariant(v), obs);
      double acc = accuracy(ukm_predict_all(m, data), data.y);
      out.train_acc[v].push_back(acc);
      if (k == 1 || acc >= out.train_acc[v][out.best_iter[v] - 1]) {
        out.best_iter[v] = k;
        out.best[v] = std::move(m);
      }
    }
  }
  out.state = st;
  return out;
}

}  // namespace vqc
