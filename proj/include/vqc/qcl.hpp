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
#include <vqc/encode.hpp>
#include <vqc/parallel.hpp>

#include <cstdint>
#include <numeric>

namespace vqc {

struct QclModel {
  AnsatzSpec spec;
  RVec theta;
  double theta_b = 0.0;
  bool use_bias = false;
  Observables obs;
};

struct SgdCfg {
  int batch = 0;  // 0: min(32, N)
  double eta = 0.1;
  int iters = 300;
  std::uint64_t seed = 0;
};

struct QclFit {
  QclModel model;  // best-training-accuracy snapshot
  int best_iter = 0;
  std::vector<double> train_acc;  // index 0 is the initialization
  std::vector<double> train_loss;
};

inline RVec qcl_predict_all(const QclModel& m, const EncodedSet& d) {
  const auto ops = circuit_ops(m.spec, m.theta);
  const CMat o = weighted_observable(m.obs);
  RVec z(d.size());
  parallel_for(d.size(), [&](std::size_t i) {
    CVec v = run_circuit(ops, d.psi[i], m.spec.n);
    z(i) = v.dot(o * v).real() + m.theta_b;
  });
  return z;
}

inline double qcl_predict(const QclModel& m, const CVec& psi) {
  if (psi.size() != (Eigen::Index(1) << m.spec.n)) throw invalid_input("qcl_predict: dimension mismatch");
  return f_pred(build_unitary(m.spec, m.theta), psi, m.obs, m.theta_b);
}

namespace detail {

inline void check_labels(const EncodedSet& d) {
  if (d.size() == 0) throw invalid_input("empty dataset");
  for (Eigen::Index i = 0; i < d.y.size(); ++i)
    if (d.y(i) != 1.0 && d.y(i) != -1.0) throw invalid_input("labels must be +1 or -1");
}

inline double mean_loss(LossKind k, const RVec& z, const RVec& y) {
  double s = 0;
  for (Eigen::Index i = 0; i < z.size(); ++i) s += loss(k, loss_label(k, y(i)), z(i));
  return s / double(z.size());
}

}  // namespace detail

// Gradient of the batch-mean loss with respect to (theta, theta_b).
inline RVec qcl_batch_gradient(const QclModel& m, const EncodedSet& d, const std::vector<std::size_t>& batch,
                               LossKind kind) {
  const auto ops = circuit_ops(m.spec, m.theta);
  const CMat o = weighted_observable(m.obs);
  const int np = int(m.theta.size());
  const std::size_t nb = batch.size(), chunks = reduction_chunks(nb);
  std::vector<RVec> part(chunks, RVec::Zero(np + 1));
  parallel_for(chunks, [&](std::size_t c) {
    for (std::size_t t = chunk_begin(c, chunks, nb); t < chunk_begin(c + 1, chunks, nb); ++t) {
      const std::size_t i = batch[t];
      double ev;
      RVec gi = expectation_gradient_ops(ops, m.spec.n, np, d.psi[i], o, &ev);
      double lg = loss_grad(kind, loss_label(kind, d.y(i)), ev + m.theta_b);
      part[c].head(np) += lg * gi;
      part[c](np) += lg;
    }
  });
  RVec g = RVec::Zero(np + 1);
  for (const auto& p : part) g += p;
  g /= double(nb);
  if (!m.use_bias) g(np) = 0.0;
  return g;
}

inline QclFit qcl_fit(const EncodedSet& d, const AnsatzSpec& spec, LossKind kind, const SgdCfg& cfg, bool use_bias,
                      Observables obs = {}) {
  detail::check_labels(d);
  if (spec.n != d.n) throw invalid_input("qcl_fit: ansatz qubit count does not match the data");
  if (cfg.eta <= 0 || cfg.batch < 0 || cfg.iters < 0) throw invalid_input("qcl_fit: bad SGD settings");
  const std::size_t N = d.size();
  const std::size_t B = cfg.batch == 0 ? std::min<std::size_t>(32, N) : std::min<std::size_t>(cfg.batch, N);

  QclModel m;
  m.spec = spec;
  m.use_bias = use_bias;
  m.obs = obs.empty() ? default_observables(spec.n) : std::move(obs);
  Rng init(derive_seed(cfg.seed, 0)), sampler(derive_seed(cfg.seed, 1));
  m.theta = random_params(spec, init);

  QclFit out;
  auto record = [&](int it) {
    RVec z = qcl_predict_all(m, d);
    double acc = accuracy(z, d.y);
    out.train_acc.push_back(acc);
    out.train_loss.push_back(detail::mean_loss(kind, z, d.y));
    // ties go to the later iterate
    if (it == 0 || acc >= out.train_acc[out.best_iter]) {
      out.best_iter = it;
      out.model = m;
    }
  };
  record(0);

  std::vector<std::size_t> idx(N);
  std::iota(idx.begin(), idx.end(), 0);
  for (int it = 1; it <= cfg.iters; ++it) {
    // partial Fisher-Yates: the first B entries become the batch
    for (std::size_t k = 0; k < B; ++k) std::swap(idx[k], idx[k + sampler.below(N - k)]);
    std::vector<std::size_t> batch(idx.begin(), idx.begin() + B);
    RVec g = qcl_batch_gradient(m, d, batch, kind);
    m.theta -= cfg.eta * g.head(m.theta.size());
    if (use_bias) m.theta_b -= cfg.eta * g(g.size() - 1);
    record(it);
  }
  return out;
}

}  // namespace vqc
