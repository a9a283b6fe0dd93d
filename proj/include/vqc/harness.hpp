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
#include <vqc/kernel.hpp>
#include <vqc/parallel.hpp>
#include <vqc/qcl.hpp>
#include <vqc/rng.hpp>
#include <vqc/ukm.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace vqc {

// Unreadable or malformed input data.
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Dataset {
  std::string name;
  RMat X;  // N x M
  RVec y;  // +-1
  Eigen::Index size() const { return X.rows(); }
};

inline Dataset subset(const Dataset& d, const std::vector<std::size_t>& idx) {
  Dataset s;
  s.name = d.name;
  s.X.resize(Eigen::Index(idx.size()), d.X.cols());
  s.y.resize(Eigen::Index(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    s.X.row(Eigen::Index(i)) = d.X.row(Eigen::Index(idx[i]));
    s.y(Eigen::Index(i)) = d.y(Eigen::Index(idx[i]));
  }
  return s;
}

inline std::string stem_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

// No header; M feature columns then an integer label in {0,1} or {-1,1}.
inline Dataset parse_csv(std::istream& in, const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::vector<long> labels;
  std::string line;
  std::size_t lineno = 0, width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> vals;
    std::size_t pos = 0;
    while (true) {
      std::size_t end = line.find(',', pos);
      std::string cell = line.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
      auto b = cell.find_first_not_of(" \t"), e = cell.find_last_not_of(" \t");
      if (b == std::string::npos) throw data_error(name + ":" + std::to_string(lineno) + ": empty cell");
      cell = cell.substr(b, e - b + 1);
      double v;
      auto r = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (r.ec != std::errc() || r.ptr != cell.data() + cell.size() || !std::isfinite(v))
        throw data_error(name + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      vals.push_back(v);
      if (end == std::string::npos) break;
      pos = end + 1;
    }
    if (vals.size() < 2) throw data_error(name + ":" + std::to_string(lineno) + ": need features and a label");
    if (width == 0) width = vals.size();
    if (vals.size() != width) throw data_error(name + ":" + std::to_string(lineno) + ": ragged row");
    double lab = vals.back();
    if (lab != std::floor(lab)) throw data_error(name + ":" + std::to_string(lineno) + ": non-integer label");
    labels.push_back(long(lab));
    vals.pop_back();
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw data_error(name + ": no data rows");
  bool has0 = false, hasm1 = false;
  for (long l : labels) {
    if (l != 0 && l != 1 && l != -1) throw data_error(name + ": label " + std::to_string(l) + " not in {0,1} or {-1,1}");
    has0 |= l == 0;
    hasm1 |= l == -1;
  }
  if (has0 && hasm1) throw data_error(name + ": labels mix 0 and -1");
  Dataset d;
  d.name = name;
  d.X.resize(Eigen::Index(rows.size()), Eigen::Index(width - 1));
  d.y.resize(Eigen::Index(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j + 1 < width; ++j) d.X(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
    d.y(Eigen::Index(i)) = labels[i] == 1 ? 1.0 : -1.0;
  }
  return d;
}

inline Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open " + path);
  return parse_csv(in, stem_of(path));
}

// 28x28 -> 16x16 by area weighting: output pixel (I, J) averages the
// source square [1.75 I, 1.75 (I+1)) x [1.75 J, 1.75 (J+1)).
inline RMat coarse_grain_mnist(const RMat& img) {
  if (img.rows() != 28 || img.cols() != 28) throw invalid_input("coarse_grain_mnist: expected 28x28");
  constexpr double step = 28.0 / 16.0;
  RMat w = RMat::Zero(16, 28);  // w(I, r): overlap of output row I with source row r
  for (int I = 0; I < 16; ++I) {
    double lo = I * step, hi = (I + 1) * step;
    for (int r = 0; r < 28; ++r) w(I, r) = std::max(0.0, std::min(hi, r + 1.0) - std::max(lo, double(r)));
  }
  return w * img * w.transpose() / (step * step);
}

struct CvPlan {
  int folds = 5;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
};

struct Fold {
  std::vector<std::size_t> train, test;
};

// Seeded Fisher-Yates permutation cut into k contiguous chunks.
inline std::vector<Fold> kfold_split(std::size_t N, int k, std::uint64_t seed) {
  if (k < 2) throw invalid_input("kfold_split: need at least 2 folds");
  if (N < std::size_t(k)) throw invalid_input("kfold_split: fewer samples than folds");
  std::vector<std::size_t> perm(N);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  rng.shuffle(perm);
  std::vector<Fold> out(k);
  for (int f = 0; f < k; ++f) {
    std::size_t lo = f * N / k, hi = (f + 1) * N / k;
    for (std::size_t i = 0; i < N; ++i) (i >= lo && i < hi ? out[f].test : out[f].train).push_back(perm[i]);
  }
  return out;
}

struct RunRecord {
  std::string algo, variant, dataset;
  int fold = 0;
  std::uint64_t seed = 0;
  double train_acc = 0, test_acc = 0;
  int best_iter = 0;
  double wall_time = 0;  // seconds
  double soc_max_rise = 0;  // ukm only: largest J_SOC increase between CG iterates
};

struct Aggregate {
  std::string algo, variant, dataset;
  double train_acc = 0, test_acc = 0;
  std::size_t count = 0;
};

inline void sort_records(std::vector<RunRecord>& rs) {
  std::stable_sort(rs.begin(), rs.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.dataset, a.algo, a.variant, a.seed, a.fold) <
           std::tie(b.dataset, b.algo, b.variant, b.seed, b.fold);
  });
}

// Mean accuracies per (dataset, algo, variant), in record order.
inline std::vector<Aggregate> aggregate(const std::vector<RunRecord>& rs) {
  std::vector<Aggregate> out;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> at;
  for (const auto& r : rs) {
    auto key = std::make_tuple(r.dataset, r.algo, r.variant);
    auto it = at.find(key);
    if (it == at.end()) {
      it = at.emplace(key, out.size()).first;
      out.push_back({r.algo, r.variant, r.dataset});
    }
    Aggregate& a = out[it->second];
    a.train_acc += r.train_acc;
    a.test_acc += r.test_acc;
    ++a.count;
  }
  for (auto& a : out) {
    a.train_acc /= double(a.count);
    a.test_acc /= double(a.count);
  }
  return out;
}

inline std::string format_cell(double train, double test) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f/%.4f", train, test);
  return buf;
}

struct QclAlgo {
  AnsatzKind kind = AnsatzKind::CnotBased;
  int layers = 5;
  double dt = 0.1;
  LossKind loss = LossKind::SquaredError;
  SgdCfg sgd{};
  bool bias = false;
};

struct UkmAlgo {
  UkmCfg cfg{};
  LossKind loss = LossKind::SquaredError;
};

struct KernelAlgo {
  FeatureMap map{};
  double lambda = 0.1;
  RidgeScale scale = RidgeScale::Mean;
};

using AlgoSpec = std::variant<QclAlgo, UkmAlgo, KernelAlgo>;

inline std::string bias_tag(bool b) { return b ? "bias" : "nobias"; }

inline std::string algo_name(const AlgoSpec& a) {
  return std::visit([](const auto& s) -> std::string {
    using T = std::decay_t<decltype(s)>;
    if constexpr (std::is_same_v<T, QclAlgo>) return "qcl";
    else if constexpr (std::is_same_v<T, UkmAlgo>) return "ukm";
    else return "kernel";
  }, a);
}

// One (fold, seed) task. Model randomness is keyed on (seed, fold) so a
// task's result does not depend on which other tasks run.
inline std::vector<RunRecord> run_fold(const AlgoSpec& algo, const Dataset& data, const Fold& fold, int f,
                                       std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const Dataset tr = subset(data, fold.train), te = subset(data, fold.test);
  const std::uint64_t model_seed = derive_seed(seed, 1000 + std::uint64_t(f));
  std::vector<RunRecord> out;
  auto push = [&](std::string variant, double a_tr, double a_te, int it) {
    RunRecord r;
    r.algo = algo_name(algo);
    r.variant = std::move(variant);
    r.dataset = data.name;
    r.fold = f;
    r.seed = seed;
    r.train_acc = a_tr;
    r.test_acc = a_te;
    r.best_iter = it;
    out.push_back(std::move(r));
  };
  if (auto* q = std::get_if<QclAlgo>(&algo)) {
    EncodedSet etr = encode_rows(tr.X, tr.y), ete = encode_rows(te.X, te.y);
    SgdCfg sgd = q->sgd;
    sgd.seed = model_seed;
    QclFit fit = qcl_fit(etr, {q->kind, etr.n, q->layers, q->dt}, q->loss, sgd, q->bias);
    push(to_string(q->kind) + "/" + bias_tag(q->bias), fit.train_acc[fit.best_iter],
         accuracy(qcl_predict_all(fit.model, ete), ete.y), fit.best_iter);
  } else if (auto* u = std::get_if<UkmAlgo>(&algo)) {
    EncodedSet etr = encode_rows(tr.X, tr.y), ete = encode_rows(te.X, te.y);
    UkmCfg cfg = u->cfg;
    cfg.seed = model_seed;
    UkmFit fit = ukm_fit(etr, cfg, u->loss);
    const std::string tail = std::string(cfg.mode == UkmMode::Real ? "real" : "complex") + "/" + bias_tag(cfg.use_bias);
    double rise = -INFINITY;
    for (const auto& t : fit.soc_traces)
      for (std::size_t i = 1; i < t.size(); ++i) rise = std::max(rise, t[i] - t[i - 1]);
    for (int v = 0; v < 3; ++v) {
      const int it = fit.best_iter[v];
      push(std::string(to_string(UkmVariant(v))) + "/" + tail, fit.train_acc[v][it - 1],
           accuracy(ukm_predict_all(fit.best[v], ete), ete.y), it);
      out.back().soc_max_rise = rise;
    }
  } else {
    const auto& k = std::get<KernelAlgo>(algo);
    KernelModel m = kernel_fit(tr.X, tr.y, k.map, k.lambda, k.scale);
    char lam[32];
    std::snprintf(lam, sizeof lam, "%g", k.lambda);
    push(to_string(k.map.kind) + "/" + (k.map.normalize ? "norm" : "raw") + "/" + bias_tag(k.map.bias) +
             "/lambda=" + lam + (k.scale == RidgeScale::Sum ? "/sum" : ""),
         accuracy(kernel_predict_all(m, tr.X), tr.y), accuracy(kernel_predict_all(m, te.X), te.y), 0);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (auto& r : out) r.wall_time = secs;
  return out;
}

struct ExperimentResult {
  std::vector<RunRecord> records;  // sorted (dataset, algo, variant, seed, fold)
  std::vector<Aggregate> means;
};

inline ExperimentResult run_experiment(const AlgoSpec& algo, const Dataset& data, const CvPlan& plan,
                                       const std::vector<int>& only_folds = {}) {
  if (plan.seeds.empty()) throw invalid_input("run_experiment: no seeds");
  struct Task {
    std::uint64_t seed;
    int fold;
    Fold split;
  };
  std::vector<Task> tasks;
  for (auto s : plan.seeds) {
    auto folds = kfold_split(std::size_t(data.size()), plan.folds, s);
    for (int f = 0; f < plan.folds; ++f) {
      if (!only_folds.empty() && std::find(only_folds.begin(), only_folds.end(), f) == only_folds.end()) continue;
      tasks.push_back({s, f, folds[f]});
    }
  }
  std::vector<std::vector<RunRecord>> per(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { per[i] = run_fold(algo, data, tasks[i].split, tasks[i].fold, tasks[i].seed); });
  ExperimentResult res;
  for (auto& p : per)
    for (auto& r : p) res.records.push_back(std::move(r));
  sort_records(res.records);
  res.means = aggregate(res.records);
  return res;
}

}  // namespace vqc
