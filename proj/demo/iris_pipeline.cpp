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

// Train a unitary kernel model on one split of iris (class 1 vs rest),
// compare it against a parameterized circuit, then compile the unitary P
// into a layered CNOT circuit and check that predictions survive.

#include <vqc/harness.hpp>
#include <vqc/vcr.hpp>

#include <cstdio>

using namespace vqc;

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : VQC_DATA_DIR "/iris1_vs_rest.csv";
  Dataset d = load_csv(path);
  Fold f = kfold_split(std::size_t(d.size()), 5, 0)[0];
  EncodedSet tr = encode_rows(subset(d, f.train).X, subset(d, f.train).y);
  EncodedSet te = encode_rows(subset(d, f.test).X, subset(d, f.test).y);
  std::printf("%s: %lld samples, %lld features, %d qubits\n", d.name.c_str(), (long long)d.size(),
              (long long)d.X.cols(), tr.n);

  SgdCfg sgd;
  sgd.seed = 1;
  QclFit q = qcl_fit(tr, {AnsatzKind::CnotBased, tr.n, 5}, LossKind::SquaredError, sgd, false);
  std::printf("qcl (cnot, L=5)   %s\n", format_cell(q.train_acc[q.best_iter], accuracy(qcl_predict_all(q.model, te), te.y)).c_str());

  UkmCfg cfg;
  cfg.mode = UkmMode::Real;
  cfg.seed = 1;
  UkmFit u = ukm_fit(tr, cfg, LossKind::SquaredError);
  for (int v = 0; v < 3; ++v) {
    const UkmModel& m = u.best[v];
    std::printf("ukm %-3s           %s\n", to_string(UkmVariant(v)),
                format_cell(accuracy(ukm_predict_all(m, tr), tr.y), accuracy(ukm_predict_all(m, te), te.y)).c_str());
  }

  VcrProblem pr;
  pr.target = u.best[int(UkmVariant::P)].op;
  pr.kind = AnsatzKind::CnotBased;
  pr.n = tr.n;
  LDeltaResult ld = l_delta_search(pr, 1e-3, {1, 2, 3, 4, 5});
  for (const auto& r : ld.runs) std::printf("vcr L=%d cost %.3e\n", r.L, r.cost);
  if (!ld.L_delta) return 0;

  const VcrResult& r = ld.runs.back();
  CMat circuit = global_phase(r.lambda, pr.n) * build_unitary({pr.kind, pr.n, r.L}, r.theta);
  UkmModel compiled{circuit, 0.0, u.best[int(UkmVariant::P)].obs};
  std::printf("compiled circuit test accuracy %.4f (P: %.4f)\n", accuracy(ukm_predict_all(compiled, te), te.y),
              accuracy(ukm_predict_all(u.best[int(UkmVariant::P)], te), te.y));
  return 0;
}
