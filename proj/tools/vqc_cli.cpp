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

// vqc: command-line driver. Records go to stdout (or --out) as JSON lines;
// --table appends train/test cells after the records.

#include <vqc/harness.hpp>
#include <vqc/io.hpp>
#include <vqc/vcr.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

using namespace vqc;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kConfig = 2, kData = 3, kNumerical = 4 };

struct Common {
  std::string dataset, out;
  int folds = 5;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::vector<int> only_folds;
  bool table = false, timing = false;
};

void add_common(CLI::App* c, Common& o) {
  c->add_option("--dataset", o.dataset, "CSV file: features then a 0/1 or -1/+1 label")->required();
  c->add_option("--folds", o.folds, "number of CV folds")->check(CLI::Range(2, 1000));
  auto* seeds = c->add_option("--seeds", o.seeds, "CV seeds")->delimiter(',');
  c->add_option_function<std::uint64_t>("--seed", [&o](std::uint64_t s) { o.seeds = {s}; }, "single CV seed")
      ->excludes(seeds);
  c->add_option("--only-folds", o.only_folds, "run only these folds")->delimiter(',');
  c->add_option("--out", o.out, "write records here instead of stdout");
  c->add_flag("--table", o.table, "append train/test cells after the records");
  c->add_flag("--timing", o.timing, "include wall time in records (breaks byte-identical output)");
}

LossKind parse_loss(const std::string& s) {
  if (s == "se") return LossKind::SquaredError;
  if (s == "hinge") return LossKind::Hinge;
  if (s == "xe") return LossKind::CrossEntropy;
  throw invalid_input("unknown loss '" + s + "'");
}

json record_json(const RunRecord& r, bool timing) {
  json j = {{"algo", r.algo},   {"variant", r.variant},       {"dataset", r.dataset},
            {"fold", r.fold},   {"seed", r.seed},             {"train_acc", r.train_acc},
            {"test_acc", r.test_acc}, {"best_iter", r.best_iter}};
  if (r.algo == "ukm") j["soc_max_rise"] = r.soc_max_rise;
  if (timing) j["wall_time"] = r.wall_time;
  return j;
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw invalid_input("cannot write " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const std::vector<ExperimentResult>& results, const Common& c, const std::string& best_of = "") {
  Sink sink(c.out);
  std::ostream& os = sink.os();
  for (const auto& res : results)
    for (const auto& r : res.records) os << record_json(r, c.timing).dump() << '\n';
  if (!c.table) return;
  os << '\n';
  std::map<std::string, Aggregate> best;
  for (const auto& res : results)
    for (const auto& a : res.means) {
      os << a.algo << '\t' << a.variant << '\t' << format_cell(a.train_acc, a.test_acc) << '\n';
      std::string key = a.algo;
      if (a.algo == "ukm") key += a.variant[0] == 'X' ? " X" : a.variant[0] == 'P' ? " P" : " OU";
      auto it = best.find(key);
      if (it == best.end() || a.test_acc > it->second.test_acc) best[key] = a;
    }
  if (best_of.empty()) return;
  os << "\nbest by test accuracy (" << best_of << ")\n";
  for (const auto& [k, a] : best) os << k << '\t' << format_cell(a.train_acc, a.test_acc) << '\t' << a.variant << '\n';
}

CvPlan plan_of(const Common& c) {
  CvPlan p;
  p.folds = c.folds;
  p.seeds = c.seeds;
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variational quantum classifiers: QCL, unitary kernel method, kernel ridge, circuit realization"};
  app.require_subcommand(1);

  // qcl
  Common qc;
  std::string q_ansatz = "cnot", q_loss = "se";
  QclAlgo q;
  auto* qcl = app.add_subcommand("qcl", "parameterized-circuit classifier trained by SGD");
  add_common(qcl, qc);
  qcl->add_option("--ansatz", q_ansatz, "cnot | crot | heis1d | heisfc");
  qcl->add_option("--layers", q.layers)->check(CLI::Range(1, 1000000));
  qcl->add_option("--dt", q.dt, "Heisenberg evolution time")->check(CLI::PositiveNumber);
  qcl->add_option("--iters", q.sgd.iters)->check(CLI::NonNegativeNumber);
  qcl->add_option("--eta", q.sgd.eta, "learning rate")->check(CLI::PositiveNumber);
  qcl->add_option("--batch", q.sgd.batch, "mini-batch size (0: min(32, N))")->check(CLI::NonNegativeNumber);
  qcl->add_option("--loss", q_loss, "se | hinge | xe");
  qcl->add_flag("--bias", q.bias);

  // ukm
  Common uc;
  std::string u_mode = "complex", u_loss = "se", u_export;
  UkmAlgo u;
  auto* ukm = app.add_subcommand("ukm", "unitary kernel method (splitting orthogonality constraints)");
  add_common(ukm, uc);
  ukm->add_option("--mode", u_mode, "complex | real");
  ukm->add_option("--r", u.cfg.r, "penalty weight")->check(CLI::PositiveNumber);
  ukm->add_option("--soc-iters", u.cfg.K, "outer iterations")->check(CLI::Range(1, 1000000));
  ukm->add_option("--cg-iters", u.cfg.Kp, "CG iterations per X-step")->check(CLI::Range(1, 1000000));
  ukm->add_option("--loss", u_loss, "se | hinge | xe");
  ukm->add_flag("--bias", u.cfg.use_bias);
  ukm->add_flag("--random-p0", u.cfg.random_p0, "start P from a random unitary");
  ukm->add_option("--export-umat", u_export, "write P fitted on the first seed's fold-0 training split");

  // kernel
  Common kc;
  std::string k_feature = "linear", k_scale = "mean";
  KernelAlgo k;
  auto* kernel = app.add_subcommand("kernel", "kernel ridge classifier");
  add_common(kernel, kc);
  kernel->add_option("--feature", k_feature, "linear | poly2");
  kernel->add_flag("--normalize", k.map.normalize, "scale each sample to unit norm");
  kernel->add_flag("--bias", k.map.bias, "append a constant feature");
  kernel->add_option("--lambda", k.lambda)->check(CLI::PositiveNumber);
  kernel->add_option("--ridge-scale", k_scale, "mean (lambda N on the diagonal) | sum (lambda)");

  // vcr
  std::string v_target, v_ansatz = "cnot", v_form = "inverse", v_gates, v_out;
  std::vector<int> v_grid;
  int v_layers = 0;
  double v_delta = 1e-3;
  VcrProblem vp;
  auto* vcr = app.add_subcommand("vcr", "fit a layered circuit plus global phase to a UMAT unitary");
  vcr->add_option("--target", v_target, "UMAT file")->required();
  auto* lay = vcr->add_option("--layers", v_layers, "fit exactly this many layers")->check(CLI::Range(1, 1000000));
  vcr->add_option("--grid", v_grid, "ascending layer grid; reports the first L reaching --delta")
      ->delimiter(',')
      ->excludes(lay);
  vcr->add_option("--delta", v_delta, "cost threshold for --grid")->check(CLI::PositiveNumber);
  vcr->add_option("--ansatz", v_ansatz, "cnot | crot | heis1d | heisfc");
  vcr->add_option("--dt", vp.dt)->check(CLI::PositiveNumber);
  vcr->add_option("--p", vp.p, "cost exponent")->check(CLI::PositiveNumber);
  vcr->add_option("--restarts", vp.restarts)->check(CLI::Range(1, 1000000));
  vcr->add_option("--seed", vp.seed);
  vcr->add_option("--max-iters", vp.max_iters)->check(CLI::Range(1, 1000000));
  vcr->add_option("--form", v_form, "inverse | difference");
  vcr->add_option("--gates-out", v_gates, "write the gate list here");
  vcr->add_option("--out", v_out, "write the JSON record here instead of stdout");

  // cv
  Common cc;
  std::vector<std::string> c_algos{"ukm", "qcl", "kernel"};
  std::string c_scale = "mean";
  int c_iters = 300, c_layers = 5;
  auto* cv = app.add_subcommand("cv", "every configuration of a table row: UKM, QCL and kernel grids");
  add_common(cv, cc);
  cv->add_option("--algos", c_algos, "subset of ukm,qcl,kernel")->delimiter(',');
  cv->add_option("--iters", c_iters, "QCL SGD iterations")->check(CLI::NonNegativeNumber);
  cv->add_option("--layers", c_layers, "QCL layers")->check(CLI::Range(1, 1000000));
  cv->add_option("--ridge-scale", c_scale, "kernel regularizer scaling: mean | sum");

  // coarse-grain
  std::string g_in, g_out;
  auto* coarse = app.add_subcommand("coarse-grain", "pool 28x28 image rows (784 pixels + label) down to 16x16");
  coarse->add_option("--in", g_in, "CSV with 784 row-major pixels then a label")->required();
  coarse->add_option("--out", g_out, "output CSV, 256 pixels then the label")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  auto ridge = [](const std::string& s) {
    if (s == "mean") return RidgeScale::Mean;
    if (s == "sum") return RidgeScale::Sum;
    throw invalid_input("unknown ridge scale '" + s + "'");
  };

  try {
    // validation happens here, before any data is touched
    if (qcl->parsed()) {
      q.kind = parse_ansatz(q_ansatz);
      q.loss = parse_loss(q_loss);
      validate(AnsatzSpec{q.kind, 1, q.layers, q.dt});
      Dataset d = load_csv(qc.dataset);
      emit({run_experiment(q, d, plan_of(qc), qc.only_folds)}, qc);
    } else if (ukm->parsed()) {
      if (u_mode != "complex" && u_mode != "real") throw invalid_input("unknown mode '" + u_mode + "'");
      u.cfg.mode = u_mode == "real" ? UkmMode::Real : UkmMode::Complex;
      u.loss = parse_loss(u_loss);
      Dataset d = load_csv(uc.dataset);
      emit({run_experiment(u, d, plan_of(uc), uc.only_folds)}, uc);
      if (!u_export.empty()) {
        const std::uint64_t s = uc.seeds.front();
        Dataset tr = subset(d, kfold_split(std::size_t(d.size()), uc.folds, s)[0].train);
        UkmCfg cfg = u.cfg;
        cfg.seed = derive_seed(s, 1000);
        UkmFit fit = ukm_fit(encode_rows(tr.X, tr.y), cfg, u.loss);
        write_umat(u_export, fit.best[int(UkmVariant::P)].op);
      }
    } else if (kernel->parsed()) {
      if (k_feature != "linear" && k_feature != "poly2") throw invalid_input("unknown feature map '" + k_feature + "'");
      k.map.kind = k_feature == "linear" ? FeatureKind::Linear : FeatureKind::Poly2;
      k.scale = ridge(k_scale);
      Dataset d = load_csv(kc.dataset);
      emit({run_experiment(k, d, plan_of(kc), kc.only_folds)}, kc);
    } else if (vcr->parsed()) {
      if (v_layers == 0 && v_grid.empty()) throw invalid_input("vcr: give --layers or --grid");
      if (v_form != "inverse" && v_form != "difference") throw invalid_input("unknown form '" + v_form + "'");
      vp.kind = parse_ansatz(v_ansatz);
      vp.form = v_form == "inverse" ? VcrForm::Inverse : VcrForm::Difference;
      CMat target;
      try {
        target = read_umat(v_target);
      } catch (const invalid_input& e) {
        throw data_error(e.what());
      }
      vp.target = target;
      vp.n = int(std::lround(std::log2(double(target.rows()))));
      json j = {{"target", v_target}, {"ansatz", v_ansatz}, {"form", v_form}, {"p", vp.p}};
      VcrResult r;
      if (!v_grid.empty()) {
        LDeltaResult ld = l_delta_search(vp, v_delta, v_grid);
        json per = json::array();
        for (const auto& run : ld.runs) per.push_back({{"L", run.L}, {"cost", run.cost}});
        j["delta"] = v_delta;
        j["L_delta"] = ld.L_delta ? json(*ld.L_delta) : json(nullptr);
        j["grid"] = per;
        r = ld.runs.back();
      } else {
        r = vcr_synthesize(vp, v_layers);
      }
      j.update({{"L", r.L}, {"cost", r.cost}, {"lambda", r.lambda}, {"restart", r.restart},
                {"converged", r.converged}, {"restart_costs", r.restart_costs}, {"trace", r.trace}});
      const std::string gates = gate_list(AnsatzSpec{vp.kind, vp.n, r.L, vp.dt}, r.theta, r.lambda);
      if (v_gates.empty()) {
        json lines = json::array();
        std::istringstream in(gates);
        for (std::string l; std::getline(in, l);) lines.push_back(l);
        j["gates"] = lines;
      } else {
        std::ofstream g(v_gates);
        if (!g) throw invalid_input("cannot write " + v_gates);
        g << gates;
      }
      Sink sink(v_out);
      sink.os() << j.dump() << '\n';
    } else if (cv->parsed()) {
      const RidgeScale scale = ridge(c_scale);
      for (const auto& a : c_algos)
        if (a != "ukm" && a != "qcl" && a != "kernel") throw invalid_input("unknown algorithm '" + a + "'");
      Dataset d = load_csv(cc.dataset);
      const CvPlan plan = plan_of(cc);
      const int n = qubits_for(int(d.X.cols()));
      std::vector<AlgoSpec> grid;
      auto wanted = [&](const char* a) { return std::find(c_algos.begin(), c_algos.end(), a) != c_algos.end(); };
      if (wanted("ukm"))
        for (UkmMode m : {UkmMode::Complex, UkmMode::Real})
          for (bool b : {false, true}) {
            UkmAlgo x;
            x.cfg.mode = m;
            x.cfg.use_bias = b;
            grid.push_back(x);
          }
      if (wanted("qcl")) {
        // the n=8 rows only ran the two rotation-based circuits
        std::vector<AnsatzKind> kinds{AnsatzKind::CnotBased, AnsatzKind::CRotBased};
        if (n < 8) kinds.insert(kinds.end(), {AnsatzKind::Heis1d, AnsatzKind::HeisFC});
        for (AnsatzKind a : kinds)
          for (bool b : {false, true}) {
            QclAlgo x;
            x.kind = a;
            x.bias = b;
            x.layers = c_layers;
            x.sgd.iters = c_iters;
            grid.push_back(x);
          }
      }
      if (wanted("kernel"))
        for (FeatureKind f : {FeatureKind::Linear, FeatureKind::Poly2})
          for (bool norm : {false, true})
            for (bool b : {false, true})
              for (double lam : {0.01, 0.1, 1.0}) grid.push_back(KernelAlgo{{f, norm, b}, lam, scale});
      std::vector<ExperimentResult> results;
      for (const auto& g : grid) results.push_back(run_experiment(g, d, plan, cc.only_folds));
      emit(results, cc, d.name);
    } else if (coarse->parsed()) {
      Dataset d = load_csv(g_in);
      if (d.X.cols() != 784) throw data_error(g_in + ": expected 784 pixel columns");
      std::ofstream out(g_out);
      if (!out) throw invalid_input("cannot write " + g_out);
      char buf[32];
      for (Eigen::Index i = 0; i < d.size(); ++i) {
        RMat img(28, 28);
        for (int r = 0; r < 28; ++r) img.row(r) = d.X.row(i).segment(28 * r, 28);
        RMat small = coarse_grain_mnist(img);
        for (int r = 0; r < 16; ++r)
          for (int c = 0; c < 16; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g,", small(r, c));
            out << buf;
          }
        out << (d.y(i) > 0 ? 1 : 0) << '\n';
      }
    }
  } catch (const data_error& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kData;
  } catch (const invalid_input& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const numerical_error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kOk;
}
