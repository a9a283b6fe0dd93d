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
#include <vqc/optim.hpp>
#include <vqc/parallel.hpp>

#include <cstdint>
#include <limits>
#include <optional>

namespace vqc {

// Inverse:    || U^H Phi(lambda) U_c - I ||_F^p
// Difference: || U - Phi(lambda) U_c ||_F^p
enum class VcrForm { Inverse, Difference };

struct VcrProblem {
  CMat target;
  AnsatzKind kind = AnsatzKind::CnotBased;
  int n = 1;
  double dt = 0.1;
  double p = 2.0;
  int restarts = 20;
  std::uint64_t seed = 0;
  VcrForm form = VcrForm::Inverse;
  int max_iters = 2000;
  double grad_tol = 1e-10;
};

struct VcrResult {
  RVec theta;
  double lambda = 0.0;
  double cost = std::numeric_limits<double>::infinity();
  int L = 0;
  bool converged = false;
  int restart = -1;  // index of the winning restart
  std::vector<double> restart_costs;
  std::vector<double> trace;  // cost trace of the winning run
};

inline void validate(const VcrProblem& pr) {
  if (pr.target.rows() != (Eigen::Index(1) << pr.n) || pr.target.cols() != pr.target.rows())
    throw invalid_input("vcr: target dimension does not match 2^n");
  if (unitarity_defect(pr.target) > tol::unitary_load) throw invalid_input("vcr: target is not unitary");
  if (!(pr.p > 0)) throw invalid_input("vcr: exponent p must be positive");
  if (pr.restarts < 1) throw invalid_input("vcr: need at least one restart");
}

inline AnsatzSpec vcr_spec(const VcrProblem& pr, int L) { return {pr.kind, pr.n, L, pr.dt}; }

// Cost and optional gradient over (theta, lambda), lambda last. With
// W = e^{-i lambda} M U_c, E = W - C and s = ||E||^2:
//   ds/dtheta_j = 2 Re Tr[K_j T_j], T_last = U_c E^H e^{-i lambda} M, T <- G^H T G
//   ds/dlambda  = 2 Re Tr[E^H (-i) W]
inline double vcr_cost(const VcrProblem& pr, int L, const RVec& theta, double lambda, RVec* grad = nullptr) {
  const AnsatzSpec spec = vcr_spec(pr, L);
  const int n = pr.n;
  const auto ops = circuit_ops(spec, theta);
  const CMat uc = ops_unitary(ops, n);
  const cplx ph = std::polar(1.0, -lambda);
  const bool inv = pr.form == VcrForm::Inverse;
  CMat w = inv ? CMat(ph * (pr.target.adjoint() * uc)) : CMat(ph * uc);
  CMat e = inv ? CMat(w - identity(uc.rows())) : CMat(w - pr.target);
  const double s = e.squaredNorm();
  const double cost = std::pow(s, pr.p / 2);
  if (!grad) return cost;

  grad->setZero(theta.size() + 1);
  const double outer = s > 0 ? (pr.p / 2) * std::pow(s, pr.p / 2 - 1) : 0.0;
  CMat f = inv ? CMat(e.adjoint() * ph * pr.target.adjoint()) : CMat(e.adjoint() * ph);
  CMat t = uc * f;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (it->param >= 0) (*grad)(it->param) += 2.0 * trace_with(it->generator(), t, n).real();
    LocalOp inv_op = it->adjoint();
    apply_left(inv_op, t, n);
    apply_right(*it, t, n);
  }
  (*grad)(theta.size()) = 2.0 * (cplx(0, -1) * (e.adjoint() * w).trace()).real();
  *grad *= outer;
  return cost;
}

inline VcrResult vcr_synthesize(const VcrProblem& pr, int L, LineSearchCfg ls = {}) {
  validate(pr);
  const AnsatzSpec spec = vcr_spec(pr, L);
  const int np = param_count(spec);
  std::vector<VcrResult> runs(pr.restarts);
  parallel_for(std::size_t(pr.restarts), [&](std::size_t r) {
    Rng rng(derive_seed(pr.seed, r));
    RVec x0(np + 1);
    x0.head(np) = random_params(spec, rng);
    x0(np) = rng.uniform(0.0, 2.0 * std::numbers::pi);
    auto f = [&](const RVec& x, RVec& g) { return vcr_cost(pr, L, x.head(np), x(np), &g); };
    OptimReport rep = bfgs_minimize(f, x0, pr.max_iters, pr.grad_tol, ls);
    VcrResult& out = runs[r];
    out.L = L;
    out.restart = int(r);
    out.theta = rep.x.head(np);
    out.lambda = rep.x(np);
    out.cost = std::isfinite(rep.f) && !rep.aborted ? rep.f : std::numeric_limits<double>::infinity();
    out.converged = !rep.aborted && std::isfinite(rep.f);
    out.trace = std::move(rep.trace);
  });
  VcrResult best;
  best.L = L;
  for (const auto& r : runs) {
    best.restart_costs.push_back(r.cost);
    if (r.cost < best.cost) {
      auto costs = std::move(best.restart_costs);
      best = r;
      best.restart_costs = std::move(costs);
    }
  }
  if (best.restart < 0) best.converged = false;
  return best;
}

struct LDeltaResult {
  std::optional<int> L_delta;
  int best_L = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<VcrResult> runs;  // one per grid entry visited
};

// Smallest grid L whose best cost is <= delta. Stops at the first hit.
inline LDeltaResult l_delta_search(const VcrProblem& pr, double delta, const std::vector<int>& grid,
                                   LineSearchCfg ls = {}) {
  if (grid.empty()) throw invalid_input("l_delta_search: empty layer grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1]) throw invalid_input("l_delta_search: grid must be ascending");
  LDeltaResult out;
  for (int L : grid) {
    VcrResult r = vcr_synthesize(pr, L, ls);
    if (r.cost < out.best_cost) {
      out.best_cost = r.cost;
      out.best_L = L;
    }
    out.runs.push_back(r);
    if (r.cost <= delta) {
      out.L_delta = L;
      break;
    }
  }
  return out;
}

}  // namespace vqc
