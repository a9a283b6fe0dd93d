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

#include <cmath>
#include <functional>
#include <string>
#include <vector>

// Minimizers over flat real vectors. An objective is any callable
// double(const RVec& x, RVec& grad) that fills grad and returns f(x).

namespace vqc {

struct LineSearchCfg {
  double c1 = 1e-4;
  double c2 = 0.9;
  double rho = 0.5;
  double alpha0 = 1.0;
  int max_backtracks = 50;
  // Strong Wolfe: backtracking_search also demands |g(x+ad).d| <= c2 |g(x).d|;
  // cg_minimize switches to the bracketing wolfe_search.
  bool wolfe = false;
};

inline void validate(const LineSearchCfg& c) {
  if (!(0 < c.c1 && c.c1 < c.c2 && c.c2 < 1)) throw invalid_input("line search: need 0 < c1 < c2 < 1");
  if (!(0 < c.rho && c.rho < 1)) throw invalid_input("line search: need 0 < rho < 1");
  if (!(c.alpha0 > 0) || c.max_backtracks < 1) throw invalid_input("line search: bad alpha0/max_backtracks");
}

struct LineSearchResult {
  double alpha = 0.0;
  double f = 0.0;
  RVec g;
  bool ok = false;  // false: backtracks exhausted, fields hold the smallest trial
  int evals = 0;
};

struct OptimReport {
  RVec x;
  double f = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  bool aborted = false;  // non-finite objective
  int line_search_failures = 0;
  std::vector<double> trace;  // f at x0, then after every iteration
  std::string message;
};

template <class F>
LineSearchResult backtracking_search(F&& f, const RVec& x, double fx, const RVec& gx, const RVec& d,
                                     const LineSearchCfg& cfg) {
  validate(cfg);
  const double gd = gx.dot(d);
  if (!(gd < 0)) throw invalid_input("backtracking_search: direction is not a descent direction");
  LineSearchResult r;
  double a = cfg.alpha0;
  RVec g(x.size());
  for (int k = 0; k < cfg.max_backtracks; ++k, a *= cfg.rho) {
    double fa = f(RVec(x + a * d), g);
    ++r.evals;
    r.alpha = a;
    r.f = fa;
    r.g = g;
    if (!std::isfinite(fa)) continue;
    if (fa > fx + cfg.c1 * a * gd) continue;
    if (cfg.wolfe && std::abs(g.dot(d)) > cfg.c2 * std::abs(gd)) continue;
    r.ok = true;
    return r;
  }
  return r;
}

template <class F>
LineSearchResult backtracking_search(F&& f, const RVec& x, const RVec& d, const LineSearchCfg& cfg) {
  RVec g(x.size());
  double fx = f(x, g);
  return backtracking_search(f, x, fx, g, d, cfg);
}

// Bracketing line search for the strong Wolfe conditions, with bisection
// in the zoom phase.
template <class F>
LineSearchResult wolfe_search(F&& f, const RVec& x, double fx, const RVec& gx, const RVec& d,
                              const LineSearchCfg& cfg) {
  validate(cfg);
  const double gd0 = gx.dot(d);
  if (!(gd0 < 0)) throw invalid_input("wolfe_search: direction is not a descent direction");
  LineSearchResult r;
  RVec g(x.size());
  auto eval = [&](double a, double& fa, double& ga) {
    fa = f(RVec(x + a * d), g);
    ga = g.dot(d);
    ++r.evals;
  };
  auto accept = [&](double a, double fa) {
    r.alpha = a;
    r.f = fa;
    r.g = g;
    r.ok = true;
    return r;
  };
  auto zoom = [&](double lo, double flo, double hi) -> LineSearchResult {
    for (int k = 0; k < cfg.max_backtracks; ++k) {
      double a = 0.5 * (lo + hi), fa, ga;
      eval(a, fa, ga);
      if (!std::isfinite(fa) || fa > fx + cfg.c1 * a * gd0 || fa >= flo) {
        hi = a;
      } else {
        if (std::abs(ga) <= -cfg.c2 * gd0) return accept(a, fa);
        if (ga * (hi - lo) >= 0) hi = lo;
        lo = a;
        flo = fa;
      }
    }
    // Best Armijo point seen so far, if any.
    if (lo > 0) {
      double fa, ga;
      eval(lo, fa, ga);
      LineSearchResult out = accept(lo, fa);
      return out;
    }
    r.ok = false;
    r.alpha = 0;
    r.f = fx;
    r.g = gx;
    return r;
  };

  double prev = 0.0, fprev = fx, a = cfg.alpha0;
  for (int k = 0; k < cfg.max_backtracks; ++k) {
    double fa, ga;
    eval(a, fa, ga);
    if (!std::isfinite(fa) || fa > fx + cfg.c1 * a * gd0 || (k > 0 && fa >= fprev)) return zoom(prev, fprev, a);
    if (std::abs(ga) <= -cfg.c2 * gd0) return accept(a, fa);
    if (ga >= 0) return zoom(a, fa, prev);
    prev = a;
    fprev = fa;
    a *= 2.0;
  }
  double fa, ga;
  eval(prev, fa, ga);
  return accept(prev, fa);
}

namespace detail {

template <class F, class Search>
OptimReport cg_core(F&& f, const RVec& x0, int iters, Search&& search) {
  OptimReport rep;
  rep.x = x0;
  RVec g(x0.size());
  rep.f = f(rep.x, g);
  rep.trace.push_back(rep.f);
  if (!std::isfinite(rep.f) || !g.allFinite()) {
    rep.aborted = true;
    rep.message = "non-finite objective at start";
    rep.grad_norm = NAN;
    return rep;
  }
  RVec d = -g;
  for (int k = 0; k < iters; ++k) {
    const double gg = g.squaredNorm();
    if (gg == 0.0) {
      rep.converged = true;
      break;
    }
    if (!(g.dot(d) < 0)) d = -g;
    LineSearchResult ls = search(rep.x, rep.f, g, d);
    if (!ls.ok && d != -g) {
      d = -g;
      ls = search(rep.x, rep.f, g, d);
    }
    ++rep.iterations;
    if (!ls.ok) {
      ++rep.line_search_failures;
      d = -g;
      rep.trace.push_back(rep.f);
      continue;
    }
    rep.x += ls.alpha * d;
    rep.f = ls.f;
    const double beta = ls.g.squaredNorm() / gg;  // Fletcher-Reeves
    g = ls.g;
    d = -g + beta * d;
    rep.trace.push_back(rep.f);
    if (!std::isfinite(rep.f) || !g.allFinite()) {
      rep.aborted = true;
      rep.message = "non-finite objective";
      break;
    }
  }
  rep.grad_norm = g.norm();
  return rep;
}

}  // namespace detail

// Fletcher-Reeves nonlinear CG with Armijo backtracking. Runs exactly
// `iters` iterations unless the gradient vanishes. A non-descent direction
// triggers a restart along -g; when even -g finds no Armijo step the
// iterate stays put, so the trace never increases.
template <class F>
OptimReport cg_minimize(F&& f, const RVec& x0, int iters, LineSearchCfg cfg = {}) {
  return detail::cg_core(f, x0, iters, [&](const RVec& x, double fx, const RVec& g, const RVec& d) {
    return cfg.wolfe ? wolfe_search(f, x, fx, g, d, cfg) : backtracking_search(f, x, fx, g, d, cfg);
  });
}

// Same iteration with a caller-supplied step length alpha(x, d), e.g. the
// exact minimizer along d for a quadratic.
template <class F, class Step>
OptimReport cg_minimize_with_step(F&& f, const RVec& x0, int iters, Step&& step) {
  return detail::cg_core(f, x0, iters, [&](const RVec& x, double, const RVec&, const RVec& d) {
    LineSearchResult r;
    r.alpha = step(x, d);
    r.g.resize(x.size());
    r.f = f(RVec(x + r.alpha * d), r.g);
    r.ok = true;
    r.evals = 1;
    return r;
  });
}

// Observer for BFGS updates: (s, y, H after the update).
using BfgsHook = std::function<void(const RVec&, const RVec&, const RMat&)>;

// BFGS on the inverse Hessian with a strong-Wolfe line search. The first
// update rescales H0 = I by s'y / y'y; updates with s'y <= 1e-12 are skipped.
template <class F>
OptimReport bfgs_minimize(F&& f, const RVec& x0, int max_iters, double grad_tol, LineSearchCfg cfg = {},
                          const BfgsHook& hook = {}) {
  OptimReport rep;
  const Eigen::Index dim = x0.size();
  rep.x = x0;
  RVec g(dim);
  rep.f = f(rep.x, g);
  rep.trace.push_back(rep.f);
  if (!std::isfinite(rep.f) || !g.allFinite()) {
    rep.aborted = true;
    rep.message = "non-finite objective at start";
    rep.grad_norm = NAN;
    return rep;
  }
  RMat H = RMat::Identity(dim, dim);
  bool scaled = false;
  for (int k = 0; k < max_iters; ++k) {
    if (g.norm() <= grad_tol) {
      rep.converged = true;
      break;
    }
    RVec d = -H * g;
    if (!(g.dot(d) < 0)) {
      H.setIdentity();
      scaled = false;
      d = -g;
    }
    LineSearchResult ls = wolfe_search(f, rep.x, rep.f, g, d, cfg);
    if (!ls.ok && !H.isIdentity()) {
      H.setIdentity();
      scaled = false;
      d = -g;
      ls = wolfe_search(f, rep.x, rep.f, g, d, cfg);
    }
    ++rep.iterations;
    if (!ls.ok) {
      ++rep.line_search_failures;
      rep.message = "line search failed";
      break;
    }
    RVec s = ls.alpha * d;
    RVec y = ls.g - g;
    rep.x += s;
    rep.f = ls.f;
    g = ls.g;
    rep.trace.push_back(rep.f);
    if (!std::isfinite(rep.f) || !g.allFinite()) {
      rep.aborted = true;
      rep.message = "non-finite objective";
      break;
    }
    const double sy = s.dot(y);
    if (sy <= tol::sy_guard) continue;
    if (!scaled) {
      H *= sy / y.squaredNorm();
      scaled = true;
    }
    const double rho = 1.0 / sy;
    RVec Hy = H * y;
    // (I - rho s y')H(I - rho y s') + rho s s', expanded
    H += (rho * rho * y.dot(Hy) + rho) * (s * s.transpose()) - rho * (Hy * s.transpose() + s * Hy.transpose());
    if (hook) hook(s, y, H);
  }
  if (!rep.converged && g.norm() <= grad_tol) rep.converged = true;
  rep.grad_norm = g.norm();
  return rep;
}

}  // namespace vqc
