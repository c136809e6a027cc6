// Copyright 2026 The dpadmm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Gradient descent with Armijo backtracking for the per-node subproblems.
// Trial steps use the Barzilai-Borwein spectral length, which keeps the
// iteration count low at the condition numbers the loss weight c1 produces.

#ifndef DPADMM_SOLVER_HPP_
#define DPADMM_SOLVER_HPP_

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "error.hpp"

namespace dpadmm {

struct SolverCfg {
  double tol = 1e-6;    // gradient-norm stopping tolerance
  int max_iters = 500;  // outer iteration budget
};

struct SolverReport {
  int iterations = 0;
  double grad_norm = 0.0;
};

// fn(x, grad) evaluates the objective at x and fills grad; the minimizer is
// returned once ||grad|| <= cfg.tol. Throws SolverDidNotConverge when the
// budget runs out or backtracking stalls.
template <typename F>
Eigen::VectorXd minimize(F&& fn, Eigen::VectorXd x, const SolverCfg& cfg,
                         SolverReport* report = nullptr) {
  const double armijo = 1e-4;
  Eigen::VectorXd g(x.size()), x_prev(x.size()), g_prev(x.size());
  Eigen::VectorXd trial(x.size()), g_trial(x.size());
  double fx = fn(x, g);
  double step = 1.0;
  bool have_prev = false;

  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    double gnorm2 = g.squaredNorm();
    double gnorm = std::sqrt(gnorm2);
    if (gnorm <= cfg.tol) {
      if (report) *report = {it, gnorm};
      return x;
    }

    if (have_prev) {
      // BB1 step: s.s / s.y, positive for convex objectives.
      Eigen::VectorXd s = x - x_prev;
      Eigen::VectorXd y = g - g_prev;
      double sy = s.dot(y);
      step = (sy > 0.0) ? s.squaredNorm() / sy : 1.0;
      step = std::clamp(step, 1e-12, 1e12);
    }

    double t = step;
    double f_trial;
    int backtracks = 0;
    while (true) {
      trial = x - t * g;
      f_trial = fn(trial, g_trial);
      if (f_trial <= fx - armijo * t * gnorm2) break;
      t *= 0.5;
      if (++backtracks > 60) {
        fail(ErrorCode::kSolverDidNotConverge,
             "line search stalled at gradient norm " + std::to_string(gnorm));
      }
    }

    x_prev = x;
    g_prev = g;
    x.swap(trial);
    g.swap(g_trial);
    fx = f_trial;
    have_prev = true;
  }

  double gnorm = g.norm();
  if (gnorm <= cfg.tol) {
    if (report) *report = {it, gnorm};
    return x;
  }
  fail(ErrorCode::kSolverDidNotConverge,
       "gradient norm " + std::to_string(gnorm) + " above tolerance " +
           std::to_string(cfg.tol) + " after " + std::to_string(cfg.max_iters) +
           " iterations");
}

}  // namespace dpadmm

#endif  // DPADMM_SOLVER_HPP_
