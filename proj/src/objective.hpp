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

// Loss, regularizer, local and centralized objectives, empirical risk, and
// the decision rule. All pure functions.

#ifndef DPADMM_OBJECTIVE_HPP_
#define DPADMM_OBJECTIVE_HPP_

#include <Eigen/Core>
#include <vector>

#include "dataset.hpp"

namespace dpadmm {

// Run-level constants: loss weight c1 (must satisfy c1 <= n_v for every
// participating node), regularizer weight rho, consensus step eta, and the
// loss-curvature bound c2 (1/4 for the logistic loss).
struct Hyper {
  double c1 = 1.0;
  double rho = 1.0;
  double eta = 1.0;
  double c2 = 0.25;
};

// log(1 + exp(-z)), overflow-safe on the whole real line.
double logistic_loss(double z);
// First derivative, -1/(1+e^z); bounded by 1 in magnitude.
double logistic_loss_d1(double z);
// Second derivative, e^z/(1+e^z)^2; in (0, 1/4].
double logistic_loss_d2(double z);

// Margin-loss seam for the inner solvers. Plain function pointers keep the
// per-sample evaluation cheap. Defaults to the logistic loss everywhere;
// tests substitute quadratics to get closed-form optima.
struct Loss {
  double (*value)(double);
  double (*d1)(double);
};
inline constexpr Loss kLogistic{&logistic_loss, &logistic_loss_d1};

// R(f) = 0.5 ||f||^2, 1-strongly convex.
double regularizer(const Eigen::VectorXd& f);
Eigen::VectorXd regularizer_grad(const Eigen::VectorXd& f);

// Z_v(f | D_v) = (c1/n_v) sum_i L(y_i f.x_i) + rho R(f)
double local_objective(const Eigen::VectorXd& f, const NodeDataset& d,
                       const Hyper& h, const Loss& loss = kLogistic);
Eigen::VectorXd local_objective_grad(const Eigen::VectorXd& f,
                                     const NodeDataset& d, const Hyper& h,
                                     const Loss& loss = kLogistic);

// Z_1(f | union of all node data) = sum_v (c1/n_v) sum_i L(y_iv f.x_iv)
// + kappa R(f) with kappa = P rho, the weight at which the consensus
// problem with per-node regularizer rho restricts to this objective.
double centralized_objective(const Eigen::VectorXd& f,
                             const std::vector<NodeDataset>& all_data,
                             const Hyper& h, const Loss& loss = kLogistic);
Eigen::VectorXd centralized_objective_grad(
    const Eigen::VectorXd& f, const std::vector<NodeDataset>& all_data,
    const Hyper& h, const Loss& loss = kLogistic);

// The loss term alone, (c1/n_v) sum_i L_lr(y_i f.x_i); the convergence
// metric plotted by the harness.
double empirical_risk(const Eigen::VectorXd& f, const NodeDataset& d,
                      double c1);

// sign(f.x) with sign(0) = +1: a zero margin is flagged as an attack.
int predict(const Eigen::VectorXd& f, const Eigen::VectorXd& x);

}  // namespace dpadmm

#endif  // DPADMM_OBJECTIVE_HPP_
