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

#include "objective.hpp"

#include <cmath>

#include "error.hpp"

namespace dpadmm {

double logistic_loss(double z) {
  // Naive log(1+exp(-z)) overflows for z < -700.
  if (z >= 0.0) return std::log1p(std::exp(-z));
  return -z + std::log1p(std::exp(z));
}

double logistic_loss_d1(double z) {
  if (z >= 0.0) {
    double e = std::exp(-z);
    return -e / (1.0 + e);
  }
  return -1.0 / (1.0 + std::exp(z));
}

double logistic_loss_d2(double z) {
  // Symmetric form: s(1-s) computed at 1/(1+e^{-z}) loses the small factor
  // to rounding once |z| > 36.
  double e = std::exp(-std::abs(z));
  return e / ((1.0 + e) * (1.0 + e));
}

double regularizer(const Eigen::VectorXd& f) { return 0.5 * f.squaredNorm(); }

Eigen::VectorXd regularizer_grad(const Eigen::VectorXd& f) { return f; }

namespace {

void check_dataset(const Eigen::VectorXd& f, const NodeDataset& d) {
  if (d.samples.empty()) {
    fail(ErrorCode::kEmptyDataset, "dataset of node " +
                                       std::to_string(d.owner) + " is empty");
  }
  if (d.dim() != f.size()) {
    fail(ErrorCode::kDimensionMismatch,
         "classifier dimension " + std::to_string(f.size()) +
             " != data dimension " + std::to_string(d.dim()));
  }
}

double loss_term(const Eigen::VectorXd& f, const NodeDataset& d, double c1,
                 const Loss& loss) {
  double sum = 0.0;
  for (const auto& s : d.samples) {
    sum += loss.value(s.label * f.dot(s.features));
  }
  return c1 / static_cast<double>(d.size()) * sum;
}

void loss_term_grad(const Eigen::VectorXd& f, const NodeDataset& d, double c1,
                    const Loss& loss, Eigen::VectorXd& grad) {
  const double scale = c1 / static_cast<double>(d.size());
  for (const auto& s : d.samples) {
    double w = loss.d1(s.label * f.dot(s.features)) * s.label;
    grad.noalias() += scale * w * s.features;
  }
}

}  // namespace

double local_objective(const Eigen::VectorXd& f, const NodeDataset& d,
                       const Hyper& h, const Loss& loss) {
  check_dataset(f, d);
  return loss_term(f, d, h.c1, loss) + h.rho * regularizer(f);
}

Eigen::VectorXd local_objective_grad(const Eigen::VectorXd& f,
                                     const NodeDataset& d, const Hyper& h,
                                     const Loss& loss) {
  check_dataset(f, d);
  Eigen::VectorXd grad = h.rho * f;
  loss_term_grad(f, d, h.c1, loss, grad);
  return grad;
}

double centralized_objective(const Eigen::VectorXd& f,
                             const std::vector<NodeDataset>& all_data,
                             const Hyper& h, const Loss& loss) {
  if (all_data.empty()) fail(ErrorCode::kEmptyDataset, "no node datasets");
  double sum = 0.0;
  for (const auto& d : all_data) {
    check_dataset(f, d);
    sum += loss_term(f, d, h.c1, loss);
  }
  double kappa = h.rho * static_cast<double>(all_data.size());
  return sum + kappa * regularizer(f);
}

Eigen::VectorXd centralized_objective_grad(
    const Eigen::VectorXd& f, const std::vector<NodeDataset>& all_data,
    const Hyper& h, const Loss& loss) {
  if (all_data.empty()) fail(ErrorCode::kEmptyDataset, "no node datasets");
  double kappa = h.rho * static_cast<double>(all_data.size());
  Eigen::VectorXd grad = kappa * f;
  for (const auto& d : all_data) {
    check_dataset(f, d);
    loss_term_grad(f, d, h.c1, loss, grad);
  }
  return grad;
}

double empirical_risk(const Eigen::VectorXd& f, const NodeDataset& d,
                      double c1) {
  check_dataset(f, d);
  return loss_term(f, d, c1, kLogistic);
}

int predict(const Eigen::VectorXd& f, const Eigen::VectorXd& x) {
  if (f.size() != x.size()) {
    fail(ErrorCode::kDimensionMismatch,
         "classifier dimension " + std::to_string(f.size()) +
             " != input dimension " + std::to_string(x.size()));
  }
  return f.dot(x) >= 0.0 ? +1 : -1;
}

}  // namespace dpadmm
