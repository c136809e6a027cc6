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

// Shared iteration driver behind the non-private and private runs.

#ifndef DPADMM_CONSENSUS_ENGINE_HPP_
#define DPADMM_CONSENSUS_ENGINE_HPP_

#include <Eigen/Core>
#include <functional>

#include "consensus.hpp"

namespace dpadmm::detail {

// What the privacy hook contributes to one node's primal step. tol_scale
// loosens the solver tolerance in proportion to the gradient shift the
// noise injects; it is exactly 1 when the noise is zero, so the noise-free
// private run keeps the non-private stopping rule bit for bit.
struct Perturbation {
  Eigen::VectorXd beta;
  double phi = 0.0;
  double tol_scale = 1.0;
  PrivacyRecord record;
};

using PerturbHook = std::function<Perturbation(
    int node, int iter, const NodeState& state, int n_v, int degree, int dim)>;

Eigen::VectorXd solve_primal(const NodeState& state,
                             const Eigen::VectorXd& beta, double phi,
                             const std::vector<Eigen::VectorXd>& neighbor_f,
                             const NodeDataset& d, const Hyper& h,
                             const SolverCfg& solver, SolverReport* report,
                             const Loss& loss);

Eigen::VectorXd initial_primal(int dim, uint64_t seed, int node, int iter);

// hook == nullptr runs the plain consensus iteration (beta = lam, phi = 0).
Trajectory run_engine(const TopologySchedule& sched,
                      const std::vector<NodeDataset>& data, const Hyper& h,
                      int iterations, uint64_t seed, const SolverCfg& solver,
                      const PerturbHook* hook);

}  // namespace dpadmm::detail

#endif  // DPADMM_CONSENSUS_ENGINE_HPP_
