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

// Non-private distributed ERM: per-node primal minimization of the reduced
// augmented Lagrangian and dual ascent, with synchronous broadcast rounds.

#ifndef DPADMM_CONSENSUS_HPP_
#define DPADMM_CONSENSUS_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <vector>

#include "dataset.hpp"
#include "objective.hpp"
#include "solver.hpp"
#include "topology.hpp"

namespace dpadmm {

struct NodeState {
  Eigen::VectorXd f;       // current primal f_v(t)
  Eigen::VectorXd lam;     // dual, starts at zero
  Eigen::VectorXd f_prev;  // previous broadcast f_v(t-1)
};

struct NodeSnap {
  Eigen::VectorXd f;
  Eigen::VectorXd lam;
};

struct PrivacyRecord {
  double alpha = 0.0;
  double phi = 0.0;
  double zeta = 0.0;
  double noise_norm = 0.0;
};

// Per-iteration state of a whole run. snapshots[t] maps node id to its
// state after t iterations (t = 0 holds the initialization), so there are
// run-length + 1 entries. privacy[t] is filled by the private engine only
// and describes the perturbation applied during iteration t.
struct Trajectory {
  std::vector<std::map<int, NodeSnap>> snapshots;
  std::vector<std::map<int, PrivacyRecord>> privacy;
};

namespace detail {
// Value (and gradient, when grad is non-null) of
//   Z_v(f) + (phi/2)||f||^2 + 2 beta^T f + eta * sum_i ||f - mid_i||^2
// with mid_i = 0.5 (f_self + f_i) precomputed by the caller. Both engines
// evaluate through this one function, which is what makes the noise-free
// private run reproduce the non-private one bit for bit.
double augmented_eval(const Eigen::VectorXd& f, Eigen::VectorXd* grad,
                      const Eigen::VectorXd& beta, double phi,
                      const std::vector<Eigen::VectorXd>& midpoints,
                      const NodeDataset& d, const Hyper& h, const Loss& loss);

std::vector<Eigen::VectorXd> midpoints(const Eigen::VectorXd& f_self,
                                       const std::vector<Eigen::VectorXd>& neighbor_f);

// Shared driver for run / run_private; the hook plugs in the perturbation.
}  // namespace detail

// The reduced augmented Lagrangian L_v^N evaluated at f:
// Z_v(f|D_v) + 2 lam^T f + eta sum_i ||f - 0.5 (f_v(t) + f_i(t))||^2.
double augmented_local(const Eigen::VectorXd& f, const NodeState& state,
                       const std::vector<Eigen::VectorXd>& neighbor_f,
                       const NodeDataset& d, const Hyper& h,
                       const Loss& loss = kLogistic);
Eigen::VectorXd augmented_local_grad(const Eigen::VectorXd& f,
                                     const NodeState& state,
                                     const std::vector<Eigen::VectorXd>& neighbor_f,
                                     const NodeDataset& d, const Hyper& h,
                                     const Loss& loss = kLogistic);

// argmin_f L_v^N, warm-started from state.f. Throws SolverDidNotConverge.
Eigen::VectorXd primal_update(const NodeState& state,
                              const std::vector<Eigen::VectorXd>& neighbor_f,
                              const NodeDataset& d, const Hyper& h,
                              const SolverCfg& solver,
                              SolverReport* report = nullptr,
                              const Loss& loss = kLogistic);

// lam + (eta/2) sum_w (f_new - f_w_new)
Eigen::VectorXd dual_update(const NodeState& state,
                            const Eigen::VectorXd& f_new,
                            const std::vector<Eigen::VectorXd>& neighbor_f_new,
                            double eta);

// Full synchronous run: every iteration all nodes minimize, then broadcast,
// then all update duals. f_v(0) is uniform on [-0.01, 0.01]^d per node
// (seeded), lam_v(0) = 0. Across topology changes, surviving ids keep their
// state, ids absent from the new phase are dropped, and fresh ids are
// initialized from the seed.
Trajectory run(const TopologySchedule& sched,
               const std::vector<NodeDataset>& data, const Hyper& h,
               int iterations, uint64_t init_seed,
               const SolverCfg& solver = {});

}  // namespace dpadmm

#endif  // DPADMM_CONSENSUS_HPP_
