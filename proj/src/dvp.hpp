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

// Dual variable perturbation: dynamically differentially private
// collaborative learning. Each iteration perturbs the dual with noise whose
// rate is calibrated from the per-node privacy parameter, optionally adds
// strong convexity, and otherwise follows the consensus iteration.

#ifndef DPADMM_DVP_HPP_
#define DPADMM_DVP_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <map>

#include "consensus.hpp"
#include "rng.hpp"

namespace dpadmm {

// Per-node per-iteration privacy calibration.
//   alpha      the requested budget, > 0
//   alpha_hat  the effective rate after the branch (alpha/2 in the else
//              branch, where the raw value was <= 0)
//   phi        added strong convexity; zero in the first branch, strictly
//              positive in the second
//   zeta       rate of the noise density ~ exp(-zeta ||eps||); always > 0
struct PrivacySetting {
  double alpha = 0.0;
  double alpha_hat = 0.0;
  double phi = 0.0;
  double zeta = 0.0;
};

// Branch logic:
//   alpha_hat = alpha - 2 ln(1 + c2 / ((n_v/c1)(rho + 2 eta N_v)))
//   if alpha_hat > 0:  phi = 0, zeta = alpha_hat
//   else:              phi = c2 / ((n_v/c1)(e^{alpha/4} - 1)) - rho - 2 eta N_v
//                      zeta = alpha / 2
// Throws InvalidAlpha when alpha <= 0.
PrivacySetting compute_privacy_params(double alpha, int n_v, const Hyper& h,
                                      int neighbor_count);

// Draws from the density proportional to exp(-zeta ||eps||) in dimension
// dim: direction uniform on the unit sphere, magnitude Gamma(dim, 1/zeta)
// (the exact radial law of that density). Throws InvalidZeta.
Eigen::VectorXd sample_noise(int dim, double zeta, Rng& rng);

// beta = lam + (c1 / (2 n_v)) eps
Eigen::VectorXd perturb_dual(const Eigen::VectorXd& lam,
                             const Eigen::VectorXd& eps, double c1, int n_v);

// The perturbed augmented Lagrangian:
// Z_v(f) + (phi/2)||f||^2 + 2 beta^T f + eta sum_i ||f - 0.5(f_v(t)+f_i(t))||^2.
// With phi = 0 and beta = lam this is exactly augmented_local.
double private_augmented_local(const Eigen::VectorXd& f,
                               const Eigen::VectorXd& beta, double phi,
                               const NodeState& state,
                               const std::vector<Eigen::VectorXd>& neighbor_f,
                               const NodeDataset& d, const Hyper& h,
                               const Loss& loss = kLogistic);
Eigen::VectorXd private_augmented_local_grad(
    const Eigen::VectorXd& f, const Eigen::VectorXd& beta, double phi,
    const NodeState& state, const std::vector<Eigen::VectorXd>& neighbor_f,
    const NodeDataset& d, const Hyper& h, const Loss& loss = kLogistic);

Eigen::VectorXd private_primal_update(
    const NodeState& state, const Eigen::VectorXd& beta, double phi,
    const std::vector<Eigen::VectorXd>& neighbor_f, const NodeDataset& d,
    const Hyper& h, const SolverCfg& solver, SolverReport* report = nullptr,
    const Loss& loss = kLogistic);

// Privacy budget per node and iteration.
class AlphaSchedule {
 public:
  static AlphaSchedule constant(double alpha);
  static AlphaSchedule per_node(std::map<int, double> by_node);
  static AlphaSchedule from_fn(std::function<double(int, int)> fn);
  double at(int node, int iter) const { return fn_(node, iter); }

 private:
  std::function<double(int, int)> fn_;
};

struct PrivateRunOptions {
  // Debug mode: eps == 0 everywhere. With privacy settings in the phi = 0
  // branch the trajectory must equal the non-private run bit for bit.
  bool disable_noise = false;
};

// One full private run. Per iteration and node: calibrate, draw noise,
// perturb the dual, minimize the perturbed Lagrangian, broadcast, then the
// ordinary dual ascent (the recursion uses lam, never beta). The neighbor
// count is re-read from the current phase's topology every iteration, so
// the mechanism stays calibrated across topology changes.
Trajectory run_private(const TopologySchedule& sched,
                       const std::vector<NodeDataset>& data, const Hyper& h,
                       const AlphaSchedule& alpha, int iterations,
                       uint64_t seed, const SolverCfg& solver = {},
                       const PrivateRunOptions& options = {});

// Empirical check of the per-iteration privacy bound: runs one DVP
// iteration `trials` times on each of two datasets at Hamming distance one,
// projects the outputs onto a fixed unit vector, histograms both sides with
// shared cells (the outermost cells are unbounded so tail mass never
// starves a bin), and returns the largest smoothed count ratio in either
// direction. This is a necessary-condition check on a 1-D marginal, not a
// density-ratio estimate. Throws NotNeighbors when the datasets do not
// differ in exactly one sample.
double ddp_ratio_check(const NodeDataset& dataset,
                       const NodeDataset& neighbor_dataset, double alpha,
                       const Hyper& h, int trials, int bins, uint64_t seed);

}  // namespace dpadmm

#endif  // DPADMM_DVP_HPP_
