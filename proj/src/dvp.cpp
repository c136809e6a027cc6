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

#include "dvp.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "consensus_engine.hpp"
#include "error.hpp"

namespace dpadmm {

PrivacySetting compute_privacy_params(double alpha, int n_v, const Hyper& h,
                                      int neighbor_count) {
  if (!(alpha > 0.0)) {
    fail(ErrorCode::kInvalidAlpha,
         "privacy parameter must be positive, got " + std::to_string(alpha));
  }
  if (n_v < 1) fail(ErrorCode::kEmptyDataset, "n_v must be >= 1");

  const double a = static_cast<double>(n_v) / h.c1;
  const double b = h.rho + 2.0 * h.eta * static_cast<double>(neighbor_count);

  PrivacySetting ps;
  ps.alpha = alpha;
  ps.alpha_hat = alpha - 2.0 * std::log1p(h.c2 / (a * b));
  if (ps.alpha_hat > 0.0) {
    ps.phi = 0.0;
  } else {
    ps.phi = h.c2 / (a * std::expm1(alpha / 4.0)) - b;
    ps.alpha_hat = alpha / 2.0;
  }
  ps.zeta = ps.alpha_hat;
  return ps;
}

Eigen::VectorXd sample_noise(int dim, double zeta, Rng& rng) {
  if (!(zeta > 0.0)) {
    fail(ErrorCode::kInvalidZeta,
         "noise rate must be positive, got " + std::to_string(zeta));
  }
  if (dim < 1) fail(ErrorCode::kDimensionMismatch, "dimension must be >= 1");

  Eigen::VectorXd direction(dim);
  double norm = 0.0;
  do {
    for (int k = 0; k < dim; ++k) direction[k] = rng.normal();
    norm = direction.norm();
  } while (norm < 1e-300);
  double magnitude = rng.gamma_int(dim, 1.0 / zeta);
  return (magnitude / norm) * direction;
}

Eigen::VectorXd perturb_dual(const Eigen::VectorXd& lam,
                             const Eigen::VectorXd& eps, double c1, int n_v) {
  if (lam.size() != eps.size()) {
    fail(ErrorCode::kDimensionMismatch, "noise dimension != dual dimension");
  }
  if (n_v < 1) fail(ErrorCode::kEmptyDataset, "n_v must be >= 1");
  return lam + (c1 / (2.0 * static_cast<double>(n_v))) * eps;
}

double private_augmented_local(const Eigen::VectorXd& f,
                               const Eigen::VectorXd& beta, double phi,
                               const NodeState& state,
                               const std::vector<Eigen::VectorXd>& neighbor_f,
                               const NodeDataset& d, const Hyper& h,
                               const Loss& loss) {
  auto mids = detail::midpoints(state.f, neighbor_f);
  return detail::augmented_eval(f, nullptr, beta, phi, mids, d, h, loss);
}

Eigen::VectorXd private_augmented_local_grad(
    const Eigen::VectorXd& f, const Eigen::VectorXd& beta, double phi,
    const NodeState& state, const std::vector<Eigen::VectorXd>& neighbor_f,
    const NodeDataset& d, const Hyper& h, const Loss& loss) {
  auto mids = detail::midpoints(state.f, neighbor_f);
  Eigen::VectorXd grad(f.size());
  detail::augmented_eval(f, &grad, beta, phi, mids, d, h, loss);
  return grad;
}

Eigen::VectorXd private_primal_update(
    const NodeState& state, const Eigen::VectorXd& beta, double phi,
    const std::vector<Eigen::VectorXd>& neighbor_f, const NodeDataset& d,
    const Hyper& h, const SolverCfg& solver, SolverReport* report,
    const Loss& loss) {
  return detail::solve_primal(state, beta, phi, neighbor_f, d, h, solver,
                              report, loss);
}

AlphaSchedule AlphaSchedule::constant(double alpha) {
  AlphaSchedule s;
  s.fn_ = [alpha](int, int) { return alpha; };
  return s;
}

AlphaSchedule AlphaSchedule::per_node(std::map<int, double> by_node) {
  AlphaSchedule s;
  s.fn_ = [m = std::move(by_node)](int node, int) {
    auto it = m.find(node);
    if (it == m.end()) {
      fail(ErrorCode::kInvalidAlpha,
           "no privacy parameter for node " + std::to_string(node));
    }
    return it->second;
  };
  return s;
}

AlphaSchedule AlphaSchedule::from_fn(std::function<double(int, int)> fn) {
  AlphaSchedule s;
  s.fn_ = std::move(fn);
  return s;
}

Trajectory run_private(const TopologySchedule& sched,
                       const std::vector<NodeDataset>& data, const Hyper& h,
                       const AlphaSchedule& alpha, int iterations,
                       uint64_t seed, const SolverCfg& solver,
                       const PrivateRunOptions& options) {
  detail::PerturbHook hook = [&](int node, int iter, const NodeState& state,
                                 int n_v, int degree,
                                 int dim) -> detail::Perturbation {
    PrivacySetting ps =
        compute_privacy_params(alpha.at(node, iter), n_v, h, degree);
    detail::Perturbation p;
    if (options.disable_noise) {
      Eigen::VectorXd eps = Eigen::VectorXd::Zero(dim);
      p.beta = perturb_dual(state.lam, eps, h.c1, n_v);
      p.record = {ps.alpha, ps.phi, ps.zeta, 0.0};
    } else {
      Rng rng(derive_seed(seed, StreamKind::kNoise,
                          static_cast<uint64_t>(node),
                          static_cast<uint64_t>(iter)));
      Eigen::VectorXd eps = sample_noise(dim, ps.zeta, rng);
      p.record = {ps.alpha, ps.phi, ps.zeta, eps.norm()};
      p.beta = perturb_dual(state.lam, eps, h.c1, n_v);
      // Large noise pushes the subproblem's value scale far above one; an
      // absolute gradient tolerance below the float value-resolution floor
      // would stall the line search. Loosen in proportion to the gradient
      // shift (c1/n) ||eps|| the noise injects.
      p.tol_scale = std::max(1.0, h.c1 / n_v * p.record.noise_norm);
    }
    p.phi = ps.phi;
    return p;
  };
  return detail::run_engine(sched, data, h, iterations, seed, solver, &hook);
}

namespace {

int hamming_distance(const NodeDataset& a, const NodeDataset& b) {
  if (a.size() != b.size()) return -1;
  int diff = 0;
  for (int i = 0; i < a.size(); ++i) {
    if (a.samples[i].label != b.samples[i].label ||
        a.samples[i].features != b.samples[i].features) {
      ++diff;
    }
  }
  return diff;
}

}  // namespace

double ddp_ratio_check(const NodeDataset& dataset,
                       const NodeDataset& neighbor_dataset, double alpha,
                       const Hyper& h, int trials, int bins, uint64_t seed) {
  int hd = hamming_distance(dataset, neighbor_dataset);
  if (hd != 1) {
    fail(ErrorCode::kNotNeighbors,
         "datasets must differ in exactly one sample, Hamming distance is " +
             (hd < 0 ? std::string("undefined (sizes differ)")
                     : std::to_string(hd)));
  }
  if (trials < 1) fail(ErrorCode::kConfigError, "trials must be >= 1");
  if (bins < 3) fail(ErrorCode::kConfigError, "need at least 3 bins");

  const int dim = dataset.dim();
  const int n_v = dataset.size();
  const PrivacySetting ps = compute_privacy_params(alpha, n_v, h, 1);

  // Fixed single-neighbor scenario: the observed node starts from a seeded
  // small primal with a zero dual and one neighbor broadcast.
  NodeState state;
  state.f = detail::initial_primal(dim, seed, 0, 0);
  state.lam = Eigen::VectorXd::Zero(dim);
  state.f_prev = state.f;
  std::vector<Eigen::VectorXd> neighbor_f{detail::initial_primal(dim, seed, 1, 0)};

  Eigen::VectorXd u = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(dim));

  auto project = [&](const NodeDataset& d) {
    std::vector<double> proj(trials);
    for (int trial = 0; trial < trials; ++trial) {
      Rng rng(derive_seed(seed, StreamKind::kTrial,
                          static_cast<uint64_t>(trial)));
      Eigen::VectorXd eps = sample_noise(dim, ps.zeta, rng);
      Eigen::VectorXd beta = perturb_dual(state.lam, eps, h.c1, n_v);
      SolverCfg solver;
      solver.tol *= std::max(1.0, h.c1 / n_v * eps.norm());
      Eigen::VectorXd f1 = detail::solve_primal(state, beta, ps.phi,
                                                neighbor_f, d, h, solver,
                                                nullptr, kLogistic);
      proj[trial] = u.dot(f1);
    }
    return proj;
  };

  std::vector<double> pa = project(dataset);
  std::vector<double> pb = project(neighbor_dataset);

  // Shared cells from pooled central quantiles; the end cells are unbounded
  // so extreme draws land in cells with substantial expected mass.
  std::vector<double> pooled = pa;
  pooled.insert(pooled.end(), pb.begin(), pb.end());
  std::sort(pooled.begin(), pooled.end());
  auto quantile = [&](double q) {
    size_t idx = std::min(pooled.size() - 1,
                          static_cast<size_t>(q * (pooled.size() - 1)));
    return pooled[idx];
  };
  double lo = quantile(0.001);
  double hi = quantile(0.999);
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }

  const int interior = bins - 2;
  auto bin_of = [&](double x) {
    if (x < lo) return 0;
    if (x >= hi) return bins - 1;
    int b = 1 + static_cast<int>((x - lo) / (hi - lo) * interior);
    return std::min(b, bins - 2);
  };
  std::vector<long> ca(bins, 0), cb(bins, 0);
  for (double x : pa) ++ca[bin_of(x)];
  for (double x : pb) ++cb[bin_of(x)];

  double max_ratio = 0.0;
  for (int b = 0; b < bins; ++b) {
    if (ca[b] + cb[b] == 0) continue;
    double ra = static_cast<double>(ca[b] + 1) / static_cast<double>(cb[b] + 1);
    max_ratio = std::max(max_ratio, std::max(ra, 1.0 / ra));
  }
  return max_ratio;
}

}  // namespace dpadmm
