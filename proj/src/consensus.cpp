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

#include "consensus.hpp"

#include <string>

#include "consensus_engine.hpp"
#include "error.hpp"
#include "rng.hpp"

namespace dpadmm {

namespace detail {

double augmented_eval(const Eigen::VectorXd& f, Eigen::VectorXd* grad,
                      const Eigen::VectorXd& beta, double phi,
                      const std::vector<Eigen::VectorXd>& midpoints,
                      const NodeDataset& d, const Hyper& h, const Loss& loss) {
  if (beta.size() != f.size()) {
    fail(ErrorCode::kDimensionMismatch, "dual dimension != primal dimension");
  }
  double value = local_objective(f, d, h, loss);
  value += 0.5 * phi * f.squaredNorm();
  value += 2.0 * beta.dot(f);
  for (const auto& m : midpoints) {
    if (m.size() != f.size()) {
      fail(ErrorCode::kDimensionMismatch, "neighbor dimension mismatch");
    }
    value += h.eta * (f - m).squaredNorm();
  }
  if (grad) {
    *grad = local_objective_grad(f, d, h, loss);
    grad->noalias() += phi * f;
    grad->noalias() += 2.0 * beta;
    for (const auto& m : midpoints) {
      grad->noalias() += 2.0 * h.eta * (f - m);
    }
  }
  return value;
}

std::vector<Eigen::VectorXd> midpoints(
    const Eigen::VectorXd& f_self,
    const std::vector<Eigen::VectorXd>& neighbor_f) {
  std::vector<Eigen::VectorXd> mids;
  mids.reserve(neighbor_f.size());
  for (const auto& fi : neighbor_f) mids.push_back(0.5 * (f_self + fi));
  return mids;
}

Eigen::VectorXd solve_primal(const NodeState& state,
                             const Eigen::VectorXd& beta, double phi,
                             const std::vector<Eigen::VectorXd>& neighbor_f,
                             const NodeDataset& d, const Hyper& h,
                             const SolverCfg& solver, SolverReport* report,
                             const Loss& loss) {
  auto mids = midpoints(state.f, neighbor_f);
  auto fn = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    return augmented_eval(x, &g, beta, phi, mids, d, h, loss);
  };
  return minimize(fn, state.f, solver, report);
}

Eigen::VectorXd initial_primal(int dim, uint64_t seed, int node, int iter) {
  Rng rng(derive_seed(seed, StreamKind::kInit, static_cast<uint64_t>(node),
                      static_cast<uint64_t>(iter)));
  Eigen::VectorXd f(dim);
  for (int k = 0; k < dim; ++k) f[k] = rng.uniform(-0.01, 0.01);
  return f;
}

Trajectory run_engine(const TopologySchedule& sched,
                      const std::vector<NodeDataset>& data, const Hyper& h,
                      int iterations, uint64_t seed, const SolverCfg& solver,
                      const PerturbHook* hook) {
  if (iterations < 1) {
    fail(ErrorCode::kConfigError, "run length must be >= 1");
  }
  if (sched.total_duration() != iterations) {
    fail(ErrorCode::kConfigError,
         "schedule covers " + std::to_string(sched.total_duration()) +
             " iterations, run needs " + std::to_string(iterations));
  }

  std::map<int, const NodeDataset*> data_by_id;
  int dim = 0;
  for (const auto& d : data) {
    if (d.samples.empty()) {
      fail(ErrorCode::kEmptyDataset,
           "node " + std::to_string(d.owner) + " has no training data");
    }
    if (dim == 0) dim = d.dim();
    if (d.dim() != dim) {
      fail(ErrorCode::kDimensionMismatch, "node datasets disagree on dimension");
    }
    if (h.c1 > static_cast<double>(d.size())) {
      fail(ErrorCode::kConfigError,
           "c1 = " + std::to_string(h.c1) + " exceeds n_v = " +
               std::to_string(d.size()) + " at node " + std::to_string(d.owner));
    }
    data_by_id[d.owner] = &d;
  }
  for (int v : sched.all_node_ids()) {
    if (!data_by_id.count(v)) {
      fail(ErrorCode::kConfigError,
           "schedule references node " + std::to_string(v) + " without data");
    }
  }

  Trajectory traj;
  std::map<int, NodeState> states;
  const Topology* prev_topo = nullptr;

  for (int t = 0; t < iterations; ++t) {
    const Topology& topo = sched.topology_at(t);
    if (&topo != prev_topo) {
      // Surviving ids keep state, departed ids are dropped, new ids start
      // fresh with a seeded primal and a zero dual.
      for (auto it = states.begin(); it != states.end();) {
        it = topo.has_node(it->first) ? std::next(it) : states.erase(it);
      }
      for (int v : topo.node_ids()) {
        if (!states.count(v)) {
          NodeState s;
          s.f = initial_primal(dim, seed, v, t);
          s.lam = Eigen::VectorXd::Zero(dim);
          s.f_prev = s.f;
          states[v] = std::move(s);
        }
      }
      prev_topo = &topo;
    }
    if (t == 0) {
      std::map<int, NodeSnap> snap;
      for (const auto& [v, s] : states) snap[v] = {s.f, s.lam};
      traj.snapshots.push_back(std::move(snap));
    }

    // Primal pass: every node minimizes against the neighbors' previous
    // broadcast; nothing is published until all nodes are done.
    std::map<int, Eigen::VectorXd> f_next;
    std::map<int, PrivacyRecord> privacy;
    for (int v : topo.node_ids()) {
      const NodeState& s = states.at(v);
      std::vector<Eigen::VectorXd> neighbor_f;
      for (int w : topo.neighbors(v)) neighbor_f.push_back(states.at(w).f);

      if (hook) {
        Perturbation p =
            (*hook)(v, t, s, data_by_id.at(v)->size(), topo.degree(v), dim);
        privacy[v] = p.record;
        SolverCfg scaled = solver;
        scaled.tol *= p.tol_scale;
        f_next[v] = solve_primal(s, p.beta, p.phi, neighbor_f,
                                 *data_by_id.at(v), h, scaled, nullptr,
                                 kLogistic);
      } else {
        f_next[v] = solve_primal(s, s.lam, 0.0, neighbor_f, *data_by_id.at(v),
                                 h, solver, nullptr, kLogistic);
      }
    }

    // Broadcast barrier.
    for (auto& [v, f] : f_next) {
      NodeState& s = states.at(v);
      s.f_prev = std::move(s.f);
      s.f = std::move(f);
    }

    // Dual pass over the fresh broadcasts.
    for (int v : topo.node_ids()) {
      NodeState& s = states.at(v);
      std::vector<Eigen::VectorXd> neighbor_f_new;
      for (int w : topo.neighbors(v)) neighbor_f_new.push_back(states.at(w).f);
      s.lam = dual_update(s, s.f, neighbor_f_new, h.eta);
    }

    std::map<int, NodeSnap> snap;
    for (const auto& [v, s] : states) snap[v] = {s.f, s.lam};
    traj.snapshots.push_back(std::move(snap));
    if (hook) traj.privacy.push_back(std::move(privacy));
  }
  return traj;
}

}  // namespace detail

double augmented_local(const Eigen::VectorXd& f, const NodeState& state,
                       const std::vector<Eigen::VectorXd>& neighbor_f,
                       const NodeDataset& d, const Hyper& h, const Loss& loss) {
  auto mids = detail::midpoints(state.f, neighbor_f);
  return detail::augmented_eval(f, nullptr, state.lam, 0.0, mids, d, h, loss);
}

Eigen::VectorXd augmented_local_grad(
    const Eigen::VectorXd& f, const NodeState& state,
    const std::vector<Eigen::VectorXd>& neighbor_f, const NodeDataset& d,
    const Hyper& h, const Loss& loss) {
  auto mids = detail::midpoints(state.f, neighbor_f);
  Eigen::VectorXd grad(f.size());
  detail::augmented_eval(f, &grad, state.lam, 0.0, mids, d, h, loss);
  return grad;
}

Eigen::VectorXd primal_update(const NodeState& state,
                              const std::vector<Eigen::VectorXd>& neighbor_f,
                              const NodeDataset& d, const Hyper& h,
                              const SolverCfg& solver, SolverReport* report,
                              const Loss& loss) {
  return detail::solve_primal(state, state.lam, 0.0, neighbor_f, d, h, solver,
                              report, loss);
}

Eigen::VectorXd dual_update(const NodeState& state,
                            const Eigen::VectorXd& f_new,
                            const std::vector<Eigen::VectorXd>& neighbor_f_new,
                            double eta) {
  if (state.lam.size() != f_new.size()) {
    fail(ErrorCode::kDimensionMismatch, "dual dimension != primal dimension");
  }
  Eigen::VectorXd lam = state.lam;
  for (const auto& fw : neighbor_f_new) {
    if (fw.size() != f_new.size()) {
      fail(ErrorCode::kDimensionMismatch, "neighbor dimension mismatch");
    }
    lam.noalias() += 0.5 * eta * (f_new - fw);
  }
  return lam;
}

Trajectory run(const TopologySchedule& sched,
               const std::vector<NodeDataset>& data, const Hyper& h,
               int iterations, uint64_t init_seed, const SolverCfg& solver) {
  return detail::run_engine(sched, data, h, iterations, init_seed, solver,
                            nullptr);
}

}  // namespace dpadmm
