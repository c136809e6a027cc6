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

#include <cmath>
#include <cstring>
#include <vector>

#include <Eigen/Dense>
#include <doctest.h>

#include "consensus.hpp"
#include "dataset.hpp"
#include "dvp.hpp"
#include "error.hpp"
#include "rng.hpp"

using dpadmm::AlphaSchedule;
using dpadmm::Hyper;
using dpadmm::NodeDataset;
using dpadmm::NodeState;
using dpadmm::PrivacySetting;
using dpadmm::Rng;
using dpadmm::SolverCfg;
using dpadmm::Topology;
using dpadmm::TopologySchedule;
using dpadmm::Trajectory;

namespace {

// Long-double re-evaluation of the calibration formulas, independent of the
// production code path.
struct ParamsOracle {
  long double alpha_hat_raw;
  long double phi;
  long double zeta;
};

ParamsOracle params_oracle(long double alpha, long double n, long double c1,
                           long double c2, long double rho, long double eta,
                           long double big_n) {
  long double a = n / c1;
  long double b = rho + 2.0L * eta * big_n;
  ParamsOracle o;
  o.alpha_hat_raw = alpha - 2.0L * std::log(1.0L + c2 / (a * b));
  if (o.alpha_hat_raw > 0.0L) {
    o.phi = 0.0L;
    o.zeta = o.alpha_hat_raw;
  } else {
    o.phi = c2 / (a * (std::exp(alpha / 4.0L) - 1.0L)) - b;
    o.zeta = alpha / 2.0L;
  }
  return o;
}

const Hyper kReferenceHyper{650.0, std::pow(10.0, -2.5), 1.0, 0.25};

bool bitwise_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

Eigen::VectorXd random_vector(int dim, Rng& rng, double scale = 1.0) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.uniform(-scale, scale);
  return v;
}

}  // namespace

TEST_SUITE_BEGIN("dvp");

TEST_CASE("calibration takes the noise-only branch at alpha = 0.5") {
  PrivacySetting ps = dpadmm::compute_privacy_params(0.5, 1000, kReferenceHyper, 3);
  CHECK(ps.phi == 0.0);
  CHECK(ps.alpha_hat == doctest::Approx(0.44658).epsilon(2e-5));
  CHECK(ps.zeta == ps.alpha_hat);

  ParamsOracle o = params_oracle(0.5L, 1000.0L, 650.0L, 0.25L,
                                 std::pow(10.0L, -2.5L), 1.0L, 3.0L);
  CHECK(std::abs(ps.zeta - static_cast<double>(o.zeta)) <=
        1e-9 * std::abs(static_cast<double>(o.zeta)));
}

TEST_CASE("calibration adds convexity at alpha = 0.02") {
  PrivacySetting ps = dpadmm::compute_privacy_params(0.02, 1000, kReferenceHyper, 3);
  CHECK(ps.phi > 0.0);
  CHECK(ps.phi == doctest::Approx(26.41).epsilon(2e-3));
  CHECK(ps.zeta == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(ps.alpha_hat == ps.zeta);

  ParamsOracle o = params_oracle(0.02L, 1000.0L, 650.0L, 0.25L,
                                 std::pow(10.0L, -2.5L), 1.0L, 3.0L);
  CHECK(std::abs(ps.phi - static_cast<double>(o.phi)) <=
        1e-9 * std::abs(static_cast<double>(o.phi)));
}

TEST_CASE("the branch boundary still yields strictly positive convexity") {
  Hyper h{10.0, 0.3, 1.2, 0.25};
  int n = 40, big_n = 2;
  double x = h.c2 / ((n / h.c1) * (h.rho + 2.0 * h.eta * big_n));
  double boundary = 2.0 * std::log1p(x);
  PrivacySetting ps = dpadmm::compute_privacy_params(boundary, n, h, big_n);
  CHECK(ps.phi > 0.0);
  CHECK(ps.zeta == doctest::Approx(boundary / 2.0));
}

TEST_CASE("else-branch convexity is positive for random constants") {
  Rng rng(123);
  for (int trial = 0; trial < 2000; ++trial) {
    int n = rng.uniform_int(5, 5000);
    Hyper h;
    h.c1 = rng.uniform(0.1, static_cast<double>(n));
    h.rho = std::pow(10.0, rng.uniform(-9.0, 1.0));
    h.eta = rng.uniform(0.05, 4.0);
    h.c2 = rng.uniform(0.01, 2.0);
    int big_n = rng.uniform_int(0, 12);
    double x = h.c2 / ((n / h.c1) * (h.rho + 2.0 * h.eta * big_n));
    // Any alpha at or below the branch point lands in the else branch.
    double alpha = rng.uniform01() * 2.0 * std::log1p(x);
    if (alpha <= 0.0) continue;
    PrivacySetting ps = dpadmm::compute_privacy_params(alpha, n, h, big_n);
    CHECK(ps.phi > 0.0);
    CHECK(ps.zeta > 0.0);
    CHECK(ps.zeta == alpha / 2.0);
  }
}

TEST_CASE("non-positive alpha is rejected") {
  try {
    dpadmm::compute_privacy_params(0.0, 10, kReferenceHyper, 1);
    FAIL("expected InvalidAlpha");
  } catch (const dpadmm::Error& e) {
    CHECK(e.code() == dpadmm::ErrorCode::kInvalidAlpha);
  }
  CHECK_THROWS_AS(dpadmm::compute_privacy_params(-0.5, 10, kReferenceHyper, 1),
                  dpadmm::Error);
}

TEST_CASE("noise magnitude follows the gamma radial law") {
  Rng rng(2024);
  const int draws = 100000;
  double sum = 0.0;
  for (int i = 0; i < draws; ++i) {
    sum += dpadmm::sample_noise(10, 0.5, rng).norm();
  }
  double mean = sum / draws;
  CHECK(std::abs(mean - 20.0) <= 0.02 * 20.0);
}

TEST_CASE("one-dimensional noise is a balanced exponential") {
  Rng rng(7);
  const int draws = 100000;
  int positive = 0;
  double abs_sum = 0.0;
  for (int i = 0; i < draws; ++i) {
    double eps = dpadmm::sample_noise(1, 2.0, rng)[0];
    if (eps > 0.0) ++positive;
    abs_sum += std::abs(eps);
  }
  // Two-sided binomial z-test at significance 0.01.
  double z = (positive - draws / 2.0) / std::sqrt(draws / 4.0);
  CHECK(std::abs(z) <= 2.576);
  CHECK(std::abs(abs_sum / draws - 0.5) <= 0.02 * 0.5);
}

TEST_CASE("directions are uniform by octant chi-square") {
  Rng rng(11);
  const int draws = 100000;
  long counts[8] = {0};
  for (int i = 0; i < draws; ++i) {
    Eigen::VectorXd eps = dpadmm::sample_noise(3, 1.0, rng);
    int cell = (eps[0] > 0 ? 1 : 0) | (eps[1] > 0 ? 2 : 0) | (eps[2] > 0 ? 4 : 0);
    ++counts[cell];
  }
  double expected = draws / 8.0;
  double chi2 = 0.0;
  for (long c : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 <= 18.4753);  // chi-square df=7 at significance 0.01
}

TEST_CASE("invalid noise parameters are rejected") {
  Rng rng(1);
  try {
    dpadmm::sample_noise(3, 0.0, rng);
    FAIL("expected InvalidZeta");
  } catch (const dpadmm::Error& e) {
    CHECK(e.code() == dpadmm::ErrorCode::kInvalidZeta);
  }
  CHECK_THROWS_AS(dpadmm::sample_noise(0, 1.0, rng), dpadmm::Error);
}

TEST_CASE("dual perturbation is the stated affine map") {
  Eigen::VectorXd lam = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd eps(2);
  eps << 2.0, -2.0;
  Eigen::VectorXd beta = dpadmm::perturb_dual(lam, eps, 650.0, 650);
  CHECK(beta[0] == doctest::Approx(1.0));
  CHECK(beta[1] == doctest::Approx(-1.0));

  Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  lam << 0.3, -0.7;
  CHECK(dpadmm::perturb_dual(lam, zero, 650.0, 650) == lam);

  Eigen::VectorXd half = dpadmm::perturb_dual(zero, eps, 650.0, 1300);
  CHECK(half == 0.5 * beta);
}

TEST_CASE("perturbed objective reduces to the plain one") {
  NodeDataset d{dpadmm::synthesize(30, 4, 1.5, 3), 0};
  Hyper h{6.0, 0.5, 1.0, 0.25};
  Rng rng(15);
  NodeState state;
  state.f = random_vector(4, rng);
  state.lam = random_vector(4, rng, 0.4);
  std::vector<Eigen::VectorXd> neighbors{random_vector(4, rng)};
  Eigen::VectorXd f = random_vector(4, rng);
  CHECK(dpadmm::private_augmented_local(f, state.lam, 0.0, state, neighbors, d,
                                        h) ==
        dpadmm::augmented_local(f, state, neighbors, d, h));

  // At f = 0 the added convexity term contributes nothing.
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(4);
  CHECK(dpadmm::private_augmented_local(zero, state.lam, 3.7, state, neighbors,
                                        d, h) ==
        dpadmm::private_augmented_local(zero, state.lam, 0.0, state, neighbors,
                                        d, h));
}

TEST_CASE("perturbed gradient matches finite differences") {
  NodeDataset d{dpadmm::synthesize(20, 3, 1.5, 5), 0};
  Hyper h{5.0, 0.4, 1.1, 0.25};
  Rng rng(16);
  NodeState state;
  state.f = random_vector(3, rng);
  state.lam = Eigen::VectorXd::Zero(3);
  Eigen::VectorXd beta = random_vector(3, rng, 0.5);
  std::vector<Eigen::VectorXd> neighbors{random_vector(3, rng)};
  double phi = 2.3;
  Eigen::VectorXd f = random_vector(3, rng);
  Eigen::VectorXd analytic = dpadmm::private_augmented_local_grad(
      f, beta, phi, state, neighbors, d, h);
  const double step = 1e-6;
  for (int i = 0; i < 3; ++i) {
    Eigen::VectorXd hi = f, lo = f;
    hi[i] += step;
    lo[i] -= step;
    double numeric =
        (dpadmm::private_augmented_local(hi, beta, phi, state, neighbors, d, h) -
         dpadmm::private_augmented_local(lo, beta, phi, state, neighbors, d, h)) /
        (2.0 * step);
    CHECK(analytic[i] == doctest::Approx(numeric).epsilon(1e-5));
  }
}

TEST_CASE("zero noise with zero convexity reproduces the plain update") {
  NodeDataset d{dpadmm::synthesize(40, 3, 2.0, 9), 0};
  Hyper h{8.0, 0.5, 1.0, 0.25};
  Rng rng(17);
  NodeState state;
  state.f = random_vector(3, rng, 0.1);
  state.lam = random_vector(3, rng, 0.2);
  std::vector<Eigen::VectorXd> neighbors{random_vector(3, rng, 0.1)};
  SolverCfg solver{1e-9, 5000};
  Eigen::VectorXd plain = dpadmm::primal_update(state, neighbors, d, h, solver);
  Eigen::VectorXd priv = dpadmm::private_primal_update(
      state, state.lam, 0.0, neighbors, d, h, solver);
  CHECK(bitwise_equal(plain, priv));
}

TEST_CASE("noise shifts the stationarity condition by its scaled value") {
  NodeDataset d{dpadmm::synthesize(25, 3, 2.0, 13), 0};
  Hyper h{10.0, 0.7, 1.0, 0.25};
  Rng rng(19);
  NodeState state;
  state.f = random_vector(3, rng, 0.1);
  state.lam = random_vector(3, rng, 0.2);
  std::vector<Eigen::VectorXd> neighbors{random_vector(3, rng, 0.1)};
  Eigen::VectorXd eps = random_vector(3, rng, 5.0);
  Eigen::VectorXd beta = dpadmm::perturb_dual(state.lam, eps, h.c1, d.size());
  SolverCfg solver{1e-10, 5000};
  Eigen::VectorXd fstar = dpadmm::private_primal_update(state, beta, 0.0,
                                                        neighbors, d, h, solver);
  Eigen::VectorXd residual =
      dpadmm::augmented_local_grad(fstar, state, neighbors, d, h) +
      (h.c1 / d.size()) * eps;
  CHECK(residual.norm() <= 1e-7);
}

TEST_CASE("quadratic seam with perturbation matches the linear solve") {
  constexpr dpadmm::Loss kQuadratic{
      +[](double z) { return 0.5 * (z - 1.0) * (z - 1.0); },
      +[](double z) { return z - 1.0; }};
  const int dim = 3;
  NodeDataset d{dpadmm::synthesize(20, dim, 1.0, 21), 0};
  Hyper h{5.0, 0.6, 1.2, 0.25};
  Rng rng(23);
  NodeState state;
  state.f = random_vector(dim, rng);
  state.lam = random_vector(dim, rng, 0.3);
  std::vector<Eigen::VectorXd> neighbors{random_vector(dim, rng)};
  Eigen::VectorXd beta = random_vector(dim, rng, 2.0);
  const double phi = 1.9;

  SolverCfg solver{1e-11, 5000};
  Eigen::VectorXd got = dpadmm::private_primal_update(
      state, beta, phi, neighbors, d, h, solver, nullptr, kQuadratic);

  const double scale = h.c1 / d.size();
  Eigen::MatrixXd a = (h.rho + phi + 2.0 * h.eta * neighbors.size()) *
                      Eigen::MatrixXd::Identity(dim, dim);
  Eigen::VectorXd b = -2.0 * beta;
  for (const auto& s : d.samples) {
    a += scale * s.features * s.features.transpose();
    b += scale * static_cast<double>(s.label) * s.features;
  }
  b += 2.0 * h.eta * 0.5 * (state.f + neighbors[0]);
  Eigen::VectorXd expected = a.ldlt().solve(b);
  CHECK((got - expected).norm() <= 1e-8);
}

TEST_CASE("noise-free private run equals the non-private run bit for bit") {
  auto data = dpadmm::synthesize(100, 3, 2.0, 33);
  auto parts = dpadmm::partition(data, 4, 33);
  Hyper h{5.0, 0.5, 1.0, 0.25};  // keeps every node in the phi = 0 branch
  TopologySchedule sched = TopologySchedule::single(Topology::ring(4), 10);
  for (uint64_t seed : {1ULL, 42ULL, 977ULL}) {
    Trajectory plain = dpadmm::run(sched, parts, h, 10, seed);
    Trajectory priv =
        dpadmm::run_private(sched, parts, h, AlphaSchedule::constant(2.0), 10,
                            seed, {}, {.disable_noise = true});
    REQUIRE(priv.snapshots.size() == plain.snapshots.size());
    for (size_t t = 0; t < plain.snapshots.size(); ++t) {
      for (const auto& [v, s] : plain.snapshots[t]) {
        CHECK(bitwise_equal(s.f, priv.snapshots[t].at(v).f));
        CHECK(bitwise_equal(s.lam, priv.snapshots[t].at(v).lam));
      }
    }
    for (const auto& per_node : priv.privacy) {
      for (const auto& [v, rec] : per_node) CHECK(rec.phi == 0.0);
    }
  }
}

TEST_CASE("private runs are deterministic per seed and noisy across seeds") {
  auto data = dpadmm::synthesize(80, 2, 2.0, 35);
  auto parts = dpadmm::partition(data, 2, 35);
  Hyper h{5.0, 0.5, 1.0, 0.25};
  TopologySchedule sched = TopologySchedule::single(Topology::path(2), 6);
  AlphaSchedule alpha = AlphaSchedule::constant(0.5);
  Trajectory a = dpadmm::run_private(sched, parts, h, alpha, 6, 7);
  Trajectory b = dpadmm::run_private(sched, parts, h, alpha, 6, 7);
  for (size_t t = 0; t < a.snapshots.size(); ++t) {
    for (const auto& [v, s] : a.snapshots[t]) {
      CHECK(bitwise_equal(s.f, b.snapshots[t].at(v).f));
    }
  }
  REQUIRE(a.privacy.size() == 6);
  for (const auto& [v, rec] : a.privacy[0]) {
    CHECK(rec.noise_norm > 0.0);
    CHECK(rec.zeta > 0.0);
  }

  Trajectory plain = dpadmm::run(sched, parts, h, 6, 7);
  CHECK_FALSE(bitwise_equal(a.snapshots.back().at(0).f,
                            plain.snapshots.back().at(0).f));
}

TEST_CASE("neighbor counts are re-read when the topology changes") {
  auto data = dpadmm::synthesize(120, 2, 2.0, 37);
  auto parts = dpadmm::partition(data, 3, 37);
  Hyper h{5.0, 0.5, 1.0, 0.25};
  Topology sparse = Topology::path(3);   // node 0 has one neighbor
  Topology dense = Topology::complete(3);  // node 0 has two
  TopologySchedule sched({{sparse, 3}, {dense, 3}});
  AlphaSchedule alpha = AlphaSchedule::constant(1.0);
  Trajectory traj = dpadmm::run_private(sched, parts, h, alpha, 6, 39);

  double zeta_sparse = traj.privacy[0].at(0).zeta;
  double zeta_dense = traj.privacy[3].at(0).zeta;
  CHECK(zeta_sparse ==
        dpadmm::compute_privacy_params(1.0, parts[0].size(), h, 1).zeta);
  CHECK(zeta_dense ==
        dpadmm::compute_privacy_params(1.0, parts[0].size(), h, 2).zeta);
  CHECK(zeta_sparse != zeta_dense);
}

TEST_CASE("ratio check requires neighboring datasets") {
  NodeDataset d{dpadmm::synthesize(20, 2, 2.0, 41), 0};
  Hyper h{20.0, 1.0, 1.0, 0.25};
  try {
    dpadmm::ddp_ratio_check(d, d, 0.5, h, 100, 10, 1);
    FAIL("expected NotNeighbors");
  } catch (const dpadmm::Error& e) {
    CHECK(e.code() == dpadmm::ErrorCode::kNotNeighbors);
  }
  NodeDataset shorter{{d.samples.begin(), d.samples.end() - 1}, 0};
  CHECK_THROWS_AS(dpadmm::ddp_ratio_check(d, shorter, 0.5, h, 100, 10, 1),
                  dpadmm::Error);
}

TEST_CASE("ratio check smoke run stays within a loose bound") {
  NodeDataset d{dpadmm::synthesize(20, 2, 2.0, 43), 0};
  NodeDataset neighbor = d;
  // Label-only flip, so the differing sample actually changes the margins.
  neighbor.samples[4].label = -neighbor.samples[4].label;
  Hyper h{20.0, 1.0, 1.0, 0.25};
  double ratio = dpadmm::ddp_ratio_check(d, neighbor, 0.5, h, 4000, 30, 51);
  CHECK(ratio > 1.0);
  // The tight 1.25-slack bound at 1e5 trials runs in the acceptance suite.
  CHECK(ratio <= std::exp(0.5) * 2.0);
}

TEST_SUITE_END();
