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
#include <vector>

#include <doctest.h>

#include "dataset.hpp"
#include "error.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "topology.hpp"

using dpadmm::NodeDataset;
using dpadmm::RocCurve;
using dpadmm::Rng;
using dpadmm::Sample;
using dpadmm::Topology;

namespace {

NodeDataset two_cluster_test_set() {
  NodeDataset d;
  Eigen::VectorXd x(2);
  for (int i = 0; i < 10; ++i) {
    x << 0.5 + 0.01 * i, 0.1;
    d.samples.push_back(Sample{x, +1});
    x << -0.5 - 0.01 * i, 0.1;
    d.samples.push_back(Sample{x, -1});
  }
  return d;
}

}  // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("perfect classifier has zero error rates") {
  NodeDataset test = two_cluster_test_set();
  Eigen::VectorXd f(2);
  f << 1.0, 0.0;
  auto [fpr, fnr] = dpadmm::confusion_at_zero(f, test);
  CHECK(fpr == 0.0);
  CHECK(fnr == 0.0);
}

TEST_CASE("zero classifier flags everything as attack") {
  NodeDataset test = two_cluster_test_set();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(2);
  auto [fpr, fnr] = dpadmm::confusion_at_zero(f, test);
  CHECK(fpr == 1.0);
  CHECK(fnr == 0.0);
}

TEST_CASE("label-flipped classifier errs everywhere") {
  NodeDataset test = two_cluster_test_set();
  Eigen::VectorXd f(2);
  f << -1.0, 0.0;
  auto [fpr, fnr] = dpadmm::confusion_at_zero(f, test);
  CHECK(fpr == 1.0);
  CHECK(fnr == 1.0);
}

TEST_CASE("confusion requires both classes") {
  NodeDataset test;
  Eigen::VectorXd x(1);
  x << 0.4;
  test.samples.push_back(Sample{x, +1});
  Eigen::VectorXd f(1);
  f << 1.0;
  try {
    dpadmm::confusion_at_zero(f, test);
    FAIL("expected MissingClass");
  } catch (const dpadmm::Error& e) {
    CHECK(e.code() == dpadmm::ErrorCode::kMissingClass);
  }
}

TEST_CASE("separating scores give area one") {
  std::vector<std::pair<double, int>> scores;
  for (int i = 0; i < 50; ++i) {
    scores.emplace_back(1.0 + 0.01 * i, +1);
    scores.emplace_back(-1.0 - 0.01 * i, -1);
  }
  RocCurve curve = dpadmm::roc(scores);
  CHECK(curve.auc == doctest::Approx(1.0));
  CHECK(curve.points.front() == std::pair<double, double>{0.0, 0.0});
  CHECK(curve.points.back() == std::pair<double, double>{1.0, 1.0});
}

TEST_CASE("random scores give area about one half") {
  Rng rng(314);
  std::vector<std::pair<double, int>> scores;
  for (int i = 0; i < 10000; ++i) {
    scores.emplace_back(rng.uniform(-1.0, 1.0), i % 2 == 0 ? 1 : -1);
  }
  RocCurve curve = dpadmm::roc(scores);
  CHECK(std::abs(curve.auc - 0.5) <= 0.05);
}

TEST_CASE("negating scores mirrors the area") {
  Rng rng(99);
  std::vector<std::pair<double, int>> scores, negated;
  for (int i = 0; i < 500; ++i) {
    // Coarse quantization forces plenty of ties.
    double s = std::round(rng.uniform(-3.0, 3.0));
    int label = rng.uniform01() < 0.4 ? 1 : -1;
    scores.emplace_back(s, label);
    negated.emplace_back(-s, label);
  }
  double a = dpadmm::roc(scores).auc;
  double b = dpadmm::roc(negated).auc;
  CHECK(a + b == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("roc points form a monotone staircase from origin to corner") {
  Rng rng(1234);
  std::vector<std::pair<double, int>> scores;
  for (int i = 0; i < 300; ++i) {
    scores.emplace_back(rng.normal() + (i % 2 == 0 ? 0.4 : -0.4),
                        i % 2 == 0 ? 1 : -1);
  }
  RocCurve curve = dpadmm::roc(scores);
  CHECK(curve.points.front() == std::pair<double, double>{0.0, 0.0});
  CHECK(curve.points.back() == std::pair<double, double>{1.0, 1.0});
  for (size_t i = 1; i < curve.points.size(); ++i) {
    CHECK(curve.points[i].first >= curve.points[i - 1].first);
    CHECK(curve.points[i].second >= curve.points[i - 1].second);
  }
  CHECK(curve.auc >= 0.0);
  CHECK(curve.auc <= 1.0);
}

TEST_CASE("resolution caps the point count but keeps the endpoints") {
  Rng rng(55);
  std::vector<std::pair<double, int>> scores;
  for (int i = 0; i < 2000; ++i) {
    scores.emplace_back(rng.normal(), i % 2 == 0 ? 1 : -1);
  }
  RocCurve curve = dpadmm::roc(scores, 64);
  CHECK(curve.points.size() == 64);
  CHECK(curve.points.front() == std::pair<double, double>{0.0, 0.0});
  CHECK(curve.points.back() == std::pair<double, double>{1.0, 1.0});
}

TEST_CASE("roc requires both classes") {
  std::vector<std::pair<double, int>> scores{{0.5, 1}, {0.7, 1}};
  try {
    dpadmm::roc(scores);
    FAIL("expected MissingClass");
  } catch (const dpadmm::Error& e) {
    CHECK(e.code() == dpadmm::ErrorCode::kMissingClass);
  }
}

TEST_CASE("consensus residual over a snapshot") {
  Topology topo = Topology::path(2);
  std::map<int, Eigen::VectorXd> snap;
  Eigen::VectorXd a(2), b(2);
  a << 1.0, 0.0;
  b << 0.0, 0.0;
  snap[0] = a;
  snap[1] = b;
  CHECK(dpadmm::consensus_residual(snap, topo) == doctest::Approx(1.0));

  snap[1] = a;  // all equal
  CHECK(dpadmm::consensus_residual(snap, topo) == 0.0);
}

TEST_CASE("residual is invariant to edge enumeration order") {
  std::map<int, Eigen::VectorXd> snap;
  Rng rng(31);
  for (int v = 0; v < 5; ++v) {
    Eigen::VectorXd f(3);
    for (int k = 0; k < 3; ++k) f[k] = rng.uniform(-1.0, 1.0);
    snap[v] = f;
  }
  Topology ring = Topology::ring(5);
  double direct = dpadmm::consensus_residual(snap, ring);
  double expected = 0.0;
  for (const auto& [v, w] : ring.edges()) {
    expected = std::max(expected, (snap.at(v) - snap.at(w)).norm());
  }
  CHECK(direct == expected);
}

TEST_CASE("residual demands a complete snapshot") {
  Topology topo = Topology::path(3);
  std::map<int, Eigen::VectorXd> snap;
  snap[0] = Eigen::VectorXd::Zero(2);
  snap[1] = Eigen::VectorXd::Zero(2);
  try {
    dpadmm::consensus_residual(snap, topo);
    FAIL("expected MissingNode");
  } catch (const dpadmm::Error& e) {
    CHECK(e.code() == dpadmm::ErrorCode::kMissingNode);
  }
}

TEST_SUITE_END();
