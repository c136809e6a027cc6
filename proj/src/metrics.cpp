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

#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"
#include "objective.hpp"

namespace dpadmm {

std::pair<double, double> confusion_at_zero(const Eigen::VectorXd& f,
                                            const NodeDataset& test) {
  long normals = 0, attacks = 0, false_pos = 0, false_neg = 0;
  for (const auto& s : test.samples) {
    int predicted = predict(f, s.features);
    if (s.label == -1) {
      ++normals;
      if (predicted == +1) ++false_pos;
    } else {
      ++attacks;
      if (predicted == -1) ++false_neg;
    }
  }
  if (normals == 0 || attacks == 0) {
    fail(ErrorCode::kMissingClass, "test set must contain both labels");
  }
  return {static_cast<double>(false_pos) / static_cast<double>(normals),
          static_cast<double>(false_neg) / static_cast<double>(attacks)};
}

RocCurve roc(const std::vector<std::pair<double, int>>& scores,
             int resolution) {
  long positives = 0, negatives = 0;
  for (const auto& [score, label] : scores) {
    (label == 1 ? positives : negatives) += 1;
  }
  if (positives == 0 || negatives == 0) {
    fail(ErrorCode::kMissingClass, "scores must contain both labels");
  }

  std::vector<std::pair<double, int>> sorted = scores;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  // Descending threshold sweep; a tie group enters in one step.
  std::vector<std::pair<double, double>> pts;
  pts.emplace_back(0.0, 0.0);
  long tp = 0, fp = 0;
  size_t i = 0;
  while (i < sorted.size()) {
    double threshold = sorted[i].first;
    while (i < sorted.size() && sorted[i].first == threshold) {
      (sorted[i].second == 1 ? tp : fp) += 1;
      ++i;
    }
    pts.emplace_back(static_cast<double>(fp) / static_cast<double>(negatives),
                     static_cast<double>(tp) / static_cast<double>(positives));
  }

  if (resolution > 2 && static_cast<int>(pts.size()) > resolution) {
    std::vector<std::pair<double, double>> thin;
    thin.reserve(resolution);
    for (int k = 0; k < resolution; ++k) {
      size_t idx = static_cast<size_t>(
          std::llround(static_cast<double>(k) * (pts.size() - 1) /
                       (resolution - 1)));
      thin.push_back(pts[idx]);
    }
    pts = std::move(thin);
  }

  RocCurve curve;
  curve.points = std::move(pts);
  double auc = 0.0;
  for (size_t k = 1; k < curve.points.size(); ++k) {
    auto [x0, y0] = curve.points[k - 1];
    auto [x1, y1] = curve.points[k];
    auc += (x1 - x0) * (y0 + y1) * 0.5;
  }
  curve.auc = auc;
  return curve;
}

double consensus_residual(const std::map<int, Eigen::VectorXd>& snapshot,
                          const Topology& topology) {
  for (int v : topology.node_ids()) {
    if (!snapshot.count(v)) {
      fail(ErrorCode::kMissingNode,
           "snapshot is missing node " + std::to_string(v));
    }
  }
  double residual = 0.0;
  for (const auto& [v, w] : topology.edges()) {
    residual = std::max(residual, (snapshot.at(v) - snapshot.at(w)).norm());
  }
  return residual;
}

}  // namespace dpadmm
