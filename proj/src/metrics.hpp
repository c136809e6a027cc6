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

#ifndef DPADMM_METRICS_HPP_
#define DPADMM_METRICS_HPP_

#include <Eigen/Core>
#include <map>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "topology.hpp"

namespace dpadmm {

// Threshold-sweep ROC. Points run from (0,0) to (1,1) with both coordinates
// non-decreasing; auc is the trapezoidal integral of exactly these points.
struct RocCurve {
  std::vector<std::pair<double, double>> points;  // (fpr, tpr)
  double auc = 0.0;
};

// (FPR, FNR) of the sign-at-zero decision rule. Throws MissingClass when the
// test set lacks a label.
std::pair<double, double> confusion_at_zero(const Eigen::VectorXd& f,
                                            const NodeDataset& test);

// scores are (f.x, true label) pairs; the sweep predicts +1 when the score
// is >= the threshold, grouping tied scores at one threshold. resolution
// caps the number of emitted points (0 keeps every threshold).
RocCurve roc(const std::vector<std::pair<double, int>>& scores,
             int resolution = 0);

// max over edges of ||f_v - f_w||_2; zero for an edgeless graph. Throws
// MissingNode when the snapshot lacks a node of the topology.
double consensus_residual(const std::map<int, Eigen::VectorXd>& snapshot,
                          const Topology& topology);

}  // namespace dpadmm

#endif  // DPADMM_METRICS_HPP_
