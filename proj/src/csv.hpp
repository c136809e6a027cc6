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

#ifndef DPADMM_CSV_HPP_
#define DPADMM_CSV_HPP_

#include <string>
#include <utility>
#include <vector>

#include "dataset.hpp"

namespace dpadmm {

// Fixed decimal formatting so identical runs emit identical bytes.
std::string format_double(double v);        // %.12g, metrics output
std::string format_double_exact(double v);  // %.17g, round-trips

std::vector<std::vector<std::string>> read_csv(const std::string& path);

// Sweep table reader for the tuner: takes the alpha and mean-risk columns
// by header name, falling back to the first two columns.
std::vector<std::pair<double, double>> read_alpha_risk_csv(
    const std::string& path);

// (score, label) rows for the ROC tool.
std::vector<std::pair<double, int>> read_scores_csv(const std::string& path);

// Processed-dataset format: header row, numeric rows, label in the last
// column. Read renormalizes any vector that drifted above the unit ball
// through decimal formatting.
void write_matrix(const std::string& path, const std::vector<Sample>& samples);
std::vector<Sample> read_matrix(const std::string& path);

}  // namespace dpadmm

#endif  // DPADMM_CSV_HPP_
