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

// NSL-KDD ingestion, preprocessing into unit-ball feature vectors with +/-1
// labels, synthetic data generation, and partitioning across nodes.

#ifndef DPADMM_DATASET_HPP_
#define DPADMM_DATASET_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dpadmm {

inline constexpr int kNslkddAttributes = 41;
// protocol_type, service, flag
inline constexpr int kNslkddSymbolicColumns[] = {1, 2, 3};

// One labeled training point. Label +1 = attack, -1 = normal.
// Preprocessing guarantees ||features||_2 <= 1.
struct Sample {
  Eigen::VectorXd features;
  int label = 1;
};

struct NodeDataset {
  std::vector<Sample> samples;
  int owner = 0;

  int size() const { return static_cast<int>(samples.size()); }
  int dim() const {
    return samples.empty() ? 0 : static_cast<int>(samples[0].features.size());
  }
};

// A raw NSL-KDD record: 41 attribute strings plus the mapped label.
struct RawRecord {
  std::vector<std::string> fields;  // size 41
  int label = 1;                    // normal -> -1, every attack name -> +1
  std::string label_text;
};

// Parses a comma-separated NSL-KDD file (41 attributes + label + optional
// difficulty column). Throws SchemaError on wrong column count or an empty
// file, ParseError (with line number) when a numeric attribute fails to
// parse.
std::vector<RawRecord> load_nslkdd(const std::string& path);

// Fitted preprocessing state: one-hot vocabularies for the symbolic columns,
// the retained continuous columns with their min/max, and the output
// dimension. Fitted on training data only.
struct PreprocessSpec {
  std::map<int, std::vector<std::string>> vocab;        // symbolic col -> categories
  std::vector<int> continuous_columns;                  // retained, ascending
  std::map<int, std::pair<double, double>> min_max;     // per retained column

  int output_dim() const;

  std::string to_json() const;
  static PreprocessSpec from_json(const std::string& text);
  void save(const std::string& path) const;
  static PreprocessSpec load(const std::string& path);
};

// Fits vocabularies and per-column min/max. Constant columns (zero variance
// on the fit set) are dropped; symbolic columns with a single category are
// dropped for the same reason. restrict_to, when given, limits which of the
// 41 attribute columns participate at all. Throws EmptyInput.
PreprocessSpec fit_preprocess(const std::vector<RawRecord>& records,
                              const std::vector<int>* restrict_to = nullptr);

// Transforms records into samples: continuous columns min-max scaled to
// [0,1] (values outside the fit range clamped), symbolic columns one-hot
// encoded (a category absent from the vocabulary becomes all zeros and is
// counted, not fatal), then the whole vector divided by sqrt(d) so the
// unit-ball bound holds unconditionally. unknown_categories, when non-null,
// receives the count of unseen symbolic values.
std::vector<Sample> apply_preprocess(const PreprocessSpec& spec,
                                     const std::vector<RawRecord>& records,
                                     long* unknown_categories = nullptr);

// Seeded shuffle followed by a near-equal contiguous split (sizes differ by
// at most one; earlier parts take the remainder). Throws TooFewSamples when
// |data| < parts.
std::vector<NodeDataset> partition(const std::vector<Sample>& data, int parts,
                                   uint64_t seed);

// Non-IID variant: samples are grouped by label (attacks first, each group
// shuffled) before the same contiguous split, so early nodes hold mostly
// attacks and late nodes mostly normals.
std::vector<NodeDataset> partition_label_skew(const std::vector<Sample>& data,
                                              int parts, uint64_t seed);

// (attack samples, normal samples)
std::pair<NodeDataset, NodeDataset> split_by_label(const NodeDataset& d);

// Two spherical Gaussian clusters with means +/-(separation/2) e1 and labels
// +/-1 (alternating), projected onto the unit ball via x / max(1, ||x||).
// Deterministic per seed.
std::vector<Sample> synthesize(int n, int dim, double separation,
                               uint64_t seed);

}  // namespace dpadmm

#endif  // DPADMM_DATASET_HPP_
