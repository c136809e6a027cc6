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

// Experiment orchestration: declarative configs, seeded and byte-identical
// runs, per-iteration metrics, ROC and score files, and alpha sweeps.

#ifndef DPADMM_HARNESS_HPP_
#define DPADMM_HARNESS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "objective.hpp"
#include "solver.hpp"

namespace dpadmm {

struct ExperimentConfig {
  enum class Source { kSynthetic, kNslkdd, kMatrix };
  enum class TopoKind { kRandom, kPath, kRing, kStar, kComplete };
  enum class Mode { kNonPrivate, kDvp };

  Source source = Source::kSynthetic;

  int synth_train_n = 4000;
  int synth_test_n = 1000;
  int synth_dim = 10;
  double synth_separation = 5.0;

  std::string nslkdd_train_path;
  std::string nslkdd_test_path;  // optional; else test_fraction holdout
  int nslkdd_subsample = 0;      // 0 = use everything

  std::string matrix_train_path;
  std::string matrix_test_path;  // optional

  std::vector<int> preprocess_features;  // optional column restriction
  double test_fraction = 0.25;
  bool label_skew_partition = false;  // non-IID split across nodes

  int nodes = 4;
  TopoKind topology = TopoKind::kRandom;
  double avg_degree = 3.0;
  std::vector<int> schedule_k;  // per-phase iteration counts; empty = 1 phase
  std::vector<int> schedule_p;  // per-phase node counts; empty = `nodes`

  Mode mode = Mode::kNonPrivate;
  std::vector<double> alpha;  // scalar or one per node (dvp only)
  int iterations = 45;

  Hyper hyper;
  SolverCfg solver;

  std::vector<uint64_t> seeds{0};
  bool seeds_explicit = false;  // set once the config names its seeds
  std::string out_dir = "out";

  // Applies one key from the config file schema; throws ConfigError on an
  // unknown key or a malformed value.
  void set(const std::string& key, const std::string& value);

  // Parses `key = value` lines ('#' starts a comment). Duplicate and
  // unknown keys are rejected.
  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);

  // Every invariant that can be checked without touching data files.
  void validate() const;

  int max_nodes() const;
};

struct SeedResult {
  uint64_t seed = 0;
  double final_er = 0.0;
  double auc = 0.0;
  double fpr = 0.0;
  double fnr = 0.0;
  double wall_time_s = 0.0;
};

struct RunSummary {
  std::string mode;
  std::vector<SeedResult> per_seed;
  double mean_final_er = 0.0, std_final_er = 0.0;
  double mean_auc = 0.0, std_auc = 0.0;
  double mean_fpr = 0.0, mean_fnr = 0.0;

  std::string to_json() const;
};

// Runs the configured experiment once per seed, writing per-iteration
// metrics, score and ROC files plus summary.json under the output
// directory, and returns the aggregated summary. out_dir_override, when
// non-empty, replaces cfg.out_dir.
RunSummary run_experiment(const ExperimentConfig& cfg,
                          const std::string& out_dir_override = "");

struct SweepRow {
  double alpha = 0.0;
  double mean_final_er = 0.0;
  double std_final_er = 0.0;
  double mean_auc = 0.0;
  double std_auc = 0.0;
};

// One run_experiment per alpha (all seeds each), written to
// <out_dir>/alpha_<value>/ with the tradeoff table in <out_dir>/sweep.csv.
std::vector<SweepRow> sweep_alpha(const ExperimentConfig& cfg,
                                  const std::vector<double>& alphas,
                                  const std::string& out_dir);

}  // namespace dpadmm

#endif  // DPADMM_HARNESS_HPP_
