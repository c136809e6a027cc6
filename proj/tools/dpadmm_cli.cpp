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

// Command-line front end. Everything goes through the shared library's C
// API; this file only parses arguments and reports results.

#include <cstdint>
#include <cstdio>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpadmm/dpadmm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct ConfigDeleter {
  void operator()(dpadmm_config* c) const { dpadmm_config_free(c); }
};
using ConfigPtr = std::unique_ptr<dpadmm_config, ConfigDeleter>;

int report(dpadmm_status status) {
  if (status == DPADMM_OK) return kExitOk;
  std::fprintf(stderr, "error (%s): %s\n", dpadmm_status_name(status),
               dpadmm_last_error());
  return kExitRuntime;
}

ConfigPtr load_config(const std::string& path, dpadmm_status& status) {
  dpadmm_config* raw = nullptr;
  status = dpadmm_config_load(path.c_str(), &raw);
  return ConfigPtr(raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private consensus training of an intrusion "
               "classifier over a simulated vehicle network"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool has_seed = false;
  uint64_t seed = 0;

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config file")
        ->required();
    cmd->add_option("--out-dir", out_dir, "output directory override");
    cmd->add_option_function<uint64_t>(
        "--seed",
        [&](const uint64_t& v) {
          has_seed = true;
          seed = v;
        },
        "replace the config's seed list with a single seed");
  };

  auto* train = app.add_subcommand("train", "non-private consensus training");
  add_run_flags(train);

  std::string alpha_override;
  auto* private_train =
      app.add_subcommand("private-train", "dual-variable-perturbation training");
  add_run_flags(private_train);
  private_train->add_option("--alpha", alpha_override,
                            "privacy parameter (scalar or per-node list)");

  auto* sweep = app.add_subcommand("sweep", "run one experiment per alpha");
  add_run_flags(sweep);
  std::vector<double> sweep_alphas;
  sweep->add_option("--alphas", sweep_alphas, "alpha values")
      ->required()
      ->delimiter(',');

  auto* preprocess =
      app.add_subcommand("preprocess", "fit and apply the NSL-KDD pipeline");
  std::string pp_input, pp_apply, pp_output, pp_apply_out, pp_spec, pp_features;
  long pp_limit = 0;
  uint64_t pp_seed = 0;
  preprocess->add_option("--input", pp_input, "raw training file")->required();
  preprocess->add_option("--output", pp_output, "processed matrix out")
      ->required();
  preprocess->add_option("--apply-to", pp_apply,
                         "second raw file transformed with the fitted state");
  preprocess->add_option("--apply-output", pp_apply_out,
                         "processed matrix for --apply-to");
  preprocess->add_option("--spec-out", pp_spec, "save fitted state as JSON");
  preprocess->add_option("--features", pp_features,
                         "comma list of attribute columns to keep");
  preprocess->add_option("--limit", pp_limit, "subsample this many records");
  preprocess->add_option("--seed", pp_seed, "subsample seed");

  auto* synth = app.add_subcommand("synth", "write a synthetic dataset");
  uint32_t synth_n = 1000, synth_dim = 10;
  double synth_sep = 5.0;
  uint64_t synth_seed = 0;
  std::string synth_out;
  synth->add_option("--n", synth_n, "sample count");
  synth->add_option("--dim", synth_dim, "feature dimension");
  synth->add_option("--separation", synth_sep, "cluster mean separation");
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--output", synth_out, "matrix file out")->required();

  auto* tune = app.add_subcommand(
      "tune", "fit the security curve and solve the tradeoff program");
  std::string tune_sweep;
  double tune_u1 = std::numeric_limits<double>::infinity();
  std::vector<double> tune_pri{20.0, 6.0, 5.0, 1.0};
  tune->add_option("--sweep", tune_sweep, "sweep.csv from the sweep command")
      ->required();
  tune->add_option("--u1", tune_u1, "security-utility threshold");
  tune->add_option("--pri", tune_pri,
                   "privacy-utility constants cv1,cv2,cv3,cv4")
      ->delimiter(',')
      ->expected(4);

  auto* roc_cmd = app.add_subcommand("roc", "score file to ROC curve");
  std::string roc_scores, roc_out;
  uint32_t roc_resolution = 0;
  roc_cmd->add_option("--scores", roc_scores, "CSV of score,label rows")
      ->required();
  roc_cmd->add_option("--output", roc_out, "ROC CSV out")->required();
  roc_cmd->add_option("--resolution", roc_resolution,
                      "max ROC points (0 = all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  auto run_training = [&](const char* mode) {
    dpadmm_status status;
    ConfigPtr cfg = load_config(config_path, status);
    if (status != DPADMM_OK) return report(status);
    status = dpadmm_config_set(cfg.get(), "mode", mode);
    if (status != DPADMM_OK) return report(status);
    if (has_seed) {
      status = dpadmm_config_set(cfg.get(), "seeds",
                                 std::to_string(seed).c_str());
      if (status != DPADMM_OK) return report(status);
    }
    if (!alpha_override.empty()) {
      status = dpadmm_config_set(cfg.get(), "alpha", alpha_override.c_str());
      if (status != DPADMM_OK) return report(status);
    }
    char* summary = nullptr;
    status = dpadmm_run_experiment(
        cfg.get(), out_dir.empty() ? nullptr : out_dir.c_str(), &summary);
    if (status != DPADMM_OK) return report(status);
    std::printf("%s\n", summary);
    dpadmm_string_free(summary);
    return kExitOk;
  };

  if (train->parsed()) return run_training("non-private");
  if (private_train->parsed()) return run_training("dvp");

  if (sweep->parsed()) {
    dpadmm_status status;
    ConfigPtr cfg = load_config(config_path, status);
    if (status != DPADMM_OK) return report(status);
    if (has_seed) {
      status = dpadmm_config_set(cfg.get(), "seeds",
                                 std::to_string(seed).c_str());
      if (status != DPADMM_OK) return report(status);
    }
    std::string dir = out_dir.empty() ? "out" : out_dir;
    status = dpadmm_sweep_alpha(cfg.get(), sweep_alphas.data(),
                                sweep_alphas.size(), dir.c_str());
    if (status != DPADMM_OK) return report(status);
    std::printf("wrote %s/sweep.csv\n", dir.c_str());
    return kExitOk;
  }

  if (preprocess->parsed()) {
    if (!pp_apply.empty() && pp_apply_out.empty()) {
      std::fprintf(stderr, "error: --apply-to requires --apply-output\n");
      return kExitUsage;
    }
    dpadmm_status status = dpadmm_preprocess(
        pp_input.c_str(), pp_apply.empty() ? nullptr : pp_apply.c_str(),
        pp_features.empty() ? nullptr : pp_features.c_str(), pp_limit, pp_seed,
        pp_output.c_str(), pp_apply_out.empty() ? nullptr : pp_apply_out.c_str(),
        pp_spec.empty() ? nullptr : pp_spec.c_str());
    if (status != DPADMM_OK) return report(status);
    std::printf("wrote %s\n", pp_output.c_str());
    return kExitOk;
  }

  if (synth->parsed()) {
    dpadmm_status status =
        dpadmm_synth(synth_n, synth_dim, synth_sep, synth_seed,
                     synth_out.c_str());
    if (status != DPADMM_OK) return report(status);
    std::printf("wrote %s\n", synth_out.c_str());
    return kExitOk;
  }

  if (tune->parsed()) {
    dpadmm_tune_result result;
    dpadmm_status status =
        dpadmm_tune(tune_sweep.c_str(), tune_u1, tune_pri.data(), &result);
    if (status != DPADMM_OK) return report(status);
    std::printf("c5 = %.10g\nc6 = %.10g\nc7 = %.10g\n", result.c5, result.c6,
                result.c7);
    std::printf("fit_residual = %.10g\n", result.fit_residual);
    std::printf("alpha_star = %.10g\nobjective = %.10g\n", result.alpha_star,
                result.objective);
    return kExitOk;
  }

  if (roc_cmd->parsed()) {
    double auc = 0.0;
    dpadmm_status status = dpadmm_roc_from_file(
        roc_scores.c_str(), roc_resolution, roc_out.c_str(), &auc);
    if (status != DPADMM_OK) return report(status);
    std::printf("auc = %.10g\nwrote %s\n", auc, roc_out.c_str());
    return kExitOk;
  }

  return kExitUsage;
}
