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

#include "dpadmm/dpadmm.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "csv.hpp"
#include "dataset.hpp"
#include "error.hpp"
#include "harness.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "tuning.hpp"

struct dpadmm_config {
  dpadmm::ExperimentConfig cfg;
};

namespace {

thread_local std::string g_last_error = "no error";

dpadmm_status map_code(dpadmm::ErrorCode code) {
  using dpadmm::ErrorCode;
  switch (code) {
    case ErrorCode::kIoError:
      return DPADMM_ERR_IO;
    case ErrorCode::kParseError:
    case ErrorCode::kSchemaError:
      return DPADMM_ERR_PARSE;
    case ErrorCode::kConfigError:
      return DPADMM_ERR_CONFIG;
    case ErrorCode::kSolverDidNotConverge:
      return DPADMM_ERR_SOLVER;
    case ErrorCode::kInfeasibleConstraint:
    case ErrorCode::kInfeasibleDegree:
      return DPADMM_ERR_INFEASIBLE;
    case ErrorCode::kDegenerateFit:
      return DPADMM_ERR_DEGENERATE_FIT;
    default:
      return DPADMM_ERR_INVALID_ARGUMENT;
  }
}

template <typename Fn>
dpadmm_status guarded(Fn&& fn) {
  try {
    fn();
    return DPADMM_OK;
  } catch (const dpadmm::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DPADMM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return DPADMM_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dpadmm_status invalid(const char* message) {
  g_last_error = message;
  return DPADMM_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* dpadmm_version(void) { return "0.1.0"; }

const char* dpadmm_status_name(dpadmm_status status) {
  switch (status) {
    case DPADMM_OK:
      return "ok";
    case DPADMM_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case DPADMM_ERR_IO:
      return "io";
    case DPADMM_ERR_PARSE:
      return "parse";
    case DPADMM_ERR_CONFIG:
      return "config";
    case DPADMM_ERR_SOLVER:
      return "solver";
    case DPADMM_ERR_INFEASIBLE:
      return "infeasible";
    case DPADMM_ERR_DEGENERATE_FIT:
      return "degenerate_fit";
    case DPADMM_ERR_INTERNAL:
    default:
      return "internal";
  }
}

const char* dpadmm_last_error(void) { return g_last_error.c_str(); }

void dpadmm_string_free(char* s) { std::free(s); }

dpadmm_status dpadmm_config_create(dpadmm_config** out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] { *out = new dpadmm_config(); });
}

dpadmm_status dpadmm_config_load(const char* path, dpadmm_config** out) {
  if (!path || !out) return invalid("path and out must not be NULL");
  return guarded([&] {
    auto cfg = dpadmm::ExperimentConfig::load(path);
    *out = new dpadmm_config{std::move(cfg)};
  });
}

dpadmm_status dpadmm_config_set(dpadmm_config* cfg, const char* key,
                                const char* value) {
  if (!cfg || !key || !value) return invalid("cfg, key, value must not be NULL");
  return guarded([&] { cfg->cfg.set(key, value); });
}

void dpadmm_config_free(dpadmm_config* cfg) { delete cfg; }

dpadmm_status dpadmm_run_experiment(const dpadmm_config* cfg,
                                    const char* out_dir,
                                    char** summary_json_out) {
  if (!cfg) return invalid("cfg must not be NULL");
  return guarded([&] {
    auto summary =
        dpadmm::run_experiment(cfg->cfg, out_dir ? out_dir : "");
    if (summary_json_out) *summary_json_out = dup_string(summary.to_json());
  });
}

dpadmm_status dpadmm_sweep_alpha(const dpadmm_config* cfg,
                                 const double* alphas, size_t n_alphas,
                                 const char* out_dir) {
  if (!cfg || !alphas || !out_dir) {
    return invalid("cfg, alphas, out_dir must not be NULL");
  }
  return guarded([&] {
    std::vector<double> values(alphas, alphas + n_alphas);
    dpadmm::sweep_alpha(cfg->cfg, values, out_dir);
  });
}

dpadmm_status dpadmm_preprocess(const char* train_path, const char* apply_path,
                                const char* selected_features, long limit,
                                uint64_t seed, const char* train_out,
                                const char* apply_out, const char* spec_out) {
  if (!train_path || !train_out) {
    return invalid("train_path and train_out must not be NULL");
  }
  if (apply_path && !apply_out) {
    return invalid("apply_out is required with apply_path");
  }
  return guarded([&] {
    auto records = dpadmm::load_nslkdd(train_path);
    if (limit > 0 && static_cast<size_t>(limit) < records.size()) {
      std::vector<int> order(records.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
      dpadmm::Rng rng(
          dpadmm::derive_seed(seed, dpadmm::StreamKind::kShuffle, 99));
      rng.shuffle(order);
      std::vector<dpadmm::RawRecord> sub;
      sub.reserve(limit);
      for (long i = 0; i < limit; ++i) sub.push_back(records[order[i]]);
      records = std::move(sub);
    }

    std::vector<int> features;
    const std::vector<int>* restrict_to = nullptr;
    if (selected_features && *selected_features) {
      std::string item;
      for (const char* p = selected_features;; ++p) {
        if (*p == ',' || *p == '\0') {
          if (!item.empty()) features.push_back(std::stoi(item));
          item.clear();
          if (*p == '\0') break;
        } else {
          item.push_back(*p);
        }
      }
      restrict_to = &features;
    }

    auto spec = dpadmm::fit_preprocess(records, restrict_to);
    dpadmm::write_matrix(train_out, dpadmm::apply_preprocess(spec, records));
    if (apply_path) {
      auto apply_records = dpadmm::load_nslkdd(apply_path);
      dpadmm::write_matrix(apply_out,
                           dpadmm::apply_preprocess(spec, apply_records));
    }
    if (spec_out) spec.save(spec_out);
  });
}

dpadmm_status dpadmm_synth(uint32_t n, uint32_t dim, double separation,
                           uint64_t seed, const char* out_path) {
  if (!out_path) return invalid("out_path must not be NULL");
  return guarded([&] {
    auto samples = dpadmm::synthesize(static_cast<int>(n),
                                      static_cast<int>(dim), separation, seed);
    dpadmm::write_matrix(out_path, samples);
  });
}

dpadmm_status dpadmm_tune(const char* sweep_csv, double u1,
                          const double pri_constants[4],
                          dpadmm_tune_result* out) {
  if (!sweep_csv || !pri_constants || !out) {
    return invalid("sweep_csv, pri_constants, out must not be NULL");
  }
  return guarded([&] {
    auto points = dpadmm::read_alpha_risk_csv(sweep_csv);
    dpadmm::FitReport report;
    auto curve = dpadmm::fit_security_curve(points, &report);
    dpadmm::PrivacyUtility pri{pri_constants[0], pri_constants[1],
                               pri_constants[2], pri_constants[3]};
    double alpha_star = dpadmm::optimize_alpha(curve, pri, u1);
    out->c5 = curve.c5;
    out->c6 = curve.c6;
    out->c7 = curve.c7;
    out->fit_residual = report.residual_norm;
    out->alpha_star = alpha_star;
    out->objective =
        curve.eval(alpha_star) - dpadmm::privacy_utility(alpha_star, pri);
  });
}

dpadmm_status dpadmm_roc_from_file(const char* scores_csv, uint32_t resolution,
                                   const char* roc_out, double* auc_out) {
  if (!scores_csv || !roc_out) {
    return invalid("scores_csv and roc_out must not be NULL");
  }
  return guarded([&] {
    auto scores = dpadmm::read_scores_csv(scores_csv);
    auto curve = dpadmm::roc(scores, static_cast<int>(resolution));
    std::ofstream out(roc_out);
    if (!out) dpadmm::fail(dpadmm::ErrorCode::kIoError,
                           std::string("cannot write ") + roc_out);
    out << "fpr,tpr\n";
    for (const auto& [x, y] : curve.points) {
      out << dpadmm::format_double(x) << "," << dpadmm::format_double(y)
          << "\n";
    }
    if (auc_out) *auc_out = curve.auc;
  });
}

}  // extern "C"
