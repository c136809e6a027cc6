/* Copyright 2026 The dpadmm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the dpadmm shared library: differentially private consensus
 * training of an intrusion classifier over a simulated vehicle network,
 * plus the preprocessing, sweep, tuning and evaluation tools around it.
 *
 * All functions return DPADMM_OK on success; on failure they return a
 * status code and leave a human-readable message in dpadmm_last_error()
 * (thread local). Strings returned through char** are owned by the caller
 * and must be released with dpadmm_string_free().
 */

#ifndef DPADMM_DPADMM_H_
#define DPADMM_DPADMM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DPADMM_API __declspec(dllexport)
#else
#define DPADMM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dpadmm_status {
  DPADMM_OK = 0,
  DPADMM_ERR_INVALID_ARGUMENT = 1,
  DPADMM_ERR_IO = 2,
  DPADMM_ERR_PARSE = 3,
  DPADMM_ERR_CONFIG = 4,
  DPADMM_ERR_SOLVER = 5,
  DPADMM_ERR_INFEASIBLE = 6,
  DPADMM_ERR_DEGENERATE_FIT = 7,
  DPADMM_ERR_INTERNAL = 8
} dpadmm_status;

DPADMM_API const char* dpadmm_version(void);
DPADMM_API const char* dpadmm_status_name(dpadmm_status status);

/* Message describing the most recent failure on this thread; never NULL. */
DPADMM_API const char* dpadmm_last_error(void);

DPADMM_API void dpadmm_string_free(char* s);

/* Opaque experiment configuration. */
typedef struct dpadmm_config dpadmm_config;

DPADMM_API dpadmm_status dpadmm_config_create(dpadmm_config** out);
DPADMM_API dpadmm_status dpadmm_config_load(const char* path,
                                            dpadmm_config** out);
/* Sets one key of the config-file schema, e.g. ("alpha", "0.5"). */
DPADMM_API dpadmm_status dpadmm_config_set(dpadmm_config* cfg, const char* key,
                                           const char* value);
DPADMM_API void dpadmm_config_free(dpadmm_config* cfg);

/* Runs the configured experiment over all seeds. Writes per-iteration
 * metrics, score and ROC CSVs plus summary.json under out_dir (falls back
 * to the config's out_dir when NULL). summary_json_out, when non-NULL,
 * receives the summary record. */
DPADMM_API dpadmm_status dpadmm_run_experiment(const dpadmm_config* cfg,
                                               const char* out_dir,
                                               char** summary_json_out);

/* One run per alpha value (dvp mode forced); writes <out_dir>/sweep.csv
 * with columns alpha,mean_final_er,std_final_er,mean_auc,std_auc. */
DPADMM_API dpadmm_status dpadmm_sweep_alpha(const dpadmm_config* cfg,
                                            const double* alphas,
                                            size_t n_alphas,
                                            const char* out_dir);

/* Fits the NSL-KDD preprocessing pipeline on train_path and writes the
 * processed matrix (header row, numeric rows, label last) to train_out.
 * Optional: apply_path/apply_out transform a second file with the same
 * fitted state, spec_out saves the fitted state as JSON,
 * selected_features ("2,3,5") restricts the attribute columns, limit > 0
 * subsamples the training records with the given seed. */
DPADMM_API dpadmm_status dpadmm_preprocess(const char* train_path,
                                           const char* apply_path,
                                           const char* selected_features,
                                           long limit, uint64_t seed,
                                           const char* train_out,
                                           const char* apply_out,
                                           const char* spec_out);

/* Writes a synthetic two-cluster dataset in the processed-matrix format. */
DPADMM_API dpadmm_status dpadmm_synth(uint32_t n, uint32_t dim,
                                      double separation, uint64_t seed,
                                      const char* out_path);

typedef struct dpadmm_tune_result {
  double c5, c6, c7;   /* fitted security curve c5 e^{-c6 a} + c7 */
  double fit_residual; /* residual norm of the fit */
  double alpha_star;   /* optimizer of the tradeoff program */
  double objective;    /* objective value at alpha_star */
} dpadmm_tune_result;

/* Fits the security curve to a sweep table (columns alpha,mean_final_er)
 * and solves the tradeoff program. pri_constants is {cv1, cv2, cv3, cv4};
 * all-zero selects the identically-zero privacy utility. u1 is the
 * security-utility threshold; pass +inf to deactivate the constraint. */
DPADMM_API dpadmm_status dpadmm_tune(const char* sweep_csv, double u1,
                                     const double pri_constants[4],
                                     dpadmm_tune_result* out);

/* Turns a (score,label) CSV into a ROC curve CSV; auc_out receives the
 * area under the curve. resolution caps the point count (0 = all). */
DPADMM_API dpadmm_status dpadmm_roc_from_file(const char* scores_csv,
                                              uint32_t resolution,
                                              const char* roc_out,
                                              double* auc_out);

#ifdef __cplusplus
}
#endif

#endif /* DPADMM_DPADMM_H_ */
