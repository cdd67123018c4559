/* Copyright 2025-2026 The evoqk developers.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the evoqk shared library: evolving quantum feature-map
 * circuits for kernel SVM classification on a statevector simulator.
 *
 * All functions return one of the EVOQK_* status codes below; on failure
 * evoqk_last_error() describes the problem. Handles are opaque and owned
 * by the caller via the matching _destroy function.
 */

#ifndef EVOQK_H
#define EVOQK_H

#ifdef __cplusplus
extern "C" {
#endif

#define EVOQK_OK 0
#define EVOQK_ERR_CONFIG 1   /* bad usage or configuration */
#define EVOQK_ERR_DATA 2     /* malformed or inconsistent input files */
#define EVOQK_ERR_INTERNAL 3 /* broken internal invariant */

typedef struct evoqk_config evoqk_config;
typedef struct evoqk_report evoqk_report;

const char* evoqk_version(void);

/* Message for the most recent failure on this thread; empty string if the
 * last call succeeded. The pointer stays valid until the next API call on
 * the same thread. */
const char* evoqk_last_error(void);

/* --- run configuration: flat string key/value pairs ------------------- */

int evoqk_config_create(evoqk_config** out);
void evoqk_config_destroy(evoqk_config* config);

/* Loads `key = value` lines ('#' comments, optional [section] headers). */
int evoqk_config_load_file(evoqk_config* config, const char* path);
int evoqk_config_set(evoqk_config* config, const char* key, const char* value);

/* NULL when the key is unset. Valid until the config is modified. */
const char* evoqk_config_get(const evoqk_config* config, const char* key);

/* --- pipeline commands ------------------------------------------------ */

/* Evolves a feature-map circuit; writes best.circuit, evolution.csv,
 * scaler.txt and per-generation snapshots under the `out` directory. */
int evoqk_run_evolve(const evoqk_config* config, evoqk_report** out);

/* Scores a saved circuit on a dataset (holdout or k-fold). */
int evoqk_run_evaluate(const evoqk_config* config, evoqk_report** out);

/* Scores a fixed reference kernel: rbf, z-fqk, zz-fqk, z-pqk or zz-pqk. */
int evoqk_run_baseline(const evoqk_config* config, evoqk_report** out);

/* Principal-component report; prints the component count needed for the
 * requested cumulative explained variance. */
int evoqk_run_pca(const evoqk_config* config, evoqk_report** out);

/* --- reports ----------------------------------------------------------- */

const char* evoqk_report_text(const evoqk_report* report);

/* 0 and *value set when the metric exists; EVOQK_ERR_CONFIG otherwise. */
int evoqk_report_metric(const evoqk_report* report, const char* name, double* value);

void evoqk_report_destroy(evoqk_report* report);

/* --- circuit files ------------------------------------------------------ */

/* Parses and validates a circuit file; fills qubit/depth counts when the
 * pointers are non-null. */
int evoqk_circuit_inspect(const char* path, int* n_qubits, int* depth);

#ifdef __cplusplus
}
#endif

#endif /* EVOQK_H */
