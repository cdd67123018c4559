// Copyright 2025-2026 The evoqk developers.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "evoqk.h"

#include <string>

#include "evoqk/circuit.hpp"
#include "evoqk/errors.hpp"
#include "evoqk/runner.hpp"

struct evoqk_config {
  evoqk::RunConfig impl;
};

struct evoqk_report {
  evoqk::Report impl;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Funnels every exception into a status code and the thread-local message.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return EVOQK_OK;
  } catch (const evoqk::ConfigError& e) {
    return fail(EVOQK_ERR_CONFIG, e.what());
  } catch (const evoqk::DataError& e) {
    return fail(EVOQK_ERR_DATA, e.what());
  } catch (const std::exception& e) {
    return fail(EVOQK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EVOQK_ERR_INTERNAL, "unknown error");
  }
}

using RunFn = evoqk::Report (*)(const evoqk::RunConfig&);

int run_command(RunFn fn, const evoqk_config* config, evoqk_report** out) {
  if (!config || !out) return fail(EVOQK_ERR_CONFIG, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new evoqk_report{fn(config->impl)}; });
}

}  // namespace

extern "C" {

const char* evoqk_version(void) { return "0.1.0"; }

const char* evoqk_last_error(void) { return g_last_error.c_str(); }

int evoqk_config_create(evoqk_config** out) {
  if (!out) return fail(EVOQK_ERR_CONFIG, "null argument");
  return guarded([&] { *out = new evoqk_config{}; });
}

void evoqk_config_destroy(evoqk_config* config) { delete config; }

int evoqk_config_load_file(evoqk_config* config, const char* path) {
  if (!config || !path) return fail(EVOQK_ERR_CONFIG, "null argument");
  return guarded([&] { config->impl.merge(evoqk::RunConfig::from_file(path)); });
}

int evoqk_config_set(evoqk_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(EVOQK_ERR_CONFIG, "null argument");
  return guarded([&] { config->impl.set(key, value); });
}

const char* evoqk_config_get(const evoqk_config* config, const char* key) {
  if (!config || !key) return nullptr;
  const auto& values = config->impl.values();
  const auto it = values.find(key);
  return it == values.end() ? nullptr : it->second.c_str();
}

int evoqk_run_evolve(const evoqk_config* config, evoqk_report** out) {
  return run_command(&evoqk::run_evolve, config, out);
}

int evoqk_run_evaluate(const evoqk_config* config, evoqk_report** out) {
  return run_command(&evoqk::run_evaluate, config, out);
}

int evoqk_run_baseline(const evoqk_config* config, evoqk_report** out) {
  return run_command(&evoqk::run_baseline, config, out);
}

int evoqk_run_pca(const evoqk_config* config, evoqk_report** out) {
  return run_command(&evoqk::run_pca, config, out);
}

const char* evoqk_report_text(const evoqk_report* report) {
  return report ? report->impl.text.c_str() : "";
}

int evoqk_report_metric(const evoqk_report* report, const char* name, double* value) {
  if (!report || !name || !value) return fail(EVOQK_ERR_CONFIG, "null argument");
  if (!report->impl.has_metric(name))
    return fail(EVOQK_ERR_CONFIG, std::string("no such metric: ") + name);
  *value = report->impl.metric(name);
  g_last_error.clear();
  return EVOQK_OK;
}

void evoqk_report_destroy(evoqk_report* report) { delete report; }

int evoqk_circuit_inspect(const char* path, int* n_qubits, int* depth) {
  if (!path) return fail(EVOQK_ERR_CONFIG, "null argument");
  return guarded([&] {
    const evoqk::CircuitGenome genome = evoqk::load_circuit(path);
    if (auto v = evoqk::validate(genome))
      throw evoqk::DataError("invalid circuit: " + v->message);
    if (n_qubits) *n_qubits = genome.n_qubits;
    if (depth) *depth = genome.depth;
  });
}

}  // extern "C"
