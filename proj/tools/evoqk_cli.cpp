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

// Command-line front end. All functionality lives behind the C API of the
// evoqk shared library; this file only parses flags into config keys.

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "evoqk.h"

namespace {

void print_usage(FILE* out) {
  std::fprintf(out,
               "usage: evoqk <command> [--flag value]...\n"
               "\n"
               "commands:\n"
               "  evolve     search for a feature-map circuit with the genetic algorithm\n"
               "  evaluate   score a saved circuit on a dataset (holdout or k-fold)\n"
               "  baseline   score a reference kernel: rbf, z-fqk, zz-fqk, z-pqk, zz-pqk\n"
               "  pca        report principal components for a variance threshold\n"
               "\n"
               "common flags (all also valid as 'key = value' config entries):\n"
               "  --dataset <csv>       samples: features..., integer label last\n"
               "  --config <file>       load config file first; flags override it\n"
               "  --out <dir>           artifact directory (default evoqk-out)\n"
               "  --seed <n>            master seed, default 1\n"
               "  --kernel <k>          fqk | pqk | rbf\n"
               "  --components <n>      PCA components = qubits (default: all features)\n"
               "  --kfold <k>           0 = holdout (default), otherwise k folds\n"
               "  --cap-train/--cap-test <n>   per-fold size caps (default 100/100)\n"
               "  --standardize on|off  standardize features before PCA (default on)\n"
               "  --gamma, --c, --tol, --max-iter-fitness, --max-iter-final\n"
               "\n"
               "evolve flags:\n"
               "  --tau --depth --ncx --pm --ncircuits --ngenerations\n"
               "  --nrx --nry --nrz --hfill --adaptive on|off\n"
               "  --stall-window --stall-eps --depth-increment --progress on|off\n"
               "\n"
               "evaluate flags:  --circuit <file>\n"
               "baseline flags:  --which <rbf|z-fqk|zz-fqk|z-pqk|zz-pqk> --reps <n>\n"
               "pca flags:       --variance <t>   threshold in (0,1], default 0.95\n"
               "\n"
               "exit codes: 0 ok, 1 usage/config error, 2 data error, 3 internal error\n");
}

struct Cleanup {
  evoqk_config* config = nullptr;
  evoqk_report* report = nullptr;
  ~Cleanup() {
    evoqk_report_destroy(report);
    evoqk_config_destroy(config);
  }
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    print_usage(stderr);
    return EVOQK_ERR_CONFIG;
  }
  const std::string command = argv[1];
  if (command == "--help" || command == "-h" || command == "help") {
    print_usage(stdout);
    return EVOQK_OK;
  }

  std::vector<std::pair<std::string, std::string>> flags;
  std::string config_path;
  for (int i = 2; i < argc; ++i) {
    std::string flag = argv[i];
    if (flag == "--help" || flag == "-h") {
      print_usage(stdout);
      return EVOQK_OK;
    }
    if (flag.rfind("--", 0) != 0 || flag.size() <= 2) {
      std::fprintf(stderr, "evoqk: unexpected argument '%s'\n", flag.c_str());
      return EVOQK_ERR_CONFIG;
    }
    if (i + 1 >= argc) {
      std::fprintf(stderr, "evoqk: flag '%s' needs a value\n", flag.c_str());
      return EVOQK_ERR_CONFIG;
    }
    const std::string key = flag.substr(2);
    const std::string value = argv[++i];
    if (key == "config") {
      config_path = value;
    } else {
      flags.emplace_back(key, value);
    }
  }

  Cleanup scope;
  int rc = evoqk_config_create(&scope.config);
  if (rc != EVOQK_OK) {
    std::fprintf(stderr, "evoqk: %s\n", evoqk_last_error());
    return rc;
  }
  if (!config_path.empty()) {
    rc = evoqk_config_load_file(scope.config, config_path.c_str());
    if (rc != EVOQK_OK) {
      std::fprintf(stderr, "evoqk: %s\n", evoqk_last_error());
      return rc;
    }
  }
  for (const auto& [key, value] : flags) {
    rc = evoqk_config_set(scope.config, key.c_str(), value.c_str());
    if (rc != EVOQK_OK) {
      std::fprintf(stderr, "evoqk: %s\n", evoqk_last_error());
      return rc;
    }
  }

  if (command == "evolve") {
    rc = evoqk_run_evolve(scope.config, &scope.report);
  } else if (command == "evaluate") {
    rc = evoqk_run_evaluate(scope.config, &scope.report);
  } else if (command == "baseline") {
    rc = evoqk_run_baseline(scope.config, &scope.report);
  } else if (command == "pca") {
    rc = evoqk_run_pca(scope.config, &scope.report);
  } else {
    std::fprintf(stderr, "evoqk: unknown command '%s'\n", command.c_str());
    print_usage(stderr);
    return EVOQK_ERR_CONFIG;
  }

  if (rc != EVOQK_OK) {
    std::fprintf(stderr, "evoqk: %s\n", evoqk_last_error());
    return rc;
  }
  std::fputs(evoqk_report_text(scope.report), stdout);
  return EVOQK_OK;
}
