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

#pragma once

#include <map>
#include <string>
#include <vector>

namespace evoqk {

// Flat key/value run configuration. Files use one `key = value` per line
// with '#' comments; optional `[section]` headers are organizational only.
// Command-line flags carry the same names and override file values.
class RunConfig {
 public:
  static RunConfig from_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  void merge(const RunConfig& overrides);

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string require_string(const std::string& key) const;  // ConfigError if absent
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  long get_long(const std::string& key, long fallback) const;
  std::uint64_t get_seed() const;
  bool get_onoff(const std::string& key, bool fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

struct Report {
  std::string text;  // what the CLI prints on stdout
  std::vector<std::pair<std::string, double>> metrics;

  void add_metric(const std::string& name, double value);
  double metric(const std::string& name) const;  // InternalError if missing
  bool has_metric(const std::string& name) const;
};

// The four pipeline commands. Each is deterministic under a fixed config
// and seed, never mutates its inputs, and writes artifacts atomically.
Report run_evolve(const RunConfig& config);
Report run_evaluate(const RunConfig& config);
Report run_baseline(const RunConfig& config);
Report run_pca(const RunConfig& config);

}  // namespace evoqk
