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

#include "evoqk/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "evoqk/datapipe.hpp"
#include "evoqk/errors.hpp"
#include "evoqk/ga.hpp"
#include "evoqk/io.hpp"

namespace evoqk {

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  const std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  RunConfig cfg;
  std::istringstream in(read_text_file(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') continue;  // section headers are cosmetic
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config parse error at line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config parse error at line " + std::to_string(line_no) + ": empty key");
    cfg.set(key, value);
  }
  return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

void RunConfig::merge(const RunConfig& overrides) {
  for (const auto& [k, v] : overrides.values_) values_[k] = v;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string RunConfig::require_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end() || it->second.empty())
    throw ConfigError("missing required option '" + key + "'");
  return it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (end != it->second.c_str() + it->second.size() || it->second.empty())
    throw ConfigError("option '" + key + "' must be a number, got '" + it->second + "'");
  return v;
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  const long v = get_long(key, fallback);
  return static_cast<int>(v);
}

long RunConfig::get_long(const std::string& key, long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  long v = 0;
  const auto [p, ec] =
      std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
  if (ec != std::errc() || p != it->second.data() + it->second.size())
    throw ConfigError("option '" + key + "' must be an integer, got '" + it->second + "'");
  return v;
}

std::uint64_t RunConfig::get_seed() const {
  const auto it = values_.find("seed");
  if (it == values_.end()) return 1;
  std::uint64_t v = 0;
  const auto [p, ec] =
      std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
  if (ec != std::errc() || p != it->second.data() + it->second.size())
    throw ConfigError("option 'seed' must be a non-negative integer");
  return v;
}

bool RunConfig::get_onoff(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second == "on") return true;
  if (it->second == "off") return false;
  throw ConfigError("option '" + key + "' must be 'on' or 'off'");
}

void Report::add_metric(const std::string& name, double value) {
  metrics.emplace_back(name, value);
}

double Report::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  throw InternalError("report has no metric '" + name + "'");
}

bool Report::has_metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return true;
  return false;
}

namespace {

struct Pipeline {
  Dataset dataset;
  SplitConfig split_config;
  SplitPlan plan;
  bool standardize = true;
};

Pipeline load_pipeline(const RunConfig& cfg, int forced_kfold = -1) {
  Pipeline p;
  p.dataset = load_csv(cfg.require_string("dataset"));
  p.standardize = cfg.get_onoff("standardize", true);
  p.split_config.kfold = forced_kfold >= 0 ? forced_kfold : cfg.get_int("kfold", 0);
  p.split_config.cap_train = cfg.get_int("cap-train", 100);
  p.split_config.cap_test = cfg.get_int("cap-test", 100);
  RngStream split_rng = RngStream::labeled(cfg.get_seed(), "split");
  p.plan = make_split(p.dataset, p.split_config, split_rng);
  return p;
}

Matrix take_rows(const Matrix& x, const std::vector<int>& idx) {
  Matrix out(static_cast<int>(idx.size()), x.cols());
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) out(i, j) = x(idx[i], j);
  return out;
}

std::vector<int> take_labels(const std::vector<int>& y, const std::vector<int>& idx) {
  std::vector<int> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = y[idx[i]];
  return out;
}

// PCA to n components and angle scaling, both fitted on the fold's
// training rows only.
struct FoldData {
  PreparedSplit split;
  AngleScaler scaler;
  Matrix pca_train;  // before angle scaling, for the RBF baseline
  Matrix pca_test;
};

FoldData prepare_fold(const Pipeline& p, int fold, int n_components, bool angle_scale) {
  const Matrix x_train_raw = take_rows(p.dataset.x, p.plan.train[fold]);
  const Matrix x_test_raw = take_rows(p.dataset.x, p.plan.test[fold]);

  const PcaModel pca = pca_fit(x_train_raw, p.standardize);
  if (n_components > pca.max_components())
    throw DataError("circuit needs " + std::to_string(n_components) +
                    " features but PCA can supply only " +
                    std::to_string(pca.max_components()));
  FoldData fd;
  fd.pca_train = pca_transform(pca, x_train_raw, n_components);
  fd.pca_test = pca_transform(pca, x_test_raw, n_components);
  if (angle_scale) {
    ScaledAngles scaled = scale_angles(fd.pca_train, fd.pca_test);
    fd.scaler = std::move(scaled.scaler);
    fd.split.x_train = std::move(scaled.train);
    fd.split.x_test = std::move(scaled.test);
  } else {
    fd.scaler = fit_angle_scaler(fd.pca_train);
    fd.split.x_train = fd.pca_train;
    fd.split.x_test = fd.pca_test;
  }
  fd.split.y_train = take_labels(p.dataset.y, p.plan.train[fold]);
  fd.split.y_test = take_labels(p.dataset.y, p.plan.test[fold]);
  return fd;
}

double evaluate_fold(const FoldData& fd, const KernelSpec& spec, const SvmConfig& svm_cfg) {
  const GramMatrix train_gram = gram(spec, fd.split.x_train);
  assert_psd_guard(train_gram);
  const SvmModel model = train_one_vs_one(train_gram, fd.split.y_train, svm_cfg);
  const Matrix cross = gram_cross(spec, fd.split.x_train, fd.split.x_test);
  return accuracy(fd.split.y_test, predict(model, cross));
}

void check_qubit_budget(int n) {
  if (n > 20)
    throw ConfigError(std::to_string(n) +
                      " qubits is beyond the dense-simulation budget (20); reduce "
                      "--components");
}

int resolve_components(const RunConfig& cfg, const Dataset& dataset) {
  const int f = dataset.x.cols();
  const int n = cfg.get_int("components", f);
  if (n < 1) throw ConfigError("components must be >= 1");
  return n;
}

Metadata resolve_metadata(const RunConfig& cfg, int n_qubits) {
  Metadata meta;
  meta.n_qubits = n_qubits;
  meta.tau = cfg.get_double("tau", 1.0);
  meta.depth = cfg.get_int("depth", 5 * n_qubits);
  meta.n_cx = cfg.get_int("ncx", 2 * n_qubits);
  meta.n_circuits = cfg.get_int("ncircuits", 16);
  meta.n_generations = cfg.get_int("ngenerations", 20);
  meta.p_m = cfg.get_double("pm", 0.1);
  meta.h_fill = cfg.get_double("hfill", 0.25);
  // Rotation allocations default to an even split of the grid, clamped so
  // they always fit beside the CX cells.
  const long cells = static_cast<long>(meta.n_qubits) * meta.depth;
  const long free_cells = cells - 2L * meta.n_cx;
  const int rot_default =
      static_cast<int>(std::max(0L, std::min(cells / 6, free_cells / 3)));
  meta.n_rx = cfg.get_int("nrx", rot_default);
  meta.n_ry = cfg.get_int("nry", rot_default);
  meta.n_rz = cfg.get_int("nrz", rot_default);
  if (cfg.get_onoff("adaptive", false)) {
    AdaptivePolicy policy;
    policy.stall_eps = cfg.get_double("stall-eps", policy.stall_eps);
    policy.window = cfg.get_int("stall-window", policy.window);
    policy.depth_increment = cfg.get_int("depth-increment", policy.depth_increment);
    meta.adaptive = policy;
  }
  meta.check();
  return meta;
}

SvmConfig resolve_svm(const RunConfig& cfg, bool final_budget) {
  SvmConfig svm;
  svm.c = cfg.get_double("c", 1.0);
  svm.tol = cfg.get_double("tol", 1e-3);
  svm.max_iter = final_budget ? cfg.get_long("max-iter-final", 1000000)
                              : cfg.get_long("max-iter-fitness", 1000);
  if (svm.c <= 0.0) throw ConfigError("c must be positive");
  if (svm.tol <= 0.0) throw ConfigError("tol must be positive");
  if (svm.max_iter < 1) throw ConfigError("iteration budgets must be >= 1");
  return svm;
}

KernelKind resolve_quantum_kernel(const RunConfig& cfg) {
  const KernelKind kind = parse_kernel_kind(cfg.get_string("kernel", "fqk"));
  if (kind == KernelKind::Rbf)
    throw ConfigError("this command needs a quantum kernel (fqk or pqk)");
  return kind;
}

KernelSpec quantum_spec(KernelKind kind, const CircuitGenome& genome, const RunConfig& cfg) {
  if (kind == KernelKind::Fqk) return KernelSpec::fqk(genome);
  return KernelSpec::pqk(genome, cfg.get_double("gamma", 1.0));
}

Report fold_report(const std::vector<double>& fold_accuracies) {
  Report report;
  std::ostringstream out;
  if (fold_accuracies.size() == 1) {
    out << "accuracy=" << format_double(fold_accuracies[0]) << "\n";
    report.add_metric("accuracy", fold_accuracies[0]);
  } else {
    double sum = 0.0;
    for (std::size_t f = 0; f < fold_accuracies.size(); ++f) {
      out << "fold_" << f << "=" << format_double(fold_accuracies[f]) << "\n";
      report.add_metric("fold_" + std::to_string(f), fold_accuracies[f]);
      sum += fold_accuracies[f];
    }
    const double mean = sum / static_cast<double>(fold_accuracies.size());
    out << "mean_accuracy=" << format_double(mean) << "\n";
    report.add_metric("mean_accuracy", mean);
  }
  report.text = out.str();
  return report;
}

}  // namespace

Report run_evolve(const RunConfig& cfg) {
  if (cfg.get_int("kfold", 0) != 0)
    throw ConfigError("evolve uses a holdout split; run 'evaluate --kfold' on the result");
  const Pipeline p = load_pipeline(cfg, 0);

  const int n = resolve_components(cfg, p.dataset);
  const FoldData fd = prepare_fold(p, 0, n, true);
  const Metadata meta = resolve_metadata(cfg, n);

  FitnessConfig fitness_cfg;
  fitness_cfg.kind = resolve_quantum_kernel(cfg);
  fitness_cfg.gamma = cfg.get_double("gamma", 1.0);
  fitness_cfg.svm = resolve_svm(cfg, false);

  const bool progress = cfg.get_onoff("progress", false);
  EvolveObserver observer;
  if (progress) {
    observer = [](int gen, const std::vector<CircuitGenome>&,
                  const std::vector<double>& fitnesses) {
      const double best = *std::max_element(fitnesses.begin(), fitnesses.end());
      std::cerr << "generation " << gen << " best " << best << "\n";
    };
  }

  const std::filesystem::path out_dir = cfg.get_string("out", "evoqk-out");
  RngStream ga_rng = RngStream::labeled(cfg.get_seed(), "ga");
  EvolutionLog live;
  const auto flush_log = [&] {
    atomic_write_file(out_dir / "evolution.csv", evolution_log_csv(live));
    for (const GenerationStat& row : live.rows)
      save_circuit(row.best, (out_dir / snapshot_filename(row.generation)).string());
  };

  EvolveResult result;
  try {
    result = evolve(meta, fd.split, fitness_cfg, ga_rng, observer, &live);
  } catch (...) {
    if (!live.rows.empty()) flush_log();  // completed generations survive an abort
    throw;
  }

  save_circuit(result.best, (out_dir / "best.circuit").string());
  flush_log();
  atomic_write_file(out_dir / "scaler.txt", scaler_to_text(fd.scaler, p.standardize));

  Report report;
  report.text = "best_fitness=" + format_double(result.best_fitness) +
                " generations=" + std::to_string(result.generations) + "\n";
  report.add_metric("best_fitness", result.best_fitness);
  report.add_metric("generations", result.generations);
  return report;
}

Report run_evaluate(const RunConfig& cfg) {
  const CircuitGenome genome = load_circuit(cfg.require_string("circuit"));
  if (auto v = validate(genome)) throw DataError("circuit file is invalid: " + v->message);
  check_qubit_budget(genome.n_qubits);

  const Pipeline p = load_pipeline(cfg);
  const KernelKind kind = resolve_quantum_kernel(cfg);
  const KernelSpec spec = quantum_spec(kind, genome, cfg);
  const SvmConfig svm_cfg = resolve_svm(cfg, true);

  std::vector<double> folds;
  for (int f = 0; f < p.plan.folds(); ++f) {
    const FoldData fd = prepare_fold(p, f, genome.n_qubits, true);
    folds.push_back(evaluate_fold(fd, spec, svm_cfg));
  }
  return fold_report(folds);
}

Report run_baseline(const RunConfig& cfg) {
  const std::string which = cfg.require_string("which");
  const Pipeline p = load_pipeline(cfg);
  const SvmConfig svm_cfg = resolve_svm(cfg, true);
  const int n = resolve_components(cfg, p.dataset);
  const int reps = cfg.get_int("reps", 2);

  std::vector<double> folds;
  for (int f = 0; f < p.plan.folds(); ++f) {
    if (which == "rbf") {
      const FoldData fd = prepare_fold(p, f, n, false);
      const double gamma =
          cfg.has("gamma") ? cfg.get_double("gamma", 1.0) : rbf_gamma_scale(fd.split.x_train);
      folds.push_back(evaluate_fold(fd, KernelSpec::rbf(gamma), svm_cfg));
    } else {
      check_qubit_budget(n);
      CircuitGenome genome;
      KernelKind kind;
      if (which == "z-fqk") { genome = z_feature_map(n, reps); kind = KernelKind::Fqk; }
      else if (which == "zz-fqk") { genome = zz_feature_map(n, reps); kind = KernelKind::Fqk; }
      else if (which == "z-pqk") { genome = z_feature_map(n, reps); kind = KernelKind::Pqk; }
      else if (which == "zz-pqk") { genome = zz_feature_map(n, reps); kind = KernelKind::Pqk; }
      else throw ConfigError("unknown baseline '" + which +
                             "' (expected rbf, z-fqk, zz-fqk, z-pqk or zz-pqk)");
      const FoldData fd = prepare_fold(p, f, n, true);
      folds.push_back(evaluate_fold(fd, quantum_spec(kind, genome, cfg), svm_cfg));
    }
  }
  return fold_report(folds);
}

Report run_pca(const RunConfig& cfg) {
  const Dataset dataset = load_csv(cfg.require_string("dataset"));
  const double threshold = cfg.get_double("variance", 0.95);
  const PcaModel model = pca_fit(dataset.x, cfg.get_onoff("standardize", true));
  const int count = components_for_variance(model, threshold);

  const std::filesystem::path out_dir = cfg.get_string("out", "evoqk-out");
  atomic_write_file(out_dir / "pca_report.csv", pca_report_csv(model));

  Report report;
  report.text = "components=" + std::to_string(count) + "\n";
  report.add_metric("components", count);
  return report;
}

}  // namespace evoqk
