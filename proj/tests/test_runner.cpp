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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "evoqk.h"
#include "evoqk/circuit.hpp"
#include "evoqk/errors.hpp"
#include "evoqk/io.hpp"
#include "evoqk/kernels.hpp"
#include "evoqk/runner.hpp"
#include "fixtures.hpp"

using namespace evoqk;

#ifndef EVOQK_SOURCE_DIR
#define EVOQK_SOURCE_DIR "."
#endif

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("evoqk_test_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string write_blobs_csv(const fs::path& dir, int m, double separation, int seed) {
  RngStream rng(seed);
  const Dataset d = fixtures::blobs(m, separation, rng);
  std::ostringstream out;
  for (int i = 0; i < d.x.rows(); ++i)
    out << format_double(d.x(i, 0)) << ',' << format_double(d.x(i, 1)) << ',' << d.y[i]
        << '\n';
  const fs::path file = dir / "blobs.csv";
  std::ofstream(file) << out.str();
  return file.string();
}

// Strips the elapsed_ms column, the only field wall-clock time leaks into.
std::string mask_elapsed(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t cut = line.rfind(',');
    out << line.substr(0, cut) << '\n';
  }
  return out.str();
}

RunConfig base_config(const std::string& dataset, const fs::path& out) {
  RunConfig cfg;
  cfg.set("dataset", dataset);
  cfg.set("out", out.string());
  cfg.set("seed", "9");
  cfg.set("ncircuits", "4");
  cfg.set("ngenerations", "2");
  cfg.set("depth", "3");
  cfg.set("ncx", "1");
  cfg.set("cap-train", "30");
  cfg.set("cap-test", "20");
  return cfg;
}

}  // namespace

TEST_CASE("config files parse key = value lines with sections and comments") {
  TempDir tmp("config");
  const fs::path file = tmp.path / "run.conf";
  std::ofstream(file) << "# a comment\n"
                      << "[metadata]\n"
                      << "depth = 7\n"
                      << "tau=0.9\n"
                      << "\n"
                      << "[svm]\n"
                      << "c = 2.5\n";
  const RunConfig cfg = RunConfig::from_file(file.string());
  CHECK(cfg.get_int("depth", 0) == 7);
  CHECK(cfg.get_double("tau", 0) == doctest::Approx(0.9));
  CHECK(cfg.get_double("c", 0) == doctest::Approx(2.5));
  CHECK(cfg.get_string("missing", "dflt") == "dflt");

  std::ofstream(file) << "no equals sign\n";
  CHECK_THROWS_AS(RunConfig::from_file(file.string()), ConfigError);
}

TEST_CASE("config typed getters validate their input") {
  RunConfig cfg;
  cfg.set("depth", "abc");
  CHECK_THROWS_AS(cfg.get_int("depth", 0), ConfigError);
  cfg.set("standardize", "maybe");
  CHECK_THROWS_AS(cfg.get_onoff("standardize", true), ConfigError);
  CHECK_THROWS_AS(cfg.require_string("nope"), ConfigError);
}

TEST_CASE("evolve writes its artifacts and a parsable summary") {
  TempDir tmp("evolve");
  const std::string dataset = write_blobs_csv(tmp.path, 50, 6.0, 1);
  const fs::path out = tmp.path / "run";
  const Report report = run_evolve(base_config(dataset, out));

  CHECK(report.text.rfind("best_fitness=", 0) == 0);
  CHECK(report.text.find(" generations=") != std::string::npos);
  CHECK(report.metric("best_fitness") >= 0.0);
  CHECK(report.metric("best_fitness") <= 1.0);

  CHECK(fs::exists(out / "best.circuit"));
  CHECK(fs::exists(out / "evolution.csv"));
  CHECK(fs::exists(out / "scaler.txt"));
  CHECK(fs::exists(out / "snapshots" / "gen_0000.circuit"));
  CHECK(!validate(load_circuit((out / "best.circuit").string())));

  // No temp files left behind by the atomic writer.
  for (const auto& entry : fs::recursive_directory_iterator(out))
    CHECK(entry.path().string().find(".tmp") == std::string::npos);

  const std::string csv = read_text_file(out / "evolution.csv");
  CHECK(csv.rfind("generation,best_fitness,mean_fitness,best_circuit_file,seed,elapsed_ms\n",
                  0) == 0);
  CHECK(csv.find(",9,") != std::string::npos);  // master seed, not the stream hash
}

TEST_CASE("tau zero stops after the first evaluated generation") {
  TempDir tmp("tau0");
  const std::string dataset = write_blobs_csv(tmp.path, 40, 6.0, 12);
  RunConfig cfg = base_config(dataset, tmp.path / "run");
  cfg.set("tau", "0");
  cfg.set("ngenerations", "50");
  const Report r = run_evolve(cfg);
  CHECK(r.metric("generations") == 1);
  CHECK(fs::exists(tmp.path / "run" / "best.circuit"));
}

TEST_CASE("evolve is reproducible: identical logs modulo wall time") {
  TempDir tmp("repro");
  const std::string dataset = write_blobs_csv(tmp.path, 50, 6.0, 2);
  const Report a = run_evolve(base_config(dataset, tmp.path / "a"));
  const Report b = run_evolve(base_config(dataset, tmp.path / "b"));
  CHECK(a.metric("best_fitness") == b.metric("best_fitness"));
  const std::string csv_a = read_text_file(tmp.path / "a" / "evolution.csv");
  const std::string csv_b = read_text_file(tmp.path / "b" / "evolution.csv");
  CHECK(mask_elapsed(csv_a) == mask_elapsed(csv_b));
  CHECK(read_text_file(tmp.path / "a" / "best.circuit") ==
        read_text_file(tmp.path / "b" / "best.circuit"));
}

TEST_CASE("evolve does not mutate its input dataset") {
  TempDir tmp("mutate");
  const std::string dataset = write_blobs_csv(tmp.path, 40, 6.0, 3);
  const std::string before = read_text_file(dataset);
  run_evolve(base_config(dataset, tmp.path / "run"));
  CHECK(read_text_file(dataset) == before);
}

TEST_CASE("evaluate reproduces the evolve fitness when budgets match") {
  TempDir tmp("roundtrip");
  const std::string dataset = write_blobs_csv(tmp.path, 50, 6.0, 4);
  RunConfig cfg = base_config(dataset, tmp.path / "run");
  cfg.set("max-iter-fitness", "1000");
  const Report evolved = run_evolve(cfg);

  RunConfig eval;
  eval.set("dataset", dataset);
  eval.set("circuit", (tmp.path / "run" / "best.circuit").string());
  eval.set("seed", "9");
  eval.set("cap-train", "30");
  eval.set("cap-test", "20");
  eval.set("max-iter-final", "1000");  // match the fitness budget
  const Report scored = run_evaluate(eval);
  CHECK(scored.metric("accuracy") == evolved.metric("best_fitness"));
}

TEST_CASE("evaluate reports per-fold accuracies plus the mean") {
  TempDir tmp("kfold");
  const std::string dataset = write_blobs_csv(tmp.path, 60, 6.0, 5);
  RunConfig cfg = base_config(dataset, tmp.path / "run");
  run_evolve(cfg);

  RunConfig eval;
  eval.set("dataset", dataset);
  eval.set("circuit", (tmp.path / "run" / "best.circuit").string());
  eval.set("seed", "9");
  eval.set("kfold", "3");
  const Report r = run_evaluate(eval);
  CHECK(r.has_metric("fold_0"));
  CHECK(r.has_metric("fold_1"));
  CHECK(r.has_metric("fold_2"));
  CHECK(!r.has_metric("fold_3"));
  const double mean = (r.metric("fold_0") + r.metric("fold_1") + r.metric("fold_2")) / 3.0;
  CHECK(r.metric("mean_accuracy") == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("rbf baseline solves the separable fixture") {
  TempDir tmp("rbf");
  const std::string dataset = write_blobs_csv(tmp.path, 60, 8.0, 6);
  RunConfig cfg;
  cfg.set("dataset", dataset);
  cfg.set("which", "rbf");
  cfg.set("seed", "3");
  cfg.set("cap-train", "40");
  cfg.set("cap-test", "20");
  const Report r = run_baseline(cfg);
  CHECK(r.metric("accuracy") == doctest::Approx(1.0));
}

TEST_CASE("quantum baselines are deterministic and named strictly") {
  TempDir tmp("zb");
  const std::string dataset = write_blobs_csv(tmp.path, 40, 6.0, 7);
  RunConfig cfg;
  cfg.set("dataset", dataset);
  cfg.set("which", "z-fqk");
  cfg.set("seed", "3");
  cfg.set("cap-train", "24");
  cfg.set("cap-test", "16");
  const Report a = run_baseline(cfg);
  const Report b = run_baseline(cfg);
  CHECK(a.metric("accuracy") == b.metric("accuracy"));

  cfg.set("which", "zz-pqk");
  CHECK_NOTHROW(run_baseline(cfg));
  cfg.set("which", "zz");
  CHECK_THROWS_AS(run_baseline(cfg), ConfigError);
}

TEST_CASE("pca command reports the component count and writes the report") {
  TempDir tmp("pca");
  RunConfig cfg;
  cfg.set("dataset", std::string(EVOQK_SOURCE_DIR) + "/data/wine.csv");
  cfg.set("out", (tmp.path / "out").string());
  const Report r = run_pca(cfg);
  CHECK(r.text == "components=10\n");
  CHECK(r.metric("components") == 10);
  const std::string csv = read_text_file(tmp.path / "out" / "pca_report.csv");
  CHECK(csv.rfind("component,eigenvalue,ratio,cumulative_ratio\n", 0) == 0);

  cfg.set("variance", "1.0");
  CHECK(run_pca(cfg).metric("components") == 13);  // full rank when standardized
}

TEST_CASE("adaptive search keys reach the evolution loop") {
  TempDir tmp("adaptive");
  const std::string dataset = write_blobs_csv(tmp.path, 40, 0.3, 10);  // hard: stalls
  RunConfig cfg = base_config(dataset, tmp.path / "run");
  cfg.set("ngenerations", "5");
  cfg.set("depth", "2");
  cfg.set("adaptive", "on");
  cfg.set("stall-window", "2");
  cfg.set("stall-eps", "1.1");  // larger than any possible gain: always stalls
  cfg.set("depth-increment", "3");
  const Report r = run_evolve(cfg);
  // Depth grew, so late snapshots are deeper than the configured start.
  const CircuitGenome last = load_circuit((tmp.path / "run" / "snapshots" /
                                           "gen_0004.circuit").string());
  CHECK(last.depth > 2);
  CHECK(r.metric("generations") == 5);
}

TEST_CASE("config errors carry the right category") {
  RunConfig cfg;
  CHECK_THROWS_AS(run_evolve(cfg), ConfigError);  // no dataset
  cfg.set("dataset", "/nonexistent/file.csv");
  CHECK_THROWS_AS(run_evolve(cfg), DataError);
  TempDir tmp("err");
  cfg.set("dataset", write_blobs_csv(tmp.path, 30, 4.0, 8));
  cfg.set("kernel", "rbf");
  CHECK_THROWS_AS(run_evolve(cfg), ConfigError);
  cfg.set("kernel", "fqk");
  cfg.set("kfold", "3");
  CHECK_THROWS_AS(run_evolve(cfg), ConfigError);
}

TEST_CASE("C API round trip: config, run, report, errors") {
  TempDir tmp("capi");
  const std::string dataset = write_blobs_csv(tmp.path, 40, 6.0, 9);

  evoqk_config* cfg = nullptr;
  REQUIRE(evoqk_config_create(&cfg) == EVOQK_OK);
  CHECK(evoqk_config_set(cfg, "dataset", dataset.c_str()) == EVOQK_OK);
  CHECK(evoqk_config_set(cfg, "variance", "0.99") == EVOQK_OK);
  CHECK(evoqk_config_get(cfg, "variance") == std::string("0.99"));
  CHECK(evoqk_config_get(cfg, "missing") == nullptr);

  evoqk_report* report = nullptr;
  REQUIRE(evoqk_run_pca(cfg, &report) == EVOQK_OK);
  double components = 0.0;
  CHECK(evoqk_report_metric(report, "components", &components) == EVOQK_OK);
  CHECK(components >= 1.0);
  CHECK(std::string(evoqk_report_text(report)).rfind("components=", 0) == 0);
  CHECK(evoqk_report_metric(report, "nope", &components) == EVOQK_ERR_CONFIG);
  evoqk_report_destroy(report);

  // Error paths surface messages and the right codes.
  evoqk_config* bad = nullptr;
  REQUIRE(evoqk_config_create(&bad) == EVOQK_OK);
  evoqk_report* none = nullptr;
  CHECK(evoqk_run_evolve(bad, &none) == EVOQK_ERR_CONFIG);
  CHECK(none == nullptr);
  CHECK(std::string(evoqk_last_error()).find("dataset") != std::string::npos);
  evoqk_config_set(bad, "dataset", "/nonexistent.csv");
  CHECK(evoqk_run_evolve(bad, &none) == EVOQK_ERR_DATA);
  evoqk_config_destroy(bad);
  evoqk_config_destroy(cfg);

  CHECK(std::string(evoqk_version()).find('.') != std::string::npos);
}

TEST_CASE("C API config file loading lets later flags win") {
  TempDir tmp("capi_cfg");
  const fs::path file = tmp.path / "run.conf";
  std::ofstream(file) << "depth = 9\nseed = 4\n";
  evoqk_config* cfg = nullptr;
  REQUIRE(evoqk_config_create(&cfg) == EVOQK_OK);
  REQUIRE(evoqk_config_load_file(cfg, file.string().c_str()) == EVOQK_OK);
  CHECK(evoqk_config_get(cfg, "depth") == std::string("9"));
  CHECK(evoqk_config_set(cfg, "depth", "11") == EVOQK_OK);
  CHECK(evoqk_config_get(cfg, "depth") == std::string("11"));
  CHECK(evoqk_config_get(cfg, "seed") == std::string("4"));
  CHECK(evoqk_config_load_file(cfg, "/nonexistent.conf") == EVOQK_ERR_DATA);
  evoqk_config_destroy(cfg);
}

TEST_CASE("C API inspects circuit files") {
  TempDir tmp("inspect");
  const fs::path file = tmp.path / "c.circuit";
  save_circuit(z_feature_map(3, 1), file.string());
  int n = 0, d = 0;
  CHECK(evoqk_circuit_inspect(file.string().c_str(), &n, &d) == EVOQK_OK);
  CHECK(n == 3);
  CHECK(d == 2);
  std::ofstream(file) << "garbage\n";
  CHECK(evoqk_circuit_inspect(file.string().c_str(), &n, &d) == EVOQK_ERR_DATA);
}
