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

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evoqk/circuit.hpp"
#include "evoqk/datapipe.hpp"
#include "evoqk/kernels.hpp"
#include "evoqk/rng.hpp"
#include "evoqk/svm.hpp"

namespace evoqk {

// Depth escalation applied when the best fitness has improved by less than
// stall_eps across the last `window` generations.
struct AdaptivePolicy {
  double stall_eps = 0.005;
  int window = 5;
  int depth_increment = 5;
};

// The hyperparameter tuple configuring circuit expressibility (n_qubits,
// rotation allocations, depth) and search behaviour (population size,
// generations, mutation rate, threshold). n_cx is the required minimum
// number of CX pairs per circuit, enforced by the normalizer.
struct Metadata {
  double tau = 1.0;     // stop once best fitness reaches this
  int n_qubits = 1;
  int n_rx = 0;
  int n_ry = 0;
  int n_rz = 0;
  int depth = 1;
  int n_circuits = 16;  // must be >= 4 and divisible by 4
  int n_generations = 20;
  double p_m = 0.1;
  int n_cx = 0;
  double h_fill = 0.25;  // chance an unallocated cell becomes H at generation
  std::optional<AdaptivePolicy> adaptive;

  void check() const;  // throws ConfigError on any violated invariant
};

// Train/test views of a dataset after PCA reduction and angle scaling;
// feature count must equal the genomes' qubit count.
struct PreparedSplit {
  Matrix x_train;
  Matrix x_test;
  std::vector<int> y_train;
  std::vector<int> y_test;
};

struct FitnessConfig {
  KernelKind kind = KernelKind::Fqk;
  double gamma = 1.0;  // PQK only
  SvmConfig svm;       // svm.max_iter is the per-evaluation budget
};

// Test accuracy of a kernel SVM built from the genome. Non-convergence of
// the SVM within its budget is not an error; truncated models still score.
double fitness(const CircuitGenome& genome, const PreparedSplit& split,
               const FitnessConfig& config);

// Draw order (one shared stream, fully documented so runs replay exactly):
//   generation : per genome, CX pairs first (column, control cell, target
//                cell), then RX/RY/RZ placements (uniform free cell each),
//                then the H fill per remaining cell in row-major order
//   selection  : no draws
//   crossover  : one cut column per pair, then each child's normalizer draws
//   mutation   : per cell in row-major order; a mutated cell draws its new
//                kind (and a target qubit when it becomes a CX control),
//                then the normalizer draws
//   normalizer : per inserted CX pair, a column and two cells in it
std::vector<CircuitGenome> generate_population(const Metadata& meta, RngStream& rng);

// Top n_keep population indices by fitness (ties to the lower index),
// alternated by rank parity into (fathers, mothers).
std::pair<std::vector<int>, std::vector<int>> select_elitist(
    const std::vector<double>& fitnesses, int n_keep);

// Repairs a genome to the metadata contract: depth exactly meta.depth
// (truncate or pad with Id columns) and at least meta.n_cx CX pairs. A new
// pair goes into a uniformly chosen column with two free Id cells; if no
// column has two, the two lowest-index non-CX cells of a random eligible
// column are overwritten. Idempotent (and draw-free) on conforming genomes.
CircuitGenome normalize(CircuitGenome genome, const Metadata& meta, RngStream& rng);

// One-point column crossover; the cut is uniform in [1, min(depth)-1].
// Depth < 2 degenerates to copying the parents. Children are normalized.
std::pair<CircuitGenome, CircuitGenome> crossover_one_point(const CircuitGenome& father,
                                                            const CircuitGenome& mother,
                                                            const Metadata& meta,
                                                            RngStream& rng);

// Independent per-cell bit-flip: with probability p_m a cell is replaced by
// a uniformly random different kind from pool ∪ {Id}. Moving into or out of
// a CX repairs the partner cell. The result is normalized.
CircuitGenome mutate_bitflip(CircuitGenome genome, double p_m, const GatePool& pool,
                             const Metadata& meta, RngStream& rng);

struct GenerationStat {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  CircuitGenome best;
  std::uint64_t seed = 0;
  double elapsed_ms = 0.0;
};

struct EvolutionLog {
  std::vector<GenerationStat> rows;
};

struct EvolveResult {
  CircuitGenome best;
  double best_fitness = 0.0;
  int generations = 0;  // number of evaluated generations
  EvolutionLog log;
  Metadata final_meta;
};

// Observation hook for tests and progress reporting; called after each
// generation's evaluation with the population and its fitness values.
using EvolveObserver =
    std::function<void(int generation, const std::vector<CircuitGenome>& population,
                       const std::vector<double>& fitnesses)>;

// The full loop: evaluate, stop early once best fitness >= tau, otherwise
// keep the elitist half as parents and refill with mutated crossover
// offspring. With an adaptive policy, stalled runs grow the target depth
// and the whole population is re-normalized. Deterministic for a fixed
// (seed, metadata, split, kernel) regardless of evaluation concurrency.
// live_log, when given, receives each generation row as it completes, so
// callers can flush the log even if a later generation throws.
EvolveResult evolve(const Metadata& meta, const PreparedSplit& split,
                    const FitnessConfig& config, RngStream& rng,
                    const EvolveObserver& observer = nullptr,
                    EvolutionLog* live_log = nullptr);

// Returns meta with depth increased by the policy increment when the log's
// best fitness is stalled; unchanged otherwise.
Metadata escalate(const Metadata& meta, const EvolutionLog& log);

// generation,best_fitness,mean_fitness,best_circuit_file,seed,elapsed_ms
std::string evolution_log_csv(const EvolutionLog& log);

// Path of the per-generation snapshot inside an output directory.
std::string snapshot_filename(int generation);

}  // namespace evoqk
