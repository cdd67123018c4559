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

#include "evoqk/ga.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <future>
#include <numeric>
#include <sstream>
#include <thread>

#include "evoqk/errors.hpp"
#include "evoqk/io.hpp"

namespace evoqk {

void Metadata::check() const {
  if (n_qubits < 1) throw ConfigError("metadata: n_qubits must be >= 1");
  if (n_qubits > 20)
    throw ConfigError("metadata: " + std::to_string(n_qubits) +
                      " qubits is beyond the dense-simulation budget (20)");
  if (depth < 1) throw ConfigError("metadata: depth must be >= 1");
  if (tau < 0.0 || tau > 1.0) throw ConfigError("metadata: tau must lie in [0, 1]");
  if (p_m < 0.0 || p_m > 1.0) throw ConfigError("metadata: p_m must lie in [0, 1]");
  if (h_fill < 0.0 || h_fill > 1.0) throw ConfigError("metadata: h_fill must lie in [0, 1]");
  if (n_circuits < 4 || n_circuits % 4 != 0)
    throw ConfigError("metadata: n_circuits must be >= 4 and divisible by 4");
  if (n_generations < 1) throw ConfigError("metadata: n_generations must be >= 1");
  if (n_rx < 0 || n_ry < 0 || n_rz < 0 || n_cx < 0)
    throw ConfigError("metadata: gate allocations must be non-negative");
  const long cells = static_cast<long>(n_qubits) * depth;
  if (static_cast<long>(n_rx) + n_ry + n_rz + 2L * n_cx > cells)
    throw ConfigError("metadata: gate allocations exceed the " + std::to_string(cells) +
                      "-cell grid");
  if (static_cast<long>(n_cx) > static_cast<long>(depth) * (n_qubits / 2))
    throw ConfigError("metadata: n_cx exceeds the per-column CX capacity of the grid");
  if (n_cx > 0 && n_qubits < 2)
    throw ConfigError("metadata: CX pairs need at least 2 qubits");
  if (adaptive) {
    if (adaptive->window < 1) throw ConfigError("metadata: adaptive window must be >= 1");
    if (adaptive->depth_increment < 1)
      throw ConfigError("metadata: adaptive depth increment must be >= 1");
    if (adaptive->stall_eps < 0.0)
      throw ConfigError("metadata: adaptive stall_eps must be >= 0");
  }
}

namespace {

void place_cx_pair(CircuitGenome& genome, RngStream& rng) {
  // Columns with at least two Id cells; always non-empty while the count
  // is below the per-column capacity bound checked by Metadata.
  std::vector<int> eligible;
  for (int t = 0; t < genome.depth; ++t) {
    int ids = 0;
    for (int q = 0; q < genome.n_qubits; ++q)
      if (genome.at(t, q).kind == GateKind::Id) ++ids;
    if (ids >= 2) eligible.push_back(t);
  }
  if (!eligible.empty()) {
    const int t = eligible[rng.next_int(static_cast<int>(eligible.size()))];
    std::vector<int> ids;
    for (int q = 0; q < genome.n_qubits; ++q)
      if (genome.at(t, q).kind == GateKind::Id) ids.push_back(q);
    const int a = ids[rng.next_int(static_cast<int>(ids.size()))];
    ids.erase(std::find(ids.begin(), ids.end(), a));
    const int b = ids[rng.next_int(static_cast<int>(ids.size()))];
    genome.at(t, a) = {GateKind::Cxc, b};
    genome.at(t, b) = {GateKind::Cxt, a};
    return;
  }
  // No column has two free cells: overwrite the two lowest-index non-CX
  // cells of a random column that still has two.
  std::vector<int> fallback;
  for (int t = 0; t < genome.depth; ++t) {
    int non_cx = 0;
    for (int q = 0; q < genome.n_qubits; ++q)
      if (!is_cx_half(genome.at(t, q).kind)) ++non_cx;
    if (non_cx >= 2) fallback.push_back(t);
  }
  if (fallback.empty())
    throw ConfigError("normalize: grid too small to hold the required CX pairs");
  const int t = fallback[rng.next_int(static_cast<int>(fallback.size()))];
  int a = -1, b = -1;
  for (int q = 0; q < genome.n_qubits && b < 0; ++q) {
    if (is_cx_half(genome.at(t, q).kind)) continue;
    (a < 0 ? a : b) = q;
  }
  genome.at(t, a) = {GateKind::Cxc, b};
  genome.at(t, b) = {GateKind::Cxt, a};
}

void detach_partner(CircuitGenome& genome, int column, const GateToken& token) {
  if (is_cx_half(token.kind)) genome.at(column, token.partner) = GateToken{};
}

}  // namespace

std::vector<CircuitGenome> generate_population(const Metadata& meta, RngStream& rng) {
  meta.check();
  std::vector<CircuitGenome> population;
  population.reserve(meta.n_circuits);

  for (int g = 0; g < meta.n_circuits; ++g) {
    CircuitGenome genome = CircuitGenome::identity(meta.n_qubits, meta.depth);
    for (int p = 0; p < meta.n_cx; ++p) place_cx_pair(genome, rng);

    const std::array<std::pair<GateKind, int>, 3> rotations = {
        std::pair{GateKind::Rx, meta.n_rx},
        std::pair{GateKind::Ry, meta.n_ry},
        std::pair{GateKind::Rz, meta.n_rz},
    };
    for (const auto& [kind, count] : rotations) {
      for (int placed = 0; placed < count; ++placed) {
        std::vector<int> free_cells;
        for (int idx = 0; idx < static_cast<int>(genome.cells.size()); ++idx)
          if (genome.cells[idx].kind == GateKind::Id) free_cells.push_back(idx);
        if (free_cells.empty())
          throw ConfigError("generate_population: rotation allocation exceeds free cells");
        genome.cells[free_cells[rng.next_int(static_cast<int>(free_cells.size()))]] = {kind, -1};
      }
    }

    for (GateToken& cell : genome.cells)
      if (cell.kind == GateKind::Id && rng.next_bernoulli(meta.h_fill))
        cell = {GateKind::H, -1};

    population.push_back(std::move(genome));
  }
  return population;
}

double fitness(const CircuitGenome& genome, const PreparedSplit& split,
               const FitnessConfig& config) {
  KernelSpec spec;
  switch (config.kind) {
    case KernelKind::Fqk: spec = KernelSpec::fqk(genome); break;
    case KernelKind::Pqk: spec = KernelSpec::pqk(genome, config.gamma); break;
    case KernelKind::Rbf: spec = KernelSpec::rbf(config.gamma); break;
  }
  const GramMatrix train_gram = gram(spec, split.x_train);
  assert_psd_guard(train_gram);
  const SvmModel model = train_one_vs_one(train_gram, split.y_train, config.svm);
  const Matrix cross = gram_cross(spec, split.x_train, split.x_test);
  return accuracy(split.y_test, predict(model, cross));
}

std::pair<std::vector<int>, std::vector<int>> select_elitist(
    const std::vector<double>& fitnesses, int n_keep) {
  if (n_keep < 0 || n_keep > static_cast<int>(fitnesses.size()))
    throw ConfigError("select_elitist: n_keep exceeds the population");
  std::vector<int> order(fitnesses.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&fitnesses](int a, int b) { return fitnesses[a] > fitnesses[b]; });
  std::pair<std::vector<int>, std::vector<int>> out;
  for (int rank = 0; rank < n_keep; ++rank)
    (rank % 2 == 0 ? out.first : out.second).push_back(order[rank]);
  return out;
}

CircuitGenome normalize(CircuitGenome genome, const Metadata& meta, RngStream& rng) {
  if (genome.n_qubits != meta.n_qubits)
    throw InternalError("normalize: genome qubit count does not match metadata");
  if (genome.depth > meta.depth) {
    genome.cells.resize(static_cast<std::size_t>(meta.depth) * meta.n_qubits);
    genome.depth = meta.depth;
  } else if (genome.depth < meta.depth) {
    genome.cells.resize(static_cast<std::size_t>(meta.depth) * meta.n_qubits, GateToken{});
    genome.depth = meta.depth;
  }
  while (cx_count(genome) < meta.n_cx) place_cx_pair(genome, rng);
  return genome;
}

std::pair<CircuitGenome, CircuitGenome> crossover_one_point(const CircuitGenome& father,
                                                            const CircuitGenome& mother,
                                                            const Metadata& meta,
                                                            RngStream& rng) {
  if (father.n_qubits != mother.n_qubits)
    throw InternalError("crossover: parents must have equal qubit counts");
  const int n = father.n_qubits;
  const int min_depth = std::min(father.depth, mother.depth);

  CircuitGenome child1, child2;
  if (min_depth < 2) {
    child1 = father;
    child2 = mother;
  } else {
    const int cut = 1 + rng.next_int(min_depth - 1);
    auto splice = [n](const CircuitGenome& head, const CircuitGenome& tail, int cut_col) {
      CircuitGenome child = CircuitGenome::identity(n, tail.depth);
      for (int t = 0; t < cut_col; ++t)
        for (int q = 0; q < n; ++q) child.at(t, q) = head.at(t, q);
      for (int t = cut_col; t < tail.depth; ++t)
        for (int q = 0; q < n; ++q) child.at(t, q) = tail.at(t, q);
      return child;
    };
    child1 = splice(father, mother, cut);
    child2 = splice(mother, father, cut);
  }
  child1 = normalize(std::move(child1), meta, rng);
  child2 = normalize(std::move(child2), meta, rng);
  return {std::move(child1), std::move(child2)};
}

CircuitGenome mutate_bitflip(CircuitGenome genome, double p_m, const GatePool& pool,
                             const Metadata& meta, RngStream& rng) {
  if (p_m < 0.0 || p_m > 1.0) throw ConfigError("mutate_bitflip: p_m must lie in [0, 1]");
  const int n = genome.n_qubits;

  for (int t = 0; t < genome.depth; ++t) {
    for (int q = 0; q < n; ++q) {
      if (!(rng.next_unit() < p_m)) continue;

      const GateKind current =
          is_cx_half(genome.at(t, q).kind) ? GateKind::Cxc : genome.at(t, q).kind;
      // Fixed candidate order so draws replay identically.
      std::vector<GateKind> candidates;
      if (pool.rx && current != GateKind::Rx) candidates.push_back(GateKind::Rx);
      if (pool.ry && current != GateKind::Ry) candidates.push_back(GateKind::Ry);
      if (pool.rz && current != GateKind::Rz) candidates.push_back(GateKind::Rz);
      if (pool.h && current != GateKind::H) candidates.push_back(GateKind::H);
      if (pool.cx && n >= 2 && current != GateKind::Cxc) candidates.push_back(GateKind::Cxc);
      if (current != GateKind::Id) candidates.push_back(GateKind::Id);
      if (candidates.empty()) continue;

      const GateKind next = candidates[rng.next_int(static_cast<int>(candidates.size()))];
      detach_partner(genome, t, genome.at(t, q));
      if (next == GateKind::Cxc) {
        int target = rng.next_int(n - 1);
        if (target >= q) ++target;
        detach_partner(genome, t, genome.at(t, target));
        genome.at(t, q) = {GateKind::Cxc, target};
        genome.at(t, target) = {GateKind::Cxt, q};
      } else {
        genome.at(t, q) = {next, -1};
      }
    }
  }
  return normalize(std::move(genome), meta, rng);
}

namespace {

std::vector<double> evaluate_population(const std::vector<CircuitGenome>& population,
                                        const PreparedSplit& split,
                                        const FitnessConfig& config) {
  // Evaluations are pure and independent; results are collected in
  // population order, so the outcome is schedule-independent.
  const unsigned workers =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(population.size()));
  std::vector<double> fitnesses(population.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < population.size(); ++i)
      fitnesses[i] = fitness(population[i], split, config);
    return fitnesses;
  }
  std::vector<std::future<void>> tasks;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&]() {
      for (std::size_t i = next.fetch_add(1); i < population.size(); i = next.fetch_add(1))
        fitnesses[i] = fitness(population[i], split, config);
    }));
  }
  for (auto& t : tasks) t.get();
  return fitnesses;
}

}  // namespace

EvolveResult evolve(const Metadata& meta, const PreparedSplit& split,
                    const FitnessConfig& config, RngStream& rng,
                    const EvolveObserver& observer, EvolutionLog* live_log) {
  Metadata current = meta;
  current.check();
  if (split.x_train.cols() != current.n_qubits)
    throw ConfigError("evolve: prepared feature count must equal n_qubits");

  EvolveResult result;
  result.best_fitness = -1.0;

  std::vector<CircuitGenome> population = generate_population(current, rng);

  for (int gen = 0; gen < current.n_generations; ++gen) {
    const auto gen_start = std::chrono::steady_clock::now();
    const std::vector<double> fitnesses = evaluate_population(population, split, config);
    if (observer) observer(gen, population, fitnesses);

    int best_idx = 0;
    double sum = 0.0;
    for (int i = 0; i < static_cast<int>(fitnesses.size()); ++i) {
      sum += fitnesses[i];
      if (fitnesses[i] > fitnesses[best_idx]) best_idx = i;
    }
    if (fitnesses[best_idx] > result.best_fitness) {
      result.best_fitness = fitnesses[best_idx];
      result.best = population[best_idx];
    }

    GenerationStat stat;
    stat.generation = gen;
    stat.best_fitness = fitnesses[best_idx];
    stat.mean_fitness = sum / static_cast<double>(fitnesses.size());
    stat.best = population[best_idx];
    stat.seed = rng.seed();
    stat.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - gen_start)
                          .count();
    if (live_log) live_log->rows.push_back(stat);
    result.log.rows.push_back(std::move(stat));
    result.generations = gen + 1;

    if (fitnesses[best_idx] >= current.tau) break;
    if (gen + 1 == current.n_generations) break;

    const auto [fathers, mothers] = select_elitist(fitnesses, current.n_circuits / 2);
    std::vector<CircuitGenome> next;
    next.reserve(current.n_circuits);
    for (std::size_t r = 0; r < fathers.size(); ++r) {
      next.push_back(population[fathers[r]]);
      next.push_back(population[mothers[r]]);
    }
    for (std::size_t r = 0; r < fathers.size(); ++r) {
      auto [c1, c2] =
          crossover_one_point(population[fathers[r]], population[mothers[r]], current, rng);
      next.push_back(mutate_bitflip(std::move(c1), current.p_m, GatePool{}, current, rng));
      next.push_back(mutate_bitflip(std::move(c2), current.p_m, GatePool{}, current, rng));
    }

    if (current.adaptive) {
      const Metadata escalated = escalate(current, result.log);
      if (escalated.depth != current.depth) {
        current = escalated;
        for (CircuitGenome& genome : next) genome = normalize(std::move(genome), current, rng);
      }
    }
    population = std::move(next);
  }

  result.final_meta = current;
  return result;
}

Metadata escalate(const Metadata& meta, const EvolutionLog& log) {
  if (!meta.adaptive) return meta;
  const AdaptivePolicy& policy = *meta.adaptive;
  const int rows = static_cast<int>(log.rows.size());
  if (rows < policy.window) return meta;
  const double newest = log.rows[rows - 1].best_fitness;
  const double oldest = log.rows[rows - policy.window].best_fitness;
  if (newest - oldest >= policy.stall_eps) return meta;
  Metadata out = meta;
  out.depth += policy.depth_increment;
  out.check();
  return out;
}

std::string evolution_log_csv(const EvolutionLog& log) {
  std::ostringstream out;
  out << "generation,best_fitness,mean_fitness,best_circuit_file,seed,elapsed_ms\n";
  for (const GenerationStat& row : log.rows) {
    out << row.generation << ',' << format_double(row.best_fitness) << ','
        << format_double(row.mean_fitness) << ',' << snapshot_filename(row.generation) << ','
        << row.seed << ',' << static_cast<long long>(row.elapsed_ms) << '\n';
  }
  return out.str();
}

std::string snapshot_filename(int generation) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "snapshots/gen_%04d.circuit", generation);
  return buf;
}

}  // namespace evoqk
