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

#include <optional>
#include <span>
#include <string>

#include "evoqk/circuit.hpp"
#include "evoqk/linalg.hpp"
#include "evoqk/sim.hpp"

namespace evoqk {

enum class KernelKind { Fqk, Pqk, Rbf };

const char* kernel_kind_name(KernelKind kind);
KernelKind parse_kernel_kind(const std::string& name);  // ConfigError on unknown

// FQK: squared state overlap of the two encoded points.
// PQK: Gaussian over summed Frobenius distances between per-qubit 1-RDMs.
// RBF: classical Gaussian kernel on the raw feature vectors.
struct KernelSpec {
  KernelKind kind = KernelKind::Rbf;
  std::optional<CircuitGenome> genome;  // present iff kind is quantum
  double gamma = 1.0;                   // PQK and RBF

  static KernelSpec fqk(CircuitGenome genome);
  static KernelSpec pqk(CircuitGenome genome, double gamma);
  static KernelSpec rbf(double gamma);

  void check() const;  // throws ConfigError on a malformed spec
};

struct GramMatrix {
  Matrix entries;
  KernelSpec spec;

  int size() const { return entries.rows(); }
};

double fqk(const CircuitGenome& genome, std::span<const double> x_i,
           std::span<const double> x_j);
double pqk(const CircuitGenome& genome, std::span<const double> x_i,
           std::span<const double> x_j, double gamma);
double rbf(std::span<const double> x_i, std::span<const double> x_j, double gamma);

// Kernel matrix over the rows of x. Only the upper triangle is evaluated;
// the diagonal is pinned to exactly 1.0 (all three kinds are analytically 1
// there). Rows must already be angle-scaled for the quantum kinds.
GramMatrix gram(const KernelSpec& spec, const Matrix& x);

// Rectangular kernel block: rows index x_train rows, columns x_test rows.
Matrix gram_cross(const KernelSpec& spec, const Matrix& x_train, const Matrix& x_test);

// Fixed baseline feature maps. The Z map is reps repetitions of an H column
// followed by an RZ column. The ZZ-style map appends, per repetition, a
// CX-RZ-CX block over each adjacent pair (q, q+1) with the entangling RZ on
// qubit q+1; since every rotation binds its own qubit's feature directly,
// this deviates from the canonical pairwise-product angles.
CircuitGenome z_feature_map(int n_qubits, int reps);
CircuitGenome zz_feature_map(int n_qubits, int reps);

// 1 / (n_features * var(x)) with variance over all entries; 1.0 when the
// data is constant.
double rbf_gamma_scale(const Matrix& x);

// Numerical guard run before SVM training: eigenvalues down to -1e-8 are
// tolerated as roundoff; anything more negative indicates a bug upstream
// and raises InternalError.
void assert_psd_guard(const GramMatrix& gram);

// Full matrix, row-major, comma separated, 17 significant digits.
std::string gram_to_csv(const GramMatrix& gram);

}  // namespace evoqk
