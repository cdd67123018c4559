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

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "evoqk/circuit.hpp"

namespace evoqk {

using cplx = std::complex<double>;

// Dense amplitude vector over n qubits. Qubit 0 is the least-significant
// bit of the amplitude index. Global phase is never compared anywhere: all
// downstream quantities (fidelities, density matrices) are phase-free.
struct Statevector {
  int n_qubits = 0;
  std::vector<cplx> amplitudes;

  static Statevector zero_state(int n_qubits);
  double norm() const;
};

// 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<cplx, 4> m{};

  cplx& operator()(int r, int c) { return m[static_cast<std::size_t>(r) * 2 + c]; }
  cplx operator()(int r, int c) const { return m[static_cast<std::size_t>(r) * 2 + c]; }
};

using DensityMatrix1Q = Mat2;

// Rotation convention: R_a(theta) = exp(-i*theta*sigma_a/2).
Mat2 rx_matrix(double theta);
Mat2 ry_matrix(double theta);
Mat2 rz_matrix(double theta);
Mat2 h_matrix();
// CX as a 4x4 on (control, target) ordered |control target>, row-major.
std::array<cplx, 16> cx_matrix4();

void apply_single_qubit(Statevector& state, int qubit, const Mat2& u);
void apply_cx(Statevector& state, int control, int target);

// Runs the genome on |0...0> with every rotation on qubit q bound to
// angles[q]; angles must already be scaled to the encoding range.
Statevector encode_state(const CircuitGenome& genome, std::span<const double> angles);

// |<a|b>|^2
double fidelity(const Statevector& a, const Statevector& b);

// One-qubit reduced density matrix: partial trace over every qubit but k.
DensityMatrix1Q rdm_1q(const Statevector& state, int k);

// Squared Frobenius distance between two 2x2 matrices.
double frobenius_distance_sq(const Mat2& a, const Mat2& b);

}  // namespace evoqk
