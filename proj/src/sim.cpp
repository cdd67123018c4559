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

#include "evoqk/sim.hpp"

#include <cmath>

#include "evoqk/errors.hpp"

namespace evoqk {

Statevector Statevector::zero_state(int n_qubits) {
  if (n_qubits < 1) throw InternalError("zero_state: n_qubits must be positive");
  Statevector s;
  s.n_qubits = n_qubits;
  s.amplitudes.assign(std::size_t(1) << n_qubits, cplx(0.0, 0.0));
  s.amplitudes[0] = cplx(1.0, 0.0);
  return s;
}

double Statevector::norm() const {
  double s = 0.0;
  for (const cplx& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

Mat2 rx_matrix(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Mat2 u;
  u(0, 0) = c;
  u(0, 1) = cplx(0.0, -s);
  u(1, 0) = cplx(0.0, -s);
  u(1, 1) = c;
  return u;
}

Mat2 ry_matrix(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Mat2 u;
  u(0, 0) = c;
  u(0, 1) = -s;
  u(1, 0) = s;
  u(1, 1) = c;
  return u;
}

Mat2 rz_matrix(double theta) {
  Mat2 u;
  u(0, 0) = std::exp(cplx(0.0, -theta / 2.0));
  u(1, 1) = std::exp(cplx(0.0, theta / 2.0));
  return u;
}

Mat2 h_matrix() {
  const double s = 1.0 / std::sqrt(2.0);
  Mat2 u;
  u(0, 0) = s;
  u(0, 1) = s;
  u(1, 0) = s;
  u(1, 1) = -s;
  return u;
}

std::array<cplx, 16> cx_matrix4() {
  // Basis order |control target>: 00, 01, 10, 11.
  std::array<cplx, 16> u{};
  u[0 * 4 + 0] = 1.0;
  u[1 * 4 + 1] = 1.0;
  u[2 * 4 + 3] = 1.0;
  u[3 * 4 + 2] = 1.0;
  return u;
}

void apply_single_qubit(Statevector& state, int qubit, const Mat2& u) {
  const std::size_t mask = std::size_t(1) << qubit;
  const std::size_t dim = state.amplitudes.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const cplx a0 = state.amplitudes[i];
    const cplx a1 = state.amplitudes[i | mask];
    state.amplitudes[i] = u(0, 0) * a0 + u(0, 1) * a1;
    state.amplitudes[i | mask] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void apply_cx(Statevector& state, int control, int target) {
  const std::size_t cmask = std::size_t(1) << control;
  const std::size_t tmask = std::size_t(1) << target;
  const std::size_t dim = state.amplitudes.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(state.amplitudes[i], state.amplitudes[i | tmask]);
  }
}

Statevector encode_state(const CircuitGenome& genome, std::span<const double> angles) {
  if (static_cast<int>(angles.size()) != genome.n_qubits)
    throw InternalError("encode_state: angle vector length must equal n_qubits");

  Statevector state = Statevector::zero_state(genome.n_qubits);
  for (int t = 0; t < genome.depth; ++t) {
    for (int q = 0; q < genome.n_qubits; ++q) {
      const GateToken& tok = genome.at(t, q);
      switch (tok.kind) {
        case GateKind::Id:
        case GateKind::Cxt:
          break;
        case GateKind::Rx: apply_single_qubit(state, q, rx_matrix(angles[q])); break;
        case GateKind::Ry: apply_single_qubit(state, q, ry_matrix(angles[q])); break;
        case GateKind::Rz: apply_single_qubit(state, q, rz_matrix(angles[q])); break;
        case GateKind::H: apply_single_qubit(state, q, h_matrix()); break;
        case GateKind::Cxc: apply_cx(state, q, tok.partner); break;
      }
    }
  }
  return state;
}

double fidelity(const Statevector& a, const Statevector& b) {
  if (a.n_qubits != b.n_qubits) throw InternalError("fidelity: qubit counts differ");
  cplx overlap(0.0, 0.0);
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
    overlap += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return std::norm(overlap);
}

DensityMatrix1Q rdm_1q(const Statevector& state, int k) {
  if (k < 0 || k >= state.n_qubits) throw InternalError("rdm_1q: qubit index out of range");
  const std::size_t mask = std::size_t(1) << k;
  const std::size_t dim = state.amplitudes.size();
  cplx r00(0.0, 0.0), r01(0.0, 0.0), r11(0.0, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const cplx a0 = state.amplitudes[i];
    const cplx a1 = state.amplitudes[i | mask];
    r00 += a0 * std::conj(a0);
    r01 += a0 * std::conj(a1);
    r11 += a1 * std::conj(a1);
  }
  Mat2 rho;
  rho(0, 0) = r00;
  rho(0, 1) = r01;
  rho(1, 0) = std::conj(r01);
  rho(1, 1) = r11;
  return rho;
}

double frobenius_distance_sq(const Mat2& a, const Mat2& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += std::norm(a.m[i] - b.m[i]);
  return s;
}

}  // namespace evoqk
