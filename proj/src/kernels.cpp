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

#include "evoqk/kernels.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "evoqk/errors.hpp"
#include "evoqk/io.hpp"

namespace evoqk {

const char* kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::Fqk: return "fqk";
    case KernelKind::Pqk: return "pqk";
    case KernelKind::Rbf: return "rbf";
  }
  return "?";
}

KernelKind parse_kernel_kind(const std::string& name) {
  if (name == "fqk") return KernelKind::Fqk;
  if (name == "pqk") return KernelKind::Pqk;
  if (name == "rbf") return KernelKind::Rbf;
  throw ConfigError("unknown kernel kind '" + name + "' (expected fqk, pqk or rbf)");
}

KernelSpec KernelSpec::fqk(CircuitGenome genome) {
  KernelSpec s;
  s.kind = KernelKind::Fqk;
  s.genome = std::move(genome);
  return s;
}

KernelSpec KernelSpec::pqk(CircuitGenome genome, double gamma) {
  KernelSpec s;
  s.kind = KernelKind::Pqk;
  s.genome = std::move(genome);
  s.gamma = gamma;
  return s;
}

KernelSpec KernelSpec::rbf(double gamma) {
  KernelSpec s;
  s.kind = KernelKind::Rbf;
  s.gamma = gamma;
  return s;
}

void KernelSpec::check() const {
  const bool quantum = kind == KernelKind::Fqk || kind == KernelKind::Pqk;
  if (quantum && !genome)
    throw ConfigError("quantum kernel spec is missing its circuit");
  if (!quantum && genome)
    throw ConfigError("rbf kernel spec must not carry a circuit");
  if (kind != KernelKind::Fqk && gamma <= 0.0)
    throw ConfigError("kernel gamma must be positive");
  if (quantum) {
    if (auto v = validate(*genome))
      throw ConfigError("kernel circuit is invalid: " + v->message);
  }
}

double fqk(const CircuitGenome& genome, std::span<const double> x_i,
           std::span<const double> x_j) {
  return fidelity(encode_state(genome, x_i), encode_state(genome, x_j));
}

namespace {

std::vector<Mat2> all_rdms(const CircuitGenome& genome, std::span<const double> x) {
  const Statevector s = encode_state(genome, x);
  std::vector<Mat2> rho(genome.n_qubits);
  for (int k = 0; k < genome.n_qubits; ++k) rho[k] = rdm_1q(s, k);
  return rho;
}

double pqk_from_rdms(const std::vector<Mat2>& a, const std::vector<Mat2>& b, double gamma) {
  double dist = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) dist += frobenius_distance_sq(a[k], b[k]);
  return std::exp(-gamma * dist);
}

}  // namespace

double pqk(const CircuitGenome& genome, std::span<const double> x_i,
           std::span<const double> x_j, double gamma) {
  if (gamma <= 0.0) throw ConfigError("pqk: gamma must be positive");
  return pqk_from_rdms(all_rdms(genome, x_i), all_rdms(genome, x_j), gamma);
}

double rbf(std::span<const double> x_i, std::span<const double> x_j, double gamma) {
  if (x_i.size() != x_j.size()) throw InternalError("rbf: vector lengths differ");
  if (gamma <= 0.0) throw ConfigError("rbf: gamma must be positive");
  double d2 = 0.0;
  for (std::size_t k = 0; k < x_i.size(); ++k) {
    const double d = x_i[k] - x_j[k];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

namespace {

std::span<const double> row_span(const Matrix& x, int r) {
  return {x.row_ptr(r), static_cast<std::size_t>(x.cols())};
}

void check_quantum_width(const KernelSpec& spec, const Matrix& x) {
  if (spec.genome && x.cols() != spec.genome->n_qubits)
    throw InternalError("kernel: feature count does not match circuit qubit count");
}

// Per-sample encodings so an m x m Gram costs m simulations, not m^2.
struct Encodings {
  std::vector<Statevector> states;  // FQK
  std::vector<std::vector<Mat2>> rdms;  // PQK
};

Encodings encode_rows(const KernelSpec& spec, const Matrix& x) {
  Encodings e;
  const int m = x.rows();
  if (spec.kind == KernelKind::Fqk) {
    e.states.reserve(m);
    for (int i = 0; i < m; ++i) e.states.push_back(encode_state(*spec.genome, row_span(x, i)));
  } else if (spec.kind == KernelKind::Pqk) {
    e.rdms.reserve(m);
    for (int i = 0; i < m; ++i) e.rdms.push_back(all_rdms(*spec.genome, row_span(x, i)));
  }
  return e;
}

double entry(const KernelSpec& spec, const Encodings& a, const Matrix& xa, int i,
             const Encodings& b, const Matrix& xb, int j) {
  switch (spec.kind) {
    case KernelKind::Fqk: return fidelity(a.states[i], b.states[j]);
    case KernelKind::Pqk: return pqk_from_rdms(a.rdms[i], b.rdms[j], spec.gamma);
    case KernelKind::Rbf: return rbf(row_span(xa, i), row_span(xb, j), spec.gamma);
  }
  throw InternalError("kernel: unknown kind");
}

}  // namespace

GramMatrix gram(const KernelSpec& spec, const Matrix& x) {
  spec.check();
  check_quantum_width(spec, x);
  const int m = x.rows();
  GramMatrix g{Matrix(m, m), spec};
  const Encodings enc = encode_rows(spec, x);
  for (int i = 0; i < m; ++i) {
    g.entries(i, i) = 1.0;
    for (int j = i + 1; j < m; ++j) {
      const double v = entry(spec, enc, x, i, enc, x, j);
      g.entries(i, j) = v;
      g.entries(j, i) = v;
    }
  }
  return g;
}

Matrix gram_cross(const KernelSpec& spec, const Matrix& x_train, const Matrix& x_test) {
  spec.check();
  check_quantum_width(spec, x_train);
  check_quantum_width(spec, x_test);
  if (x_train.cols() != x_test.cols())
    throw InternalError("gram_cross: train/test feature counts differ");
  const Encodings enc_tr = encode_rows(spec, x_train);
  const Encodings enc_te = encode_rows(spec, x_test);
  Matrix k(x_train.rows(), x_test.rows());
  for (int i = 0; i < x_train.rows(); ++i)
    for (int j = 0; j < x_test.rows(); ++j)
      k(i, j) = entry(spec, enc_tr, x_train, i, enc_te, x_test, j);
  return k;
}

CircuitGenome z_feature_map(int n_qubits, int reps) {
  if (n_qubits < 1 || reps < 1) throw ConfigError("z_feature_map: n and reps must be >= 1");
  CircuitGenome g = CircuitGenome::identity(n_qubits, 2 * reps);
  for (int r = 0; r < reps; ++r) {
    for (int q = 0; q < n_qubits; ++q) {
      g.at(2 * r, q) = {GateKind::H, -1};
      g.at(2 * r + 1, q) = {GateKind::Rz, -1};
    }
  }
  return g;
}

CircuitGenome zz_feature_map(int n_qubits, int reps) {
  if (n_qubits < 1 || reps < 1) throw ConfigError("zz_feature_map: n and reps must be >= 1");
  if (n_qubits == 1) return z_feature_map(1, reps);  // no pairs to entangle
  const int pairs = n_qubits - 1;
  const int per_rep = 2 + 3 * pairs;
  CircuitGenome g = CircuitGenome::identity(n_qubits, per_rep * reps);
  for (int r = 0; r < reps; ++r) {
    int t = per_rep * r;
    for (int q = 0; q < n_qubits; ++q) g.at(t, q) = {GateKind::H, -1};
    ++t;
    for (int q = 0; q < n_qubits; ++q) g.at(t, q) = {GateKind::Rz, -1};
    ++t;
    for (int q = 0; q + 1 < n_qubits; ++q) {
      g.at(t, q) = {GateKind::Cxc, q + 1};
      g.at(t, q + 1) = {GateKind::Cxt, q};
      g.at(t + 1, q + 1) = {GateKind::Rz, -1};
      g.at(t + 2, q) = {GateKind::Cxc, q + 1};
      g.at(t + 2, q + 1) = {GateKind::Cxt, q};
      t += 3;
    }
  }
  return g;
}

double rbf_gamma_scale(const Matrix& x) {
  const std::size_t n = x.data().size();
  if (n == 0 || x.cols() == 0) throw InternalError("rbf_gamma_scale: empty matrix");
  double mean = 0.0;
  for (double v : x.data()) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : x.data()) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  if (var <= 0.0) return 1.0;
  return 1.0 / (x.cols() * var);
}

void assert_psd_guard(const GramMatrix& gram) {
  if (!is_positive_semidefinite(gram.entries, 1e-8))
    throw InternalError("gram matrix has an eigenvalue below -1e-8; kernel construction is broken");
}

std::string gram_to_csv(const GramMatrix& gram) {
  std::ostringstream out;
  for (int i = 0; i < gram.entries.rows(); ++i) {
    for (int j = 0; j < gram.entries.cols(); ++j) {
      if (j) out << ',';
      out << format_double17(gram.entries(i, j));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace evoqk
