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

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "evoqk/circuit.hpp"
#include "evoqk/datapipe.hpp"
#include "evoqk/ga.hpp"
#include "evoqk/rng.hpp"

namespace fixtures {

// Two well-separated Gaussian blobs; linearly separable for any sane kernel.
inline evoqk::Dataset blobs(int m, double separation, evoqk::RngStream& rng,
                            int majority_extra = 0) {
  evoqk::Dataset d;
  d.name = "blobs";
  const int total = m + majority_extra;
  d.x = evoqk::Matrix(total, 2);
  d.y.resize(total);
  auto gauss = [&rng]() {
    // Box-Muller on the deterministic stream.
    const double u1 = std::max(rng.next_unit(), 1e-12);
    const double u2 = rng.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };
  for (int i = 0; i < total; ++i) {
    const int cls = i < m ? i % 2 : 0;  // extras go to class 0
    const double cx = cls == 0 ? 0.0 : separation;
    d.x(i, 0) = cx + 0.5 * gauss();
    d.x(i, 1) = cx + 0.5 * gauss();
    d.y[i] = cls;
  }
  return d;
}

// Random valid genome built cell by cell; independent of the library's
// population generator.
inline evoqk::CircuitGenome random_genome(int n_qubits, int depth, evoqk::RngStream& rng,
                                          bool with_cx = true) {
  evoqk::CircuitGenome g = evoqk::CircuitGenome::identity(n_qubits, depth);
  for (int t = 0; t < depth; ++t) {
    for (int q = 0; q < n_qubits; ++q) {
      if (g.at(t, q).kind != evoqk::GateKind::Id) continue;
      const int pick = rng.next_int(with_cx && n_qubits >= 2 ? 6 : 5);
      switch (pick) {
        case 0: break;  // stays Id
        case 1: g.at(t, q) = {evoqk::GateKind::Rx, -1}; break;
        case 2: g.at(t, q) = {evoqk::GateKind::Ry, -1}; break;
        case 3: g.at(t, q) = {evoqk::GateKind::Rz, -1}; break;
        case 4: g.at(t, q) = {evoqk::GateKind::H, -1}; break;
        case 5: {
          std::vector<int> free;
          for (int p = q + 1; p < n_qubits; ++p)
            if (g.at(t, p).kind == evoqk::GateKind::Id) free.push_back(p);
          if (free.empty()) break;
          const int p = free[rng.next_int(static_cast<int>(free.size()))];
          g.at(t, q) = {evoqk::GateKind::Cxc, p};
          g.at(t, p) = {evoqk::GateKind::Cxt, q};
          break;
        }
      }
    }
  }
  return g;
}

inline std::vector<double> random_angles(int n, evoqk::RngStream& rng) {
  std::vector<double> x(n);
  for (double& v : x) v = rng.next_unit() * std::numbers::pi;
  return x;
}

// PSD kernel with unit diagonal: Gram matrix of random unit vectors.
inline evoqk::Matrix random_unit_psd(int m, int latent_dim, evoqk::RngStream& rng) {
  evoqk::Matrix v(m, latent_dim);
  for (int i = 0; i < m; ++i) {
    double norm2 = 0.0;
    for (int j = 0; j < latent_dim; ++j) {
      v(i, j) = rng.next_unit() * 2.0 - 1.0;
      norm2 += v(i, j) * v(i, j);
    }
    const double inv = 1.0 / std::sqrt(std::max(norm2, 1e-12));
    for (int j = 0; j < latent_dim; ++j) v(i, j) *= inv;
  }
  evoqk::Matrix k(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int d = 0; d < latent_dim; ++d) s += v(i, d) * v(j, d);
      k(i, j) = s;
    }
  for (int i = 0; i < m; ++i) k(i, i) = 1.0;
  return k;
}

// A labelled binary problem over a PSD kernel: labels from a random cut.
inline std::vector<std::int8_t> random_pm_labels(int m, evoqk::RngStream& rng) {
  std::vector<std::int8_t> y(m);
  while (true) {
    bool pos = false, neg = false;
    for (int i = 0; i < m; ++i) {
      y[i] = rng.next_bernoulli(0.5) ? 1 : -1;
      (y[i] == 1 ? pos : neg) = true;
    }
    if (pos && neg) return y;
  }
}

}  // namespace fixtures
