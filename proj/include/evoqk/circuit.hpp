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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evoqk {

// A CX is stored as a control half (Cxc) and a target half (Cxt) living in
// the same column, each pointing at the other through `partner`. Every
// other kind occupies exactly one cell, so columns have fixed arity and
// crossover can cut cleanly at column boundaries.
enum class GateKind : std::uint8_t { Id, Rx, Ry, Rz, H, Cxc, Cxt };

const char* gate_kind_name(GateKind kind);

struct GateToken {
  GateKind kind = GateKind::Id;
  int partner = -1;  // qubit index; only meaningful for Cxc/Cxt

  bool operator==(const GateToken&) const = default;
};

inline bool is_cx_half(GateKind k) { return k == GateKind::Cxc || k == GateKind::Cxt; }

// Depth-ordered grid of gate tokens: the unit of evolution and, bound to a
// data point, the feature-map circuit. Rotation cells carry no angle; the
// angle is taken from the data point at simulation time.
struct CircuitGenome {
  int n_qubits = 0;
  int depth = 0;
  std::vector<GateToken> cells;  // cells[column * n_qubits + qubit]

  static CircuitGenome identity(int n_qubits, int depth);

  GateToken& at(int column, int qubit) {
    return cells[static_cast<std::size_t>(column) * n_qubits + qubit];
  }
  const GateToken& at(int column, int qubit) const {
    return cells[static_cast<std::size_t>(column) * n_qubits + qubit];
  }

  bool operator==(const CircuitGenome&) const = default;
};

// Gate families the search may draw from. Cx covers both token halves.
struct GatePool {
  bool rx = true;
  bool ry = true;
  bool rz = true;
  bool h = true;
  bool cx = true;

  bool allows(GateKind kind) const;
  bool empty() const { return !(rx || ry || rz || h || cx); }
};

struct Violation {
  int column = -1;
  int qubit = -1;
  std::string message;
};

// Structural check: grid shape, partner consistency of every CX pair, and
// membership of each cell in pool ∪ {Id}. Returns the first violating cell,
// or nullopt when the genome is well formed.
std::optional<Violation> validate(const CircuitGenome& genome,
                                  const GatePool& pool = GatePool{});

struct GateCounts {
  int rx = 0;
  int ry = 0;
  int rz = 0;
  int h = 0;
  int cx = 0;  // CX pairs, counted once
};

// Throws InternalError if the genome fails validation.
GateCounts gate_counts(const CircuitGenome& genome);

// Number of CX pairs (Cxc tokens). Does not validate.
int cx_count(const CircuitGenome& genome);

// Line-based circuit file format, byte-deterministic:
//
//   qsvm-circuit v1
//   qubits <n>
//   depth <d>
//   gate <column> <qubit> <KIND>[ <partner>]
//
// KIND is one of RX, RY, RZ, H, CXC; a CXC line names the target qubit and
// implies the matching CXT cell. Id cells are omitted. Lines are sorted by
// (column, qubit) and the file ends with a newline.
std::string serialize(const CircuitGenome& genome);

// Throws DataError with a line number on malformed input.
CircuitGenome deserialize(std::string_view text);

void save_circuit(const CircuitGenome& genome, const std::string& path);
CircuitGenome load_circuit(const std::string& path);

}  // namespace evoqk
