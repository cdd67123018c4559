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

#include "evoqk/circuit.hpp"

#include <charconv>
#include <sstream>

#include "evoqk/errors.hpp"
#include "evoqk/io.hpp"

namespace evoqk {

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::Id: return "ID";
    case GateKind::Rx: return "RX";
    case GateKind::Ry: return "RY";
    case GateKind::Rz: return "RZ";
    case GateKind::H: return "H";
    case GateKind::Cxc: return "CXC";
    case GateKind::Cxt: return "CXT";
  }
  return "?";
}

CircuitGenome CircuitGenome::identity(int n_qubits, int depth) {
  CircuitGenome g;
  g.n_qubits = n_qubits;
  g.depth = depth;
  g.cells.assign(static_cast<std::size_t>(n_qubits) * depth, GateToken{});
  return g;
}

bool GatePool::allows(GateKind kind) const {
  switch (kind) {
    case GateKind::Id: return true;
    case GateKind::Rx: return rx;
    case GateKind::Ry: return ry;
    case GateKind::Rz: return rz;
    case GateKind::H: return h;
    case GateKind::Cxc:
    case GateKind::Cxt: return cx;
  }
  return false;
}

std::optional<Violation> validate(const CircuitGenome& genome, const GatePool& pool) {
  if (genome.n_qubits < 1 || genome.depth < 1)
    return Violation{-1, -1, "n_qubits and depth must be positive"};
  if (genome.cells.size() != static_cast<std::size_t>(genome.n_qubits) * genome.depth)
    return Violation{-1, -1, "cell grid size does not match n_qubits x depth"};
  if (pool.empty()) return Violation{-1, -1, "gate pool is empty"};

  for (int t = 0; t < genome.depth; ++t) {
    for (int q = 0; q < genome.n_qubits; ++q) {
      const GateToken& tok = genome.at(t, q);
      if (!pool.allows(tok.kind))
        return Violation{t, q, std::string("gate kind ") + gate_kind_name(tok.kind) +
                                   " not in pool"};
      if (is_cx_half(tok.kind)) {
        if (tok.partner < 0 || tok.partner >= genome.n_qubits)
          return Violation{t, q, "CX partner out of range"};
        if (tok.partner == q) return Violation{t, q, "CX partner equals own qubit"};
        const GateToken& other = genome.at(t, tok.partner);
        const GateKind expected = tok.kind == GateKind::Cxc ? GateKind::Cxt : GateKind::Cxc;
        if (other.kind != expected || other.partner != q)
          return Violation{t, q, "inconsistent CX pair"};
      } else if (tok.partner != -1) {
        return Violation{t, q, "partner set on a non-CX token"};
      }
    }
  }
  return std::nullopt;
}

GateCounts gate_counts(const CircuitGenome& genome) {
  if (auto v = validate(genome)) {
    std::ostringstream msg;
    msg << "gate_counts: invalid genome at (" << v->column << "," << v->qubit
        << "): " << v->message;
    throw InternalError(msg.str());
  }
  GateCounts counts;
  for (const GateToken& tok : genome.cells) {
    switch (tok.kind) {
      case GateKind::Rx: ++counts.rx; break;
      case GateKind::Ry: ++counts.ry; break;
      case GateKind::Rz: ++counts.rz; break;
      case GateKind::H: ++counts.h; break;
      case GateKind::Cxc: ++counts.cx; break;
      default: break;
    }
  }
  return counts;
}

int cx_count(const CircuitGenome& genome) {
  int n = 0;
  for (const GateToken& tok : genome.cells)
    if (tok.kind == GateKind::Cxc) ++n;
  return n;
}

std::string serialize(const CircuitGenome& genome) {
  std::ostringstream out;
  out << "qsvm-circuit v1\n";
  out << "qubits " << genome.n_qubits << "\n";
  out << "depth " << genome.depth << "\n";
  for (int t = 0; t < genome.depth; ++t) {
    for (int q = 0; q < genome.n_qubits; ++q) {
      const GateToken& tok = genome.at(t, q);
      switch (tok.kind) {
        case GateKind::Id:
        case GateKind::Cxt:
          break;  // implied
        case GateKind::Cxc:
          out << "gate " << t << " " << q << " CXC " << tok.partner << "\n";
          break;
        default:
          out << "gate " << t << " " << q << " " << gate_kind_name(tok.kind) << "\n";
          break;
      }
    }
  }
  return out.str();
}

namespace {

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
  throw DataError("circuit parse error at line " + std::to_string(line_no) + ": " + what);
}

int parse_int_field(const std::string& field, int line_no, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    parse_fail(line_no, std::string("expected integer ") + what + ", got '" + field + "'");
  return value;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ' ') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

CircuitGenome deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    return true;
  };

  if (!next_line() || line != "qsvm-circuit v1") parse_fail(1, "expected header 'qsvm-circuit v1'");
  if (!next_line() || line.rfind("qubits ", 0) != 0) parse_fail(line_no + 1, "expected 'qubits <n>'");
  const int n = parse_int_field(line.substr(7), line_no, "qubit count");
  if (!next_line() || line.rfind("depth ", 0) != 0) parse_fail(line_no + 1, "expected 'depth <d>'");
  const int d = parse_int_field(line.substr(6), line_no, "depth");
  if (n < 1) parse_fail(2, "qubit count must be positive");
  if (d < 1) parse_fail(3, "depth must be positive");

  CircuitGenome genome = CircuitGenome::identity(n, d);
  while (next_line()) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_fields(line);
    if (f.size() < 4 || f[0] != "gate") parse_fail(line_no, "expected 'gate <column> <qubit> <KIND>'");
    const int t = parse_int_field(f[1], line_no, "column");
    const int q = parse_int_field(f[2], line_no, "qubit");
    if (t < 0 || t >= d) parse_fail(line_no, "column index out of range");
    if (q < 0 || q >= n) parse_fail(line_no, "qubit index out of range");
    if (genome.at(t, q).kind != GateKind::Id) parse_fail(line_no, "cell assigned twice");

    const std::string& kind = f[3];
    if (kind == "CXC") {
      if (f.size() != 5) parse_fail(line_no, "CXC line needs a target qubit");
      const int target = parse_int_field(f[4], line_no, "target qubit");
      if (target < 0 || target >= n) parse_fail(line_no, "target qubit out of range");
      if (target == q) parse_fail(line_no, "CX target equals control");
      if (genome.at(t, target).kind != GateKind::Id) parse_fail(line_no, "CX target cell occupied");
      genome.at(t, q) = {GateKind::Cxc, target};
      genome.at(t, target) = {GateKind::Cxt, q};
    } else if (f.size() != 4) {
      parse_fail(line_no, "unexpected trailing fields");
    } else if (kind == "RX") {
      genome.at(t, q) = {GateKind::Rx, -1};
    } else if (kind == "RY") {
      genome.at(t, q) = {GateKind::Ry, -1};
    } else if (kind == "RZ") {
      genome.at(t, q) = {GateKind::Rz, -1};
    } else if (kind == "H") {
      genome.at(t, q) = {GateKind::H, -1};
    } else {
      parse_fail(line_no, "unknown gate kind '" + kind + "'");
    }
  }

  if (auto v = validate(genome))
    throw DataError("circuit parse error: inconsistent circuit: " + v->message);
  return genome;
}

void save_circuit(const CircuitGenome& genome, const std::string& path) {
  atomic_write_file(path, serialize(genome));
}

CircuitGenome load_circuit(const std::string& path) {
  return deserialize(read_text_file(path));
}

}  // namespace evoqk
