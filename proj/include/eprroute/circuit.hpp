// Copyright 2026 The eprroute Authors
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

#ifndef EPRROUTE_CIRCUIT_HPP
#define EPRROUTE_CIRCUIT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eprroute {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class GateKind {
  X,
  Y,
  Z,
  H,
  S,
  Sdg,
  T,
  Tdg,
  Rx,
  Ry,
  Rz,
  U1,
  U2,
  U3,
  CX,
  Measure,
  Reset,
  Barrier,
  RemoteCX,
};

inline int param_count(GateKind k) {
  switch (k) {
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::U1:
      return 1;
    case GateKind::U2:
      return 2;
    case GateKind::U3:
      return 3;
    default:
      return 0;
  }
}

inline bool is_two_qubit(GateKind k) {
  return k == GateKind::CX || k == GateKind::RemoteCX;
}

inline bool is_single_qubit_unitary(GateKind k) {
  switch (k) {
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::H:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::U1:
    case GateKind::U2:
    case GateKind::U3:
      return true;
    default:
      return false;
  }
}

inline const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::T: return "t";
    case GateKind::Tdg: return "tdg";
    case GateKind::Rx: return "rx";
    case GateKind::Ry: return "ry";
    case GateKind::Rz: return "rz";
    case GateKind::U1: return "u1";
    case GateKind::U2: return "u2";
    case GateKind::U3: return "u3";
    case GateKind::CX: return "cx";
    case GateKind::Measure: return "measure";
    case GateKind::Reset: return "reset";
    case GateKind::Barrier: return "barrier";
    case GateKind::RemoteCX: return "remote_cx";
  }
  return "?";
}

/// Which kind of coupling-graph edge a routed two-qubit gate runs on.
enum class EdgeKind { Standard, Augmented };

/// Where an inserted gate came from. RemoteBlock marks the interior of an
/// expanded remote-CX; EprPrep marks the (optional) pair-preparation gates,
/// which are excluded from reported metrics.
enum class Provenance { None, Swap, RemoteBlock, EprPrep };

struct Condition {
  int clbit = 0;
  int value = 0;  // 0 or 1
  bool operator==(const Condition&) const = default;
};

struct Gate {
  GateKind kind;
  std::vector<int> qubits;
  std::vector<int> clbits;  // Measure target(s)
  std::vector<double> params;
  std::optional<Condition> condition;
  std::optional<EdgeKind> edge_kind;  // set by the router on CX gates
  std::optional<int> block_id;        // remote-block / swap id
  Provenance provenance = Provenance::None;

  bool operator==(const Gate&) const = default;
};

inline Gate make_gate(GateKind k, std::vector<int> qubits,
                      std::vector<double> params = {}) {
  Gate g;
  g.kind = k;
  g.qubits = std::move(qubits);
  g.params = std::move(params);
  return g;
}

inline Gate make_measure(int qubit, int clbit) {
  Gate g;
  g.kind = GateKind::Measure;
  g.qubits = {qubit};
  g.clbits = {clbit};
  return g;
}

struct Circuit {
  int n_qubits = 0;
  int n_clbits = 0;
  std::string name;
  std::vector<Gate> gates;
  std::map<std::string, std::string> metadata;

  Gate& add(Gate g) {
    gates.push_back(std::move(g));
    return gates.back();
  }
};

/// Validates register-range and arity invariants; throws Error naming the
/// offending gate position.
inline void validate(const Circuit& c) {
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    const std::string at = "gate " + std::to_string(i) + " (" +
                           gate_name(g.kind) + ")";
    if (is_two_qubit(g.kind)) {
      if (g.qubits.size() != 2)
        throw Error(at + ": expected 2 qubits");
    } else if (g.kind == GateKind::Barrier) {
      if (g.qubits.empty()) throw Error(at + ": barrier spans no qubits");
    } else {
      if (g.qubits.size() != 1)
        throw Error(at + ": expected 1 qubit");
    }
    for (std::size_t a = 0; a < g.qubits.size(); ++a) {
      int q = g.qubits[a];
      if (q < 0 || q >= c.n_qubits)
        throw Error(at + ": qubit index " + std::to_string(q) +
                    " out of range");
      for (std::size_t b = a + 1; b < g.qubits.size(); ++b)
        if (g.qubits[b] == q)
          throw Error(at + ": duplicate qubit index " + std::to_string(q));
    }
    for (int cb : g.clbits)
      if (cb < 0 || cb >= c.n_clbits)
        throw Error(at + ": clbit index " + std::to_string(cb) +
                    " out of range");
    if (g.kind == GateKind::Measure && g.clbits.size() != 1)
      throw Error(at + ": measure needs exactly 1 clbit");
    if (g.condition) {
      if (g.condition->clbit < 0 || g.condition->clbit >= c.n_clbits)
        throw Error(at + ": condition clbit out of range");
      if (g.condition->value != 0 && g.condition->value != 1)
        throw Error(at + ": condition value must be 0 or 1");
    }
    if (static_cast<int>(g.params.size()) != param_count(g.kind))
      throw Error(at + ": wrong parameter count");
  }
}

/// Structural equality: gate kinds, operands, params and conditions, ignoring
/// routing tags and provenance (which QASM text does not carry).
inline bool structurally_equal(const Circuit& a, const Circuit& b) {
  if (a.n_qubits != b.n_qubits || a.n_clbits != b.n_clbits) return false;
  if (a.gates.size() != b.gates.size()) return false;
  for (std::size_t i = 0; i < a.gates.size(); ++i) {
    const Gate& x = a.gates[i];
    const Gate& y = b.gates[i];
    if (x.kind != y.kind || x.qubits != y.qubits || x.clbits != y.clbits ||
        x.params != y.params || x.condition != y.condition)
      return false;
  }
  return true;
}

}  // namespace eprroute

#endif  // EPRROUTE_CIRCUIT_HPP
