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

#ifndef EPRROUTE_DAG_HPP
#define EPRROUTE_DAG_HPP

#include <algorithm>
#include <set>
#include <vector>

#include "eprroute/circuit.hpp"

namespace eprroute {

/// Dependency DAG over gate indices. A gate depends on the most recent prior
/// gate touching any of its qubits or clbits (conditions read their clbit).
struct CircuitDag {
  std::size_t n_nodes = 0;
  std::vector<std::vector<int>> preds;
  std::vector<std::vector<int>> succs;
};

namespace detail {

inline std::vector<int> touched_clbits(const Gate& g) {
  std::vector<int> cls = g.clbits;
  if (g.condition) cls.push_back(g.condition->clbit);
  return cls;
}

}  // namespace detail

inline CircuitDag build_dag(const Circuit& c) {
  validate(c);
  CircuitDag dag;
  dag.n_nodes = c.gates.size();
  dag.preds.resize(dag.n_nodes);
  dag.succs.resize(dag.n_nodes);
  std::vector<int> last_q(c.n_qubits, -1);
  std::vector<int> last_c(c.n_clbits, -1);
  for (int i = 0; i < static_cast<int>(c.gates.size()); ++i) {
    const Gate& g = c.gates[i];
    std::set<int> deps;
    for (int q : g.qubits) {
      if (last_q[q] >= 0) deps.insert(last_q[q]);
      last_q[q] = i;
    }
    for (int cb : detail::touched_clbits(g)) {
      if (last_c[cb] >= 0) deps.insert(last_c[cb]);
      last_c[cb] = i;
    }
    for (int d : deps) {
      dag.preds[i].push_back(d);
      dag.succs[d].push_back(i);
    }
  }
  return dag;
}

enum class DepthMode { AllGates, TwoQubitOnly };

inline int gate_depth_weight(const Gate& g, DepthMode mode) {
  if (g.kind == GateKind::Barrier) return 0;
  if (g.provenance == Provenance::EprPrep) return 0;
  if (mode == DepthMode::TwoQubitOnly) return is_two_qubit(g.kind) ? 1 : 0;
  return 1;
}

/// Longest weighted path through the DAG; equals the layer count of an ASAP
/// layering with the same weights.
inline long depth(const Circuit& c, DepthMode mode = DepthMode::AllGates) {
  CircuitDag dag = build_dag(c);
  std::vector<long> finish(dag.n_nodes, 0);
  long result = 0;
  for (std::size_t i = 0; i < dag.n_nodes; ++i) {
    long start = 0;
    for (int p : dag.preds[i]) start = std::max(start, finish[p]);
    finish[i] = start + gate_depth_weight(c.gates[i], mode);
    result = std::max(result, finish[i]);
  }
  return result;
}

struct GateCounts {
  long standard_cx = 0;
  long remote_cx = 0;
  long single_qubit = 0;
  long measure = 0;

  bool operator==(const GateCounts&) const = default;
};

/// Tallies by kind. CX gates inside an expanded remote block count toward the
/// block's single remote_cx, not standard_cx; EPR-preparation gates are not
/// counted at all.
inline GateCounts gate_counts(const Circuit& c) {
  GateCounts out;
  std::set<int> blocks;
  for (const Gate& g : c.gates) {
    if (g.provenance == Provenance::EprPrep) continue;
    const bool in_block = g.provenance == Provenance::RemoteBlock;
    if (in_block) blocks.insert(g.block_id.value_or(-1));
    switch (g.kind) {
      case GateKind::CX:
        if (!in_block) ++out.standard_cx;
        break;
      case GateKind::RemoteCX:
        ++out.remote_cx;
        break;
      case GateKind::Measure:
        ++out.measure;
        break;
      case GateKind::Reset:
      case GateKind::Barrier:
        break;
      default:
        ++out.single_qubit;
        break;
    }
  }
  out.remote_cx += static_cast<long>(blocks.size());
  return out;
}

inline long expanded_cx(const GateCounts& gc) {
  return gc.standard_cx + 2 * gc.remote_cx;
}

}  // namespace eprroute

#endif  // EPRROUTE_DAG_HPP
