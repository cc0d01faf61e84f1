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
//
// Replaces augmented-edge CX gates with the EPR-mediated remote-CX protocol:
// local CXs onto the pair halves, a Hadamard, two measurements, and
// classically conditioned X/Z corrections. The expansion has constant size
// regardless of the distance between the endpoints.

#ifndef EPRROUTE_LOWERING_HPP
#define EPRROUTE_LOWERING_HPP

#include <algorithm>
#include <vector>

#include "eprroute/device.hpp"
#include "eprroute/router.hpp"

namespace eprroute {

struct RemoteBlock {
  int block_id = 0;
  int control = 0;
  int target = 0;
  int pair_id = 0;
  std::pair<int, int> epr_pair;  // oriented: first half adjacent to control
  int position = 0;              // index of the block's first gate
  int clbit_a = 0;
  int clbit_b = 0;
};

struct LowerResult {
  Circuit circuit;
  std::vector<RemoteBlock> blocks;
};

/// Lowers every AUGMENTED-tagged CX. EPR pairs are assigned least-loaded
/// first (ties to the lower pair id); each block gets two fresh clbits.
/// include_prep adds reset/H/CX pair preparation, needed when the circuit is
/// to run (or be simulated) without an external entanglement source.
inline LowerResult lower(const RoutedCircuit& routed, const Device& device,
                         const AugmentedGraph& graph,
                         bool include_prep = false) {
  LowerResult out;
  out.circuit.n_qubits = routed.circuit.n_qubits;
  out.circuit.n_clbits = routed.circuit.n_clbits;
  out.circuit.name = routed.circuit.name;
  out.circuit.metadata = routed.circuit.metadata;

  auto adjacent = [&](int a, int b) {
    auto nb = device.neighbors(a);
    return std::find(nb.begin(), nb.end(), b) != nb.end();
  };

  std::vector<long> pair_load(device.epr_pairs.size(), 0);
  int next_block = 0;
  for (const Gate& g : routed.circuit.gates) {
    if (g.kind != GateKind::CX || g.edge_kind != EdgeKind::Augmented) {
      out.circuit.add(g);
      continue;
    }
    const int c = g.qubits[0], t = g.qubits[1];
    const AugEdge* edge = graph.find_edge(c, t);
    if (edge == nullptr || edge->kind != EdgeKind::Augmented)
      throw Error("augmented CX(" + std::to_string(c) + "," +
                  std::to_string(t) + ") has no augmented edge in the graph");
    int best_pair = -1;
    std::pair<int, int> oriented{-1, -1};
    for (int p : edge->serving_pairs) {
      auto [a, b] = device.epr_pairs[p];
      std::pair<int, int> o{-1, -1};
      if (adjacent(c, a) && adjacent(t, b)) o = {a, b};
      else if (adjacent(c, b) && adjacent(t, a)) o = {b, a};
      else continue;
      if (best_pair < 0 || pair_load[p] < pair_load[best_pair]) {
        best_pair = p;
        oriented = o;
      }
    }
    if (best_pair < 0)
      throw Error("augmented CX(" + std::to_string(c) + "," +
                  std::to_string(t) + ") has no serving EPR pair");
    ++pair_load[best_pair];

    RemoteBlock blk;
    blk.block_id = next_block++;
    blk.control = c;
    blk.target = t;
    blk.pair_id = best_pair;
    blk.epr_pair = oriented;
    blk.position = static_cast<int>(out.circuit.gates.size());
    blk.clbit_a = out.circuit.n_clbits++;
    blk.clbit_b = out.circuit.n_clbits++;
    const auto [a, b] = oriented;

    auto add = [&](Gate gate, Provenance prov) {
      gate.provenance = prov;
      gate.block_id = blk.block_id;
      out.circuit.add(std::move(gate));
    };
    if (include_prep) {
      add(make_gate(GateKind::Reset, {a}), Provenance::EprPrep);
      add(make_gate(GateKind::Reset, {b}), Provenance::EprPrep);
      add(make_gate(GateKind::H, {a}), Provenance::EprPrep);
      add(make_gate(GateKind::CX, {a, b}), Provenance::EprPrep);
    }
    add(make_gate(GateKind::CX, {c, a}), Provenance::RemoteBlock);
    add(make_gate(GateKind::CX, {b, t}), Provenance::RemoteBlock);
    add(make_gate(GateKind::H, {b}), Provenance::RemoteBlock);
    add(make_measure(a, blk.clbit_a), Provenance::RemoteBlock);
    add(make_measure(b, blk.clbit_b), Provenance::RemoteBlock);
    Gate corr_x = make_gate(GateKind::X, {t});
    corr_x.condition = Condition{blk.clbit_a, 1};
    add(std::move(corr_x), Provenance::RemoteBlock);
    Gate corr_z = make_gate(GateKind::Z, {c});
    corr_z.condition = Condition{blk.clbit_b, 1};
    add(std::move(corr_z), Provenance::RemoteBlock);

    out.blocks.push_back(blk);
  }
  return out;
}

/// Checks the lowered-circuit invariant: no augmented tags remain and every
/// CX joins grid neighbours. EPR-preparation gates are exempt: the pair halves
/// sit at opposite ends of a row or column and are entangled by the
/// generating device, not by a grid gate.
inline void check_lowered_validity(const Circuit& lowered, const Device& device) {
  for (std::size_t i = 0; i < lowered.gates.size(); ++i) {
    const Gate& g = lowered.gates[i];
    if (g.kind != GateKind::CX) continue;
    if (g.provenance == Provenance::EprPrep) continue;
    if (g.edge_kind == EdgeKind::Augmented)
      throw Error("lowered circuit still has an augmented CX at " +
                  std::to_string(i));
    auto nb = device.neighbors(g.qubits[0]);
    if (std::find(nb.begin(), nb.end(), g.qubits[1]) == nb.end())
      throw Error("lowered CX at " + std::to_string(i) +
                  " joins non-adjacent qubits");
  }
}

}  // namespace eprroute

#endif  // EPRROUTE_LOWERING_HPP
