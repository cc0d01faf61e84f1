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
// Integration gate: one pass/fail line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "eprroute/pipeline.hpp"
#include "test_helpers.hpp"

using namespace eprroute;

namespace {

int failures = 0;

void criterion(const std::string& name, const std::function<bool()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string error;
  try {
    ok = body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::printf("[%s] %s (%lld ms)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
              static_cast<long long>(ms), error.empty() ? "" : " error: ",
              error.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

Circuit remote_block_circuit() {
  Circuit c;
  c.n_qubits = 4;  // c=0, a=1, b=2, t=3
  c.n_clbits = 2;
  c.add(make_gate(GateKind::CX, {0, 1}));
  c.add(make_gate(GateKind::CX, {2, 3}));
  c.add(make_gate(GateKind::H, {2}));
  c.add(make_measure(1, 0));
  c.add(make_measure(2, 1));
  Gate x = make_gate(GateKind::X, {3});
  x.condition = Condition{0, 1};
  c.add(std::move(x));
  Gate z = make_gate(GateKind::Z, {0});
  z.condition = Condition{1, 1};
  c.add(std::move(z));
  return c;
}

// 1. Remote-CX correctness on 50 seeded random 2-qubit data states.
bool remote_cx_correctness() {
  std::mt19937_64 rng(1001);
  Circuit block = remote_block_circuit();
  const double isq = 1.0 / std::sqrt(2.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto q0 = random_qubit_state(rng);
    auto q3 = random_qubit_state(rng);
    StateVector in = StateVector::zero(4);
    for (std::size_t i = 0; i < 16; ++i) {
      int b0 = i & 1, b1 = (i >> 1) & 1, b2 = (i >> 2) & 1, b3 = (i >> 3) & 1;
      in.amps[i] = q0[b0] * (b1 == b2 ? isq : 0.0) * q3[b3];
    }
    auto branches = simulate(block, in);
    if (branches.size() != 4) return false;
    std::vector<Amp> want(4);
    want[0] = q0[0] * q3[0];
    want[1] = q0[1] * q3[1];
    want[2] = q0[0] * q3[1];
    want[3] = q0[1] * q3[0];
    for (const auto& br : branches) {
      if (std::abs(br.probability - 0.25) > 1e-10) return false;
      Amp overlap = 0.0;
      for (std::size_t i = 0; i < 16; ++i) {
        int b1 = (i >> 1) & 1, b2 = (i >> 2) & 1;
        if (b1 != br.clbits[0] || b2 != br.clbits[1]) continue;
        int b0 = i & 1, b3 = (i >> 3) & 1;
        overlap += std::conj(want[b0 + 2 * b3]) * br.state.amps[i];
      }
      if (std::norm(overlap) < 1.0 - 1e-12) return false;
    }
  }
  return true;
}

// 2. End-to-end equivalence on random circuits and qft/dj families.
bool end_to_end_equivalence() {
  std::vector<Circuit> suite;
  std::mt19937_64 rng(2002);
  std::uniform_int_distribution<int> nq(4, 8);
  std::uniform_int_distribution<int> ng(10, 40);
  for (int i = 0; i < 50; ++i) {
    Circuit c = testutil::random_circuit(rng, nq(rng), ng(rng));
    c.name = "rand" + std::to_string(i);
    suite.push_back(std::move(c));
  }
  for (int n = 4; n <= 8; ++n) suite.push_back(qft(n));
  for (int n = 4; n <= 8; ++n) suite.push_back(dj(n));
  for (const Circuit& c : suite) {
    RemoteCompilation remote = compile_remote(c);
    auto r1 = check_equivalence(c, remote.physical.circuit,
                                remote.routed.initial_layout,
                                remote.routed.final_layout, 2, 777);
    if (!r1.pass || r1.min_fidelity < 1.0 - 1e-9) {
      std::fprintf(stderr, "  remote equivalence failed on %s (f=%.12f)\n",
                   c.name.c_str(), r1.min_fidelity);
      return false;
    }
    StandardCompilation standard = compile_standard(c, remote.device.side);
    auto r2 = check_equivalence(c, standard.routed.circuit,
                                standard.routed.initial_layout,
                                standard.routed.final_layout, 2, 777);
    if (!r2.pass || r2.min_fidelity < 1.0 - 1e-9) {
      std::fprintf(stderr, "  standard equivalence failed on %s (f=%.12f)\n",
                   c.name.c_str(), r2.min_fidelity);
      return false;
    }
  }
  return true;
}

// 3. Routing validity for every benchmark up to qft(20).
bool routing_validity() {
  for (int n = 2; n <= 20; ++n) {
    for (const Circuit& c : {qft(n), dj(n)}) {
      RemoteCompilation r = compile_remote(c);
      check_routed_validity(r.routed, r.graph);
      check_lowered_validity(r.logical.circuit, r.device);
      check_lowered_validity(r.physical.circuit, r.device);
      StandardCompilation s = compile_standard(c, r.device.side);
      check_routed_validity(s.routed, s.graph);
    }
  }
  return true;
}

// 4. Known 5x5 graph facts and Floyd-Warshall agreement up to k=15.
bool graph_oracles() {
  Device d = build_grid_device_for_side(5);
  std::set<int> anc;
  for (int v = 0; v < d.n_nodes(); ++v)
    if (!d.is_data(v)) anc.insert(v);
  if (anc != std::set<int>{1, 3, 5, 9, 15, 19, 21, 23}) return false;
  AugmentedGraph g = augment(d);
  const AugEdge* e = g.find_edge(2, 22);
  if (e == nullptr || e->kind != EdgeKind::Augmented) return false;
  std::set<std::pair<int, int>> serving;
  for (int p : e->serving_pairs) serving.insert(d.epr_pairs[p]);
  if (serving != std::set<std::pair<int, int>>{{1, 21}, {3, 23}}) return false;
  for (int side = 2; side <= 15; ++side) {
    Device dev = build_grid_device_for_side(side);
    AugmentedGraph gr = augment(dev);
    DistanceMatrix m = weighted_distances(gr);
    auto fw = testutil::floyd_warshall(gr);
    for (int u : gr.data_nodes)
      for (int v : gr.data_nodes)
        if (std::abs(m.at(u, v) - fw[u][v]) > 1e-12) return false;
  }
  return true;
}

// 5. Qualitative trend on qft(10..20): remote compilation wins on >= 80% of
// sizes and the cx advantage is non-decreasing on some 3-chain.
bool qualitative_trend() {
  std::vector<long> cx_diff;
  int wins = 0;
  const std::vector<int> sizes{10, 12, 14, 16, 18, 20};
  for (int n : sizes) {
    ComparisonReport r = run_benchmark(qft(n), "qft");
    std::printf("  qft(%d): side=%d diff_cx=%ld diff_depth=%ld remote_cx=%ld\n",
                n, r.side, r.diff_cx, r.diff_depth, r.remote_remote_cx);
    cx_diff.push_back(r.diff_cx);
    if (r.diff_cx > 0 && r.diff_depth > 0) ++wins;
  }
  bool chain = false;
  for (std::size_t i = 0; i + 2 < cx_diff.size(); ++i)
    if (cx_diff[i] <= cx_diff[i + 1] && cx_diff[i + 1] <= cx_diff[i + 2])
      chain = true;
  return wins * 5 >= static_cast<int>(sizes.size()) * 4 && chain;
}

// 6. Contention scheduling of two blocks forced onto one pair.
bool contention_scheduling() {
  Device d = build_grid_device(5);
  d.epr_pairs = {{1, 7}};           // single pair
  d.roles[3] = d.roles[5] = Role::Data;
  validate(d);
  AugmentedGraph g = augment(d);
  RoutedCircuit r;
  r.circuit.n_qubits = g.n_nodes;
  Gate a = make_gate(GateKind::CX, {0, 6});
  a.edge_kind = EdgeKind::Augmented;
  Gate b = make_gate(GateKind::CX, {2, 8});
  b.edge_kind = EdgeKind::Augmented;
  r.circuit.add(std::move(a));
  r.circuit.add(std::move(b));
  r.initial_layout = Layout::empty(0, g.n_nodes);
  r.final_layout = r.initial_layout;
  LowerResult low = lower(r, d, g);
  if (low.blocks.size() != 2 || low.blocks[0].pair_id != low.blocks[1].pair_id)
    return false;
  Schedule contended = schedule(low.circuit, low.blocks);
  Schedule free = schedule(low.circuit, low.blocks, false);
  // Single-block makespan.
  RoutedCircuit one;
  one.circuit.n_qubits = g.n_nodes;
  Gate a2 = make_gate(GateKind::CX, {0, 6});
  a2.edge_kind = EdgeKind::Augmented;
  one.circuit.add(std::move(a2));
  one.initial_layout = r.initial_layout;
  one.final_layout = r.initial_layout;
  LowerResult lone = lower(one, d, g);
  long single = schedule(lone.circuit, lone.blocks).makespan;
  return contended.makespan == 2 * single && contended.makespan != free.makespan;
}

// 7. Determinism: repeated compilation yields byte-identical artifacts.
bool determinism() {
  for (const Circuit& c : {qft(9), dj(9)}) {
    CompileOptions opts;
    RemoteCompilation a = compile_remote(c, opts);
    RemoteCompilation b = compile_remote(c, opts);
    if (emit_qasm(a.logical.circuit) != emit_qasm(b.logical.circuit))
      return false;
    if (emit_qasm(a.physical.circuit) != emit_qasm(b.physical.circuit))
      return false;
    if (blocks_to_json(a.logical.blocks).dump() !=
        blocks_to_json(b.logical.blocks).dump())
      return false;
    if (device_to_json(a.device).dump() != device_to_json(b.device).dump())
      return false;
    StandardCompilation sa = compile_standard(c, a.device.side, opts);
    StandardCompilation sb = compile_standard(c, a.device.side, opts);
    if (emit_qasm(sa.routed.circuit) != emit_qasm(sb.routed.circuit))
      return false;
  }
  return true;
}

// 8. parse-emit-parse structural fixpoint on every generated benchmark and
// its compilations.
bool qasm_round_trip() {
  std::vector<Circuit> files;
  for (int n = 4; n <= 12; ++n) {
    files.push_back(qft(n));
    files.push_back(dj(n));
  }
  std::vector<std::string> texts;
  for (const Circuit& c : files) {
    texts.push_back(emit_qasm(c));
    RemoteCompilation r = compile_remote(c);
    texts.push_back(emit_qasm(r.logical.circuit));
    texts.push_back(emit_qasm(r.physical.circuit));
    StandardCompilation s = compile_standard(c, r.device.side);
    texts.push_back(emit_qasm(s.routed.circuit));
  }
  for (const std::string& t : texts) {
    Circuit p1 = parse_qasm(t);
    Circuit p2 = parse_qasm(emit_qasm(p1));
    if (!structurally_equal(p1, p2)) return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion("1 remote-cx correctness (50 states, 4 branches, p=0.25)",
            remote_cx_correctness);
  criterion("2 end-to-end equivalence (random + qft/dj 4..8)",
            end_to_end_equivalence);
  criterion("3 routing validity up to qft(20)", routing_validity);
  criterion("4 graph oracles (5x5 facts, Floyd-Warshall k<=15)",
            graph_oracles);
  criterion("5 qualitative trend on qft(10..20)", qualitative_trend);
  criterion("6 contention scheduling (same-pair serialization)",
            contention_scheduling);
  criterion("7 determinism of compile artifacts", determinism);
  criterion("8 qasm round-trip fixpoint", qasm_round_trip);
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
