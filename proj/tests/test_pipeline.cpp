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

#include <doctest.h>

#include "eprroute/pipeline.hpp"

using namespace eprroute;

TEST_CASE("device json round-trips") {
  Device d = build_grid_device(17);
  Device back = device_from_json(device_to_json(d));
  CHECK(back.side == d.side);
  CHECK(back.roles == d.roles);
  CHECK(back.epr_pairs == d.epr_pairs);
  CHECK(back.fidelity_augmented == d.fidelity_augmented);
}

TEST_CASE("layout json round-trips") {
  Layout l = Layout::empty(3, 9);
  l.place(0, 4);
  l.place(1, 0);
  l.place(2, 8);
  Layout back = layout_from_json(layout_to_json(l));
  CHECK(back == l);
}

TEST_CASE("remote pipeline on a cx-free circuit has zero blocks") {
  Circuit c;
  c.n_qubits = 4;
  c.name = "bare";
  for (int q = 0; q < 4; ++q) c.add(make_gate(GateKind::H, {q}));
  RemoteCompilation r = compile_remote(c);
  CHECK(r.logical.blocks.empty());
  CHECK(gate_counts(r.logical.circuit).remote_cx == 0);
}

TEST_CASE("end-to-end qft(5) benchmark row is self-consistent") {
  Circuit c = qft(5);
  ComparisonReport r = run_benchmark(c, "qft");
  CHECK(r.n_qubits == 5);
  CHECK(r.side == 3);
  CHECK(r.original_cx == 20);
  CHECK(r.diff_cx == r.standard_cx - r.remote_standard_cx);
  CHECK(r.diff_depth == r.standard_depth - r.remote_depth);
  CHECK(r.remote_expanded_cx ==
        r.remote_standard_cx + 2 * r.remote_remote_cx);
  CHECK(r.remote_expanded_depth >= r.remote_depth);
  CHECK(r.remote_contended_depth >= r.remote_expanded_depth);
}

TEST_CASE("pipelines are deterministic end to end") {
  Circuit c = qft(6);
  CompileOptions opts;
  RemoteCompilation a = compile_remote(c, opts);
  RemoteCompilation b = compile_remote(c, opts);
  CHECK(emit_qasm(a.logical.circuit) == emit_qasm(b.logical.circuit));
  CHECK(blocks_to_json(a.logical.blocks) == blocks_to_json(b.logical.blocks));
  CHECK(layout_to_json(a.routed.final_layout) ==
        layout_to_json(b.routed.final_layout));
}

TEST_CASE("compiled circuits round-trip through qasm") {
  Circuit c = qft(5);
  RemoteCompilation r = compile_remote(c);
  for (const Circuit* circ : {&r.logical.circuit, &r.physical.circuit}) {
    std::string text = emit_qasm(*circ);
    Circuit p1 = parse_qasm(text);
    Circuit p2 = parse_qasm(emit_qasm(p1));
    CHECK(structurally_equal(p1, p2));
  }
}

TEST_CASE("remote compilation of qft(4) verifies against the source") {
  Circuit c = qft(4);
  RemoteCompilation r = compile_remote(c);
  auto res = check_equivalence(c, r.physical.circuit,
                               r.routed.initial_layout,
                               r.routed.final_layout, 3, 42);
  CHECK(res.pass);
  CHECK(res.min_fidelity >= 1.0 - 1e-9);
}

TEST_CASE("standard compilation of dj(5) verifies against the source") {
  Circuit c = dj(5);
  RemoteCompilation probe = compile_remote(c);
  StandardCompilation s = compile_standard(c, probe.device.side);
  auto res = check_equivalence(c, s.routed.circuit, s.routed.initial_layout,
                               s.routed.final_layout, 3, 42);
  CHECK(res.pass);
}

TEST_CASE("generator specs parse") {
  CHECK(generate_circuit("qft:5").n_qubits == 5);
  CHECK(generate_circuit("dj:7").n_qubits == 7);
  CHECK_THROWS_AS(generate_circuit("qft"), Error);
  CHECK_THROWS_AS(generate_circuit("ghz:4"), Error);
  CHECK_THROWS_AS(generate_circuit("qft:x"), Error);
}

TEST_CASE("emitted artifacts embed the run configuration") {
  CompileOptions opts;
  json cfg = config_json(opts);
  CHECK(cfg.contains("lookahead_size"));
  std::string qasm = emit_qasm(qft(3), {"config: " + cfg.dump()});
  CHECK(qasm.find("// config: ") != std::string::npos);
  Circuit back = parse_qasm(qasm);  // comments are skipped
  CHECK(structurally_equal(back, qft(3)));
}
