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

#include <cmath>
#include <random>

#include "eprroute/simulator.hpp"
#include "eprroute/generators.hpp"
#include "test_helpers.hpp"

using namespace eprroute;

TEST_CASE("x flips the ground state") {
  Circuit c;
  c.n_qubits = 1;
  c.add(make_gate(GateKind::X, {0}));
  auto branches = simulate(c, StateVector::zero(1));
  REQUIRE(branches.size() == 1);
  CHECK(branches[0].probability == doctest::Approx(1.0));
  CHECK(std::abs(branches[0].state.amps[1] - Amp{1.0, 0.0}) < 1e-12);
}

TEST_CASE("hadamard measurement branches evenly") {
  Circuit c;
  c.n_qubits = 1;
  c.n_clbits = 1;
  c.add(make_gate(GateKind::H, {0}));
  c.add(make_measure(0, 0));
  auto branches = simulate(c, StateVector::zero(1));
  REQUIRE(branches.size() == 2);
  CHECK(branches[0].clbits[0] == 0);  // outcome 0 first
  CHECK(branches[1].clbits[0] == 1);
  CHECK(branches[0].probability == doctest::Approx(0.5));
  CHECK(branches[1].probability == doctest::Approx(0.5));
  CHECK(std::abs(branches[1].state.amps[1] - Amp{1.0, 0.0}) < 1e-12);
}

TEST_CASE("branch probabilities sum to one and norms stay unit") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 10; ++iter) {
    Circuit c = testutil::random_circuit(rng, 4, 25, /*allow_measure=*/true);
    auto branches = simulate(c, StateVector::zero(4));
    double total = 0.0;
    for (const auto& b : branches) {
      total += b.probability;
      CHECK(std::abs(b.state.norm() - 1.0) < 1e-12);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("conditioned gates apply per branch") {
  // Teleport-style: measure then correct; the corrected branch matches the
  // uncorrected one.
  Circuit c;
  c.n_qubits = 1;
  c.n_clbits = 1;
  c.add(make_gate(GateKind::H, {0}));
  c.add(make_measure(0, 0));
  Gate x = make_gate(GateKind::X, {0});
  x.condition = Condition{0, 1};
  c.add(std::move(x));
  auto branches = simulate(c, StateVector::zero(1));
  REQUIRE(branches.size() == 2);
  for (const auto& b : branches)
    CHECK(std::abs(b.state.amps[0] - Amp{1.0, 0.0}) < 1e-12);
}

namespace {

// The remote-CX block expansion on qubits c=0, a=1, b=2, t=3, without pair prep.
Circuit remote_block_circuit() {
  Circuit c;
  c.n_qubits = 4;
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

StateVector data_with_epr(const std::vector<Amp>& q0,
                          const std::vector<Amp>& q3) {
  // |q0> on qubit 0, |phi+> on 1,2, |q3> on qubit 3.
  StateVector s = StateVector::zero(4);
  const double isq = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < 16; ++i) {
    int b0 = i & 1, b1 = (i >> 1) & 1, b2 = (i >> 2) & 1, b3 = (i >> 3) & 1;
    s.amps[i] = q0[b0] * (b1 == b2 ? isq : 0.0) * q3[b3];
  }
  return s;
}

}  // namespace

TEST_CASE("remote block implements cx in all four branches") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 10; ++iter) {
    auto q0 = random_qubit_state(rng);
    auto q3 = random_qubit_state(rng);
    auto branches = simulate(remote_block_circuit(), data_with_epr(q0, q3));
    REQUIRE(branches.size() == 4);
    // Oracle: dense 4x4 CX on (control=q0, target=q3).
    std::vector<Amp> want(4);
    want[0] = q0[0] * q3[0];
    want[1] = q0[1] * q3[1];  // |q0=1,q3=0> -> target flipped
    want[2] = q0[0] * q3[1];
    want[3] = q0[1] * q3[0];
    for (const auto& br : branches) {
      CHECK(br.probability == doctest::Approx(0.25).epsilon(1e-10));
      double fid = 0.0;
      // Ancillas are in basis states; project them out by fixing their
      // measured values.
      Amp overlap = 0.0;
      for (std::size_t i = 0; i < 16; ++i) {
        int b0 = i & 1, b1 = (i >> 1) & 1, b2 = (i >> 2) & 1, b3 = (i >> 3) & 1;
        if (b1 != br.clbits[0] || b2 != br.clbits[1]) continue;
        overlap += std::conj(want[b0 + 2 * b3]) * br.state.amps[i];
      }
      fid = std::norm(overlap);
      CHECK(fid >= 1.0 - 1e-12);
    }
  }
}

TEST_CASE("simulate rejects oversized and composite circuits") {
  Circuit big;
  big.n_qubits = 17;
  CHECK_THROWS_AS(simulate(big, StateVector::zero(1)), Error);
  Circuit comp;
  comp.n_qubits = 6;
  comp.add(make_gate(GateKind::RemoteCX, {0, 5}));
  CHECK_THROWS_AS(simulate(comp, StateVector::zero(6)), Error);
}

TEST_CASE("check_equivalence accepts identity and rejects corruption") {
  Circuit c = qft(4);
  Layout id = Layout::empty(4, 4);
  for (int i = 0; i < 4; ++i) id.place(i, i);
  auto r = check_equivalence(c, c, id, id, 5, 99);
  CHECK(r.pass);
  CHECK(r.min_fidelity == doctest::Approx(1.0).epsilon(1e-12));
  Circuit bad = c;
  bad.add(make_gate(GateKind::X, {2}));
  auto r2 = check_equivalence(c, bad, id, id, 5, 99);
  CHECK(!r2.pass);
  CHECK(r2.min_fidelity < 0.999);
}

TEST_CASE("deferred-measurement cross-check on the remote block") {
  // Replace each measured-conditioned pair by a coherent controlled gate; the
  // data-qubit output must agree with every measured branch.
  Circuit coherent;
  coherent.n_qubits = 4;
  coherent.add(make_gate(GateKind::CX, {0, 1}));
  coherent.add(make_gate(GateKind::CX, {2, 3}));
  coherent.add(make_gate(GateKind::H, {2}));
  coherent.add(make_gate(GateKind::CX, {1, 3}));  // a controls X(t)
  // b controls Z(c): H-conjugated CX.
  coherent.add(make_gate(GateKind::H, {0}));
  coherent.add(make_gate(GateKind::CX, {2, 0}));
  coherent.add(make_gate(GateKind::H, {0}));
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 5; ++iter) {
    auto q0 = random_qubit_state(rng);
    auto q3 = random_qubit_state(rng);
    StateVector in = data_with_epr(q0, q3);
    auto cb = simulate(coherent, in);
    REQUIRE(cb.size() == 1);
    auto mb = simulate(remote_block_circuit(), in);
    // Reduced data state: in each measured branch ancillas are fixed, so the
    // data amplitudes are read off directly; compare against the coherent
    // run's reduced density via fidelity of each branch with every other.
    std::vector<Amp> want(4);
    want[0] = q0[0] * q3[0];
    want[1] = q0[1] * q3[1];
    want[2] = q0[0] * q3[1];
    want[3] = q0[1] * q3[0];
    // Coherent run: data fidelity against the CX-applied product state.
    Amp acc00 = 0.0;
    double f = 0.0;
    for (int b1 = 0; b1 < 2; ++b1)
      for (int b2 = 0; b2 < 2; ++b2) {
        Amp o = 0.0;
        for (std::size_t i = 0; i < 16; ++i) {
          if (((i >> 1) & 1) != static_cast<unsigned>(b1) ||
              ((i >> 2) & 1) != static_cast<unsigned>(b2))
            continue;
          int b0 = i & 1, b3 = (i >> 3) & 1;
          o += std::conj(want[b0 + 2 * b3]) * cb.front().state.amps[i];
        }
        f += std::norm(o);
      }
    (void)acc00;
    CHECK(f >= 1.0 - 1e-9);
    for (const auto& br : mb) CHECK(br.probability == doctest::Approx(0.25));
  }
}
