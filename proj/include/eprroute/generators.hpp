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

#ifndef EPRROUTE_GENERATORS_HPP
#define EPRROUTE_GENERATORS_HPP

#include <cmath>
#include <string>

#include "eprroute/circuit.hpp"

namespace eprroute {

/// QFT without the final qubit-reversal swap network (noted in metadata).
/// Controlled phases are decomposed into rz and cx; the interaction graph is
/// the complete graph on n qubits, with exactly n(n-1) cx gates.
inline Circuit qft(int n) {
  if (n < 2) throw Error("qft requires n >= 2");
  Circuit c;
  c.n_qubits = n;
  c.name = "qft" + std::to_string(n);
  c.metadata["family"] = "qft";
  c.metadata["bit_reversal"] = "omitted";
  for (int k = 0; k < n; ++k) {
    c.add(make_gate(GateKind::H, {k}));
    for (int j = k + 1; j < n; ++j) {
      const double theta = M_PI / std::pow(2.0, j - k);
      c.add(make_gate(GateKind::Rz, {k}, {theta / 2}));
      c.add(make_gate(GateKind::CX, {k, j}));
      c.add(make_gate(GateKind::Rz, {j}, {-theta / 2}));
      c.add(make_gate(GateKind::CX, {k, j}));
      c.add(make_gate(GateKind::Rz, {j}, {theta / 2}));
    }
  }
  return c;
}

/// Deutsch-Jozsa with the all-ones balanced oracle: n-1 query qubits plus the
/// oracle qubit n-1. The interaction graph is a star centred on qubit n-1,
/// with n-1 cx gates.
inline Circuit dj(int n) {
  if (n < 2) throw Error("dj requires n >= 2");
  Circuit c;
  c.n_qubits = n;
  c.name = "dj" + std::to_string(n);
  c.metadata["family"] = "dj";
  c.add(make_gate(GateKind::X, {n - 1}));
  for (int q = 0; q < n; ++q) c.add(make_gate(GateKind::H, {q}));
  for (int q = 0; q < n - 1; ++q) c.add(make_gate(GateKind::CX, {q, n - 1}));
  for (int q = 0; q < n - 1; ++q) c.add(make_gate(GateKind::H, {q}));
  return c;
}

}  // namespace eprroute

#endif  // EPRROUTE_GENERATORS_HPP
