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
// Dense statevector simulation with exact branch enumeration at mid-circuit
// measurements and classical feed-forward, plus the routed-vs-source
// equivalence check. Qubit 0 is the least significant bit.

#ifndef EPRROUTE_SIMULATOR_HPP
#define EPRROUTE_SIMULATOR_HPP

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "eprroute/circuit.hpp"
#include "eprroute/router.hpp"

namespace eprroute {

using Amp = std::complex<double>;

struct StateVector {
  int n_qubits = 0;
  std::vector<Amp> amps;

  static StateVector zero(int n) {
    StateVector s;
    s.n_qubits = n;
    s.amps.assign(std::size_t{1} << n, Amp{0.0, 0.0});
    s.amps[0] = 1.0;
    return s;
  }

  double norm() const {
    double n = 0.0;
    for (const Amp& a : amps) n += std::norm(a);
    return std::sqrt(n);
  }
};

struct BranchOutcome {
  std::vector<int> clbits;
  double probability = 1.0;
  StateVector state;
};

namespace sim_detail {

inline void apply_1q(StateVector& s, int q, const std::array<Amp, 4>& m) {
  const std::size_t stride = std::size_t{1} << q;
  const std::size_t n = s.amps.size();
  for (std::size_t base = 0; base < n; base += 2 * stride)
    for (std::size_t i = base; i < base + stride; ++i) {
      Amp a0 = s.amps[i];
      Amp a1 = s.amps[i + stride];
      s.amps[i] = m[0] * a0 + m[1] * a1;
      s.amps[i + stride] = m[2] * a0 + m[3] * a1;
    }
}

inline void apply_cx(StateVector& s, int ctrl, int tgt) {
  const std::size_t cm = std::size_t{1} << ctrl;
  const std::size_t tm = std::size_t{1} << tgt;
  for (std::size_t i = 0; i < s.amps.size(); ++i)
    if ((i & cm) && !(i & tm)) std::swap(s.amps[i], s.amps[i | tm]);
}

inline std::array<Amp, 4> gate_matrix(const Gate& g) {
  using namespace std::complex_literals;
  const double isq = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::X: return {0, 1, 1, 0};
    case GateKind::Y: return {0, -1.0i, 1.0i, 0};
    case GateKind::Z: return {1, 0, 0, -1};
    case GateKind::H: return {isq, isq, isq, -isq};
    case GateKind::S: return {1, 0, 0, 1.0i};
    case GateKind::Sdg: return {1, 0, 0, -1.0i};
    case GateKind::T: return {1, 0, 0, std::exp(0.25i * M_PI)};
    case GateKind::Tdg: return {1, 0, 0, std::exp(-0.25i * M_PI)};
    case GateKind::Rx: {
      double t = g.params[0] / 2;
      return {std::cos(t), -1.0i * std::sin(t), -1.0i * std::sin(t),
              std::cos(t)};
    }
    case GateKind::Ry: {
      double t = g.params[0] / 2;
      return {std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
    }
    case GateKind::Rz: {
      double t = g.params[0] / 2;
      return {std::exp(-1.0i * t), 0, 0, std::exp(1.0i * t)};
    }
    case GateKind::U1:
      return {1, 0, 0, std::exp(1.0i * g.params[0])};
    case GateKind::U2: {
      double phi = g.params[0], lam = g.params[1];
      return {isq, -isq * std::exp(1.0i * lam), isq * std::exp(1.0i * phi),
              isq * std::exp(1.0i * (phi + lam))};
    }
    case GateKind::U3: {
      double th = g.params[0] / 2, phi = g.params[1], lam = g.params[2];
      return {std::cos(th), -std::exp(1.0i * lam) * std::sin(th),
              std::exp(1.0i * phi) * std::sin(th),
              std::exp(1.0i * (phi + lam)) * std::cos(th)};
    }
    default:
      throw Error(std::string("no matrix for gate ") + gate_name(g.kind));
  }
}

inline double prob_of_one(const StateVector& s, int q) {
  const std::size_t m = std::size_t{1} << q;
  double p = 0.0;
  for (std::size_t i = 0; i < s.amps.size(); ++i)
    if (i & m) p += std::norm(s.amps[i]);
  return p;
}

// Zeroes the complementary subspace and renormalizes by the mass actually
// retained, not by an externally computed probability. Scaling by the
// latter would let a ~1e-16 norm error in the parent compound through every
// later measurement (the deficit roughly doubles per p=1/2 split), which is
// enough to fail a 1e-9 fidelity bound on block-heavy circuits.
inline void project(StateVector& s, int q, int outcome) {
  const std::size_t m = std::size_t{1} << q;
  double kept = 0.0;
  for (std::size_t i = 0; i < s.amps.size(); ++i) {
    bool one = (i & m) != 0;
    if (one == (outcome == 1))
      kept += std::norm(s.amps[i]);
    else
      s.amps[i] = 0.0;
  }
  const double scale = 1.0 / std::sqrt(kept);
  for (Amp& a : s.amps) a *= scale;
}

// Moves the qubit's |1> weight onto |0>; used after projection by reset.
inline void force_zero(StateVector& s, int q) {
  const std::size_t m = std::size_t{1} << q;
  for (std::size_t i = 0; i < s.amps.size(); ++i)
    if (i & m) {
      s.amps[i & ~m] += s.amps[i];
      s.amps[i] = 0.0;
    }
}

struct Branch {
  StateVector state;
  double probability = 1.0;
  std::vector<int> clbits;
};

inline bool states_equal(const StateVector& a, const StateVector& b,
                         double tol) {
  for (std::size_t i = 0; i < a.amps.size(); ++i)
    if (std::abs(a.amps[i] - b.amps[i]) > tol) return false;
  return true;
}

/// Shared engine. When merging is enabled, branches whose states coincide
/// and whose differing clbits are never read again are combined; correct
/// remote-CX expansions collapse back to a handful of live branches, which
/// keeps block-heavy circuits tractable.
inline std::vector<Branch> run(const Circuit& c, const StateVector& input,
                               bool merge, std::size_t branch_cap = 1 << 14) {
  if (c.n_qubits > 16) throw Error("simulation limited to 16 qubits");
  for (const Gate& g : c.gates)
    if (g.kind == GateKind::RemoteCX)
      throw Error("cannot simulate unexpanded remote_cx");
  validate(c);

  std::vector<int> last_read(c.n_clbits, -1);
  for (int i = 0; i < static_cast<int>(c.gates.size()); ++i)
    if (c.gates[i].condition)
      last_read[c.gates[i].condition->clbit] = i;

  std::vector<Branch> branches;
  branches.push_back({input, 1.0, std::vector<int>(c.n_clbits, 0)});

  auto try_merge = [&](int gate_idx) {
    if (!merge) return;
    std::vector<Branch> merged;
    for (Branch& b : branches) {
      bool absorbed = false;
      for (Branch& m : merged) {
        bool clbits_ok = true;
        for (int cb = 0; cb < c.n_clbits && clbits_ok; ++cb)
          if (m.clbits[cb] != b.clbits[cb] && last_read[cb] > gate_idx)
            clbits_ok = false;
        if (clbits_ok && states_equal(m.state, b.state, 1e-10)) {
          m.probability += b.probability;
          absorbed = true;
          break;
        }
      }
      if (!absorbed) merged.push_back(std::move(b));
    }
    branches = std::move(merged);
  };

  for (int gi = 0; gi < static_cast<int>(c.gates.size()); ++gi) {
    const Gate& g = c.gates[gi];
    if (g.kind == GateKind::Barrier) continue;
    std::vector<Branch> next;
    for (Branch& br : branches) {
      if (g.condition && br.clbits[g.condition->clbit] != g.condition->value) {
        next.push_back(std::move(br));
        continue;
      }
      switch (g.kind) {
        case GateKind::Measure: {
          double p1 = prob_of_one(br.state, g.qubits[0]);
          double p0 = 1.0 - p1;
          for (int outcome : {0, 1}) {
            double p = outcome == 0 ? p0 : p1;
            if (p <= 1e-12) continue;
            Branch nb;
            nb.state = br.state;
            project(nb.state, g.qubits[0], outcome);
            nb.probability = br.probability * p;
            nb.clbits = br.clbits;
            nb.clbits[g.clbits[0]] = outcome;
            next.push_back(std::move(nb));
          }
          break;
        }
        case GateKind::Reset: {
          double p1 = prob_of_one(br.state, g.qubits[0]);
          double p0 = 1.0 - p1;
          for (int outcome : {0, 1}) {
            double p = outcome == 0 ? p0 : p1;
            if (p <= 1e-12) continue;
            Branch nb;
            nb.state = br.state;
            project(nb.state, g.qubits[0], outcome);
            if (outcome == 1) force_zero(nb.state, g.qubits[0]);
            nb.probability = br.probability * p;
            nb.clbits = br.clbits;
            next.push_back(std::move(nb));
          }
          break;
        }
        case GateKind::CX:
          apply_cx(br.state, g.qubits[0], g.qubits[1]);
          next.push_back(std::move(br));
          break;
        default:
          apply_1q(br.state, g.qubits[0], gate_matrix(g));
          next.push_back(std::move(br));
          break;
      }
    }
    branches = std::move(next);
    if (g.kind == GateKind::Measure || g.kind == GateKind::Reset)
      try_merge(gi);
    if (branches.size() > branch_cap)
      throw Error("branch explosion: more than " +
                  std::to_string(branch_cap) + " live branches");
  }
  return branches;
}

}  // namespace sim_detail

/// Exact enumeration of measurement branches, outcome 0 first at each split.
inline std::vector<BranchOutcome> simulate(const Circuit& c,
                                           const StateVector& input) {
  auto branches = sim_detail::run(c, input, /*merge=*/false);
  std::vector<BranchOutcome> out;
  out.reserve(branches.size());
  for (auto& b : branches)
    out.push_back({std::move(b.clbits), b.probability, std::move(b.state)});
  return out;
}

struct EquivalenceResult {
  bool pass = false;
  double min_fidelity = 1.0;
};

/// Seeded Haar-random single-qubit state.
inline std::vector<Amp> random_qubit_state(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Amp a{gauss(rng), gauss(rng)};
  Amp b{gauss(rng), gauss(rng)};
  double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

/// Certifies that `compiled`, run under initial_layout with ancillas starting
/// in |0> (include EPR preparation in the compiled circuit, or list the pairs
/// in epr_init to start them in |phi+>), reproduces `source` on the data
/// qubits after un-permuting by final_layout. The compiled circuit is
/// compacted to its used qubits; at most 16 may remain.
inline EquivalenceResult check_equivalence(
    const Circuit& source, const Circuit& compiled, const Layout& initial,
    const Layout& final_layout, int trials, std::uint64_t seed,
    const std::vector<std::pair<int, int>>& epr_init = {}) {
  for (const Gate& g : source.gates)
    if (g.kind == GateKind::Measure || g.kind == GateKind::Reset)
      throw Error("source circuit must be measurement-free");
  const int n_v = source.n_qubits;
  if (n_v > 16) throw Error("source exceeds the 16-qubit simulation limit");

  // Compact the compiled circuit to the qubits it actually uses.
  std::vector<int> compact(compiled.n_qubits, -1);
  std::vector<int> used;
  auto mark = [&](int q) {
    if (compact[q] < 0) {
      compact[q] = static_cast<int>(used.size());
      used.push_back(q);
    }
  };
  for (int v = 0; v < n_v; ++v) {
    if (initial.v2p[v] < 0 || final_layout.v2p[v] < 0)
      throw Error("layout does not place virtual qubit " + std::to_string(v));
    mark(initial.v2p[v]);
  }
  for (const Gate& g : compiled.gates)
    for (int q : g.qubits) mark(q);
  for (auto [a, b] : epr_init) {
    mark(a);
    mark(b);
  }
  const int m = static_cast<int>(used.size());
  if (m > 16)
    throw Error("compiled circuit uses " + std::to_string(m) +
                " qubits; verification is limited to 16");
  Circuit comp = compiled;
  comp.n_qubits = m;
  for (Gate& g : comp.gates)
    for (int& q : g.qubits) q = compact[q];

  std::mt19937_64 rng(seed);
  EquivalenceResult result;
  result.pass = true;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<std::vector<Amp>> qstates;
    qstates.reserve(n_v);
    for (int v = 0; v < n_v; ++v) qstates.push_back(random_qubit_state(rng));

    // Source output.
    StateVector sin = StateVector::zero(n_v);
    for (std::size_t i = 0; i < sin.amps.size(); ++i) {
      Amp a = 1.0;
      for (int v = 0; v < n_v; ++v) a *= qstates[v][(i >> v) & 1];
      sin.amps[i] = a;
    }
    auto src_branches = sim_detail::run(source, sin, false);
    const StateVector& s = src_branches.front().state;

    // Compiled input: virtual states at their initial positions, |0>
    // elsewhere, then entangle the requested EPR pairs.
    std::vector<const std::vector<Amp>*> init(m, nullptr);
    for (int v = 0; v < n_v; ++v) init[compact[initial.v2p[v]]] = &qstates[v];
    StateVector cin = StateVector::zero(m);
    for (std::size_t i = 0; i < cin.amps.size(); ++i) {
      Amp a = 1.0;
      for (int q = 0; q < m && a != 0.0; ++q) {
        int bit = (i >> q) & 1;
        a *= init[q] ? (*init[q])[bit] : (bit ? Amp{0.0} : Amp{1.0});
      }
      cin.amps[i] = a;
    }
    for (auto [pa, pb] : epr_init) {
      Gate h = make_gate(GateKind::H, {compact[pa]});
      sim_detail::apply_1q(cin, compact[pa], sim_detail::gate_matrix(h));
      sim_detail::apply_cx(cin, compact[pa], compact[pb]);
    }

    auto branches = sim_detail::run(comp, cin, /*merge=*/true);
    // Fidelity of the data qubits against the source output:
    // F = sum_anc |<s, anc | branch>|^2.
    std::vector<int> data_pos(n_v);
    for (int v = 0; v < n_v; ++v) data_pos[v] = compact[final_layout.v2p[v]];
    std::uint64_t data_mask = 0;
    for (int p : data_pos) data_mask |= std::uint64_t{1} << p;
    for (const auto& br : branches) {
      std::vector<Amp> acc(std::size_t{1} << (m - n_v), Amp{0.0});
      for (std::size_t i = 0; i < br.state.amps.size(); ++i) {
        std::size_t didx = 0;
        for (int v = 0; v < n_v; ++v)
          if ((i >> data_pos[v]) & 1) didx |= std::size_t{1} << v;
        std::size_t aidx = 0;
        int abit = 0;
        for (int q = 0; q < m; ++q) {
          if (data_mask & (std::uint64_t{1} << q)) continue;
          if ((i >> q) & 1) aidx |= std::size_t{1} << abit;
          ++abit;
        }
        acc[aidx] += std::conj(s.amps[didx]) * br.state.amps[i];
      }
      double f = 0.0;
      for (const Amp& a : acc) f += std::norm(a);
      result.min_fidelity = std::min(result.min_fidelity, f);
    }
  }
  result.pass = result.min_fidelity >= 1.0 - 1e-9;
  return result;
}

}  // namespace eprroute

#endif  // EPRROUTE_SIMULATOR_HPP
