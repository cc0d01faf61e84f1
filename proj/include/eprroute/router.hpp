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
// Deterministic fidelity-weighted swap routing over the augmented coupling
// graph. A CX whose endpoints share an augmented edge executes in place as a
// remote-gate candidate; swaps are inserted on standard edges only, chosen by
// a front-layer + lookahead distance heuristic with per-qubit decay.

#ifndef EPRROUTE_ROUTER_HPP
#define EPRROUTE_ROUTER_HPP

#include <algorithm>
#include <map>
#include <vector>

#include "eprroute/dag.hpp"
#include "eprroute/device.hpp"

namespace eprroute {

struct Layout {
  std::vector<int> v2p;  // virtual -> physical data node
  std::vector<int> p2v;  // physical -> virtual, -1 when unoccupied

  static Layout empty(int n_virtual, int n_physical) {
    Layout l;
    l.v2p.assign(n_virtual, -1);
    l.p2v.assign(n_physical, -1);
    return l;
  }

  void place(int v, int p) {
    v2p[v] = p;
    p2v[p] = v;
  }

  bool operator==(const Layout&) const = default;
};

struct RouterParams {
  int lookahead_size = 20;
  double lookahead_weight = 0.5;
  double decay = 0.001;
};

struct RoutedCircuit {
  Circuit circuit;  // over physical indices; every CX carries edge_kind
  Layout initial_layout;
  Layout final_layout;
};

/// Deterministic greedy placement: virtual qubits in descending
/// CX-interaction weighted degree, first seeded at the minimal-eccentricity
/// data node, the rest at the free node minimizing the weighted distance to
/// already-placed interaction partners. All ties break toward lower indices.
inline Layout initial_layout(const Circuit& circuit, const AugmentedGraph& graph,
                             const DistanceMatrix& dist) {
  const int n_v = circuit.n_qubits;
  const std::vector<int> allowed = routable_nodes(graph);
  if (n_v > static_cast<int>(allowed.size()))
    throw Error("circuit needs " + std::to_string(n_v) +
                " qubits but device has only " +
                std::to_string(allowed.size()) + " routable data nodes");
  std::map<std::pair<int, int>, long> weight;
  std::vector<double> deg(n_v, 0.0);
  for (const Gate& g : circuit.gates) {
    if (g.kind != GateKind::CX) continue;
    auto key = std::minmax(g.qubits[0], g.qubits[1]);
    ++weight[key];
    deg[g.qubits[0]] += 1.0;
    deg[g.qubits[1]] += 1.0;
  }
  std::vector<int> order(n_v);
  for (int i = 0; i < n_v; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return deg[a] > deg[b]; });

  Layout layout = Layout::empty(n_v, graph.n_nodes);
  std::vector<bool> used(graph.n_nodes, false);
  for (int rank = 0; rank < n_v; ++rank) {
    int v = order[rank];
    int best = -1;
    double best_score = 0.0;
    for (int p : allowed) {
      if (used[p]) continue;
      double score;
      if (rank == 0) {
        // Seed at minimal eccentricity.
        score = 0.0;
        for (int q : allowed) score = std::max(score, dist.at(p, q));
      } else {
        score = 0.0;
        for (auto& [key, w] : weight) {
          int other = -1;
          if (key.first == v) other = key.second;
          else if (key.second == v) other = key.first;
          if (other < 0 || layout.v2p[other] < 0) continue;
          score += static_cast<double>(w) * dist.at(p, layout.v2p[other]);
        }
      }
      if (best < 0 || score < best_score) {
        best = p;
        best_score = score;
      }
    }
    layout.place(v, best);
    used[best] = true;
  }
  return layout;
}

namespace router_detail {

struct EdgeLookup {
  // kind present between two nodes: bit 0 standard, bit 1 augmented
  std::vector<unsigned char> bits;
  int n;

  explicit EdgeLookup(const AugmentedGraph& g) : n(g.n_nodes) {
    bits.assign(static_cast<std::size_t>(n) * n, 0);
    for (const AugEdge& e : g.edges) {
      unsigned char b = e.kind == EdgeKind::Standard ? 1 : 2;
      bits[static_cast<std::size_t>(e.u) * n + e.v] |= b;
      bits[static_cast<std::size_t>(e.v) * n + e.u] |= b;
    }
  }

  unsigned char between(int a, int b) const {
    return bits[static_cast<std::size_t>(a) * n + b];
  }
};

}  // namespace router_detail

inline RoutedCircuit route(const Circuit& circuit, const AugmentedGraph& graph,
                           const DistanceMatrix& dist, const Layout& layout,
                           const RouterParams& params = {}) {
  for (const Gate& g : circuit.gates)
    if (g.kind == GateKind::RemoteCX)
      throw Error("input circuit must not contain remote_cx");
  CircuitDag dag = build_dag(circuit);
  router_detail::EdgeLookup lookup(graph);

  RoutedCircuit out;
  out.initial_layout = layout;
  out.circuit.n_qubits = graph.n_nodes;
  out.circuit.n_clbits = circuit.n_clbits;
  out.circuit.name = circuit.name;
  out.circuit.metadata = circuit.metadata;

  Layout pi = layout;
  std::vector<int> remaining(dag.n_nodes);
  std::vector<int> ready;
  for (std::size_t i = 0; i < dag.n_nodes; ++i) {
    remaining[i] = static_cast<int>(dag.preds[i].size());
    if (remaining[i] == 0) ready.push_back(static_cast<int>(i));
  }
  std::vector<double> decay_factor(graph.n_nodes, 1.0);
  int decay_round = 0;
  int swap_id = 0;
  long swap_budget =
      10000 + 100 * static_cast<long>(circuit.gates.size());

  auto retire = [&](int idx) {
    ready.erase(std::find(ready.begin(), ready.end(), idx));
    for (int s : dag.succs[idx])
      if (--remaining[s] == 0) ready.push_back(s);
    std::sort(ready.begin(), ready.end());
  };

  auto emit_mapped = [&](const Gate& g) {
    Gate m = g;
    for (int& q : m.qubits) q = pi.v2p[q];
    out.circuit.add(std::move(m));
  };

  // Hop distance over standard edges from every node adjacent (by any edge)
  // to `goal`; used by the stall-escape move below.
  auto escape_field = [&](int goal) {
    std::vector<int> hops(graph.n_nodes, -1);
    std::vector<int> queue;
    for (int e : graph.incident[goal]) {
      int to = graph.edges[e].u == goal ? graph.edges[e].v : graph.edges[e].u;
      if (hops[to] < 0) {
        hops[to] = 0;
        queue.push_back(to);
      }
    }
    std::sort(queue.begin(), queue.end());
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (int e : graph.incident[queue[i]]) {
        if (graph.edges[e].kind != EdgeKind::Standard) continue;
        int to = graph.edges[e].u == queue[i] ? graph.edges[e].v
                                              : graph.edges[e].u;
        if (hops[to] < 0) {
          hops[to] = hops[queue[i]] + 1;
          queue.push_back(to);
        }
      }
    return hops;
  };

  int stall_rounds = 0;
  const int stall_threshold = std::max(8, graph.n_nodes);

  while (!ready.empty()) {
    // Flush everything executable.
    bool progressed = true;
    while (progressed) {
      progressed = false;
      for (std::size_t k = 0; k < ready.size(); ++k) {
        int idx = ready[k];
        const Gate& g = circuit.gates[idx];
        if (g.kind != GateKind::CX) {
          emit_mapped(g);
          retire(idx);
          progressed = true;
          break;
        }
        int pc = pi.v2p[g.qubits[0]], pt = pi.v2p[g.qubits[1]];
        unsigned char b = lookup.between(pc, pt);
        if (b != 0) {
          Gate m = g;
          m.qubits = {pc, pt};
          // Prefer the standard edge when both exist.
          m.edge_kind = (b & 1) ? EdgeKind::Standard : EdgeKind::Augmented;
          out.circuit.add(std::move(m));
          retire(idx);
          progressed = true;
          stall_rounds = 0;
          break;
        }
      }
    }
    if (ready.empty()) break;

    // Front layer is all blocked CX gates; collect a lookahead window of the
    // next two-qubit gates in program order.
    std::vector<const Gate*> front;
    std::vector<bool> in_front(dag.n_nodes, false);
    for (int idx : ready) {
      front.push_back(&circuit.gates[idx]);
      in_front[idx] = true;
    }
    std::vector<const Gate*> look;
    for (std::size_t i = 0; i < dag.n_nodes &&
                            static_cast<int>(look.size()) < params.lookahead_size;
         ++i) {
      if (in_front[i]) continue;
      bool pending = remaining[i] > 0 ||
                     std::find(ready.begin(), ready.end(),
                               static_cast<int>(i)) != ready.end();
      if (pending && circuit.gates[i].kind == GateKind::CX)
        look.push_back(&circuit.gates[i]);
    }

    // Candidate swaps: standard edges touching a front-layer qubit position.
    std::vector<std::pair<int, int>> candidates;
    std::vector<bool> active(graph.n_nodes, false);
    for (const Gate* g : front)
      for (int q : g->qubits) active[pi.v2p[q]] = true;
    for (const AugEdge& e : graph.edges) {
      if (e.kind != EdgeKind::Standard) continue;
      if (active[e.u] || active[e.v]) candidates.emplace_back(e.u, e.v);
    }
    if (candidates.empty())
      throw Error("routing failure: no swap available for blocked gates");
    std::sort(candidates.begin(), candidates.end());

    auto mapped_dist = [&](const Gate* g, int a, int b) {
      int pc = pi.v2p[g->qubits[0]], pt = pi.v2p[g->qubits[1]];
      if (pc == a) pc = b;
      else if (pc == b) pc = a;
      if (pt == a) pt = b;
      else if (pt == b) pt = a;
      return dist.at(pc, pt);
    };

    std::pair<int, int> best{-1, -1};
    double best_cost = 0.0;
    for (auto [a, b] : candidates) {
      double cost = 0.0;
      for (const Gate* g : front) cost += mapped_dist(g, a, b);
      if (!look.empty()) {
        double lc = 0.0;
        for (const Gate* g : look) lc += mapped_dist(g, a, b);
        cost += params.lookahead_weight * lc / static_cast<double>(look.size());
      }
      cost *= std::max(decay_factor[a], decay_factor[b]);
      if (best.first < 0 || cost < best_cost - 1e-12) {
        best = {a, b};
        best_cost = cost;
      }
    }

    // Stall escape: when the heuristic loops without executing anything,
    // walk one endpoint of the oldest blocked gate along a shortest
    // standard-edge path into the other endpoint's neighbourhood. Each step
    // strictly shrinks the hop count, so the gate eventually executes.
    if (++stall_rounds > stall_threshold) {
      const Gate* g = front.front();
      int pc = pi.v2p[g->qubits[0]], pt = pi.v2p[g->qubits[1]];
      std::pair<int, int> forced{-1, -1};
      for (auto [x, y] : {std::pair<int, int>{pc, pt}, {pt, pc}}) {
        std::vector<int> hops = escape_field(y);
        if (hops[x] <= 0) continue;  // unreachable, or already adjacent
        for (const AugEdge& e : graph.edges) {
          if (e.kind != EdgeKind::Standard) continue;
          int w = e.u == x ? e.v : e.v == x ? e.u : -1;
          if (w >= 0 && hops[w] == hops[x] - 1) {
            forced = {std::min(x, w), std::max(x, w)};
            break;
          }
        }
        if (forced.first >= 0) break;
      }
      if (forced.first < 0)
        throw Error("routing failure: blocked gate cannot be unblocked");
      best = forced;
    }

    auto [a, b] = best;
    for (int rep = 0; rep < 3; ++rep) {
      Gate g;
      g.kind = GateKind::CX;
      g.qubits = rep == 1 ? std::vector<int>{b, a} : std::vector<int>{a, b};
      g.edge_kind = EdgeKind::Standard;
      g.provenance = Provenance::Swap;
      g.block_id = swap_id;
      out.circuit.add(std::move(g));
    }
    ++swap_id;
    int va = pi.p2v[a], vb = pi.p2v[b];
    pi.p2v[a] = vb;
    pi.p2v[b] = va;
    if (va >= 0) pi.v2p[va] = b;
    if (vb >= 0) pi.v2p[vb] = a;
    decay_factor[a] += params.decay;
    decay_factor[b] += params.decay;
    if (++decay_round % 5 == 0)
      std::fill(decay_factor.begin(), decay_factor.end(), 1.0);
    if (--swap_budget < 0)
      throw Error("routing failure: swap budget exhausted");
  }

  out.final_layout = pi;
  return out;
}

/// Machine check of the RoutedCircuit tagging invariant: every two-qubit gate
/// runs on an edge of its tagged kind.
inline void check_routed_validity(const RoutedCircuit& routed,
                                  const AugmentedGraph& graph) {
  router_detail::EdgeLookup lookup(graph);
  for (std::size_t i = 0; i < routed.circuit.gates.size(); ++i) {
    const Gate& g = routed.circuit.gates[i];
    if (!is_two_qubit(g.kind)) continue;
    if (!g.edge_kind)
      throw Error("routed gate " + std::to_string(i) + " carries no edge tag");
    unsigned char b = lookup.between(g.qubits[0], g.qubits[1]);
    unsigned char need = *g.edge_kind == EdgeKind::Standard ? 1 : 2;
    if (!(b & need))
      throw Error("routed gate " + std::to_string(i) +
                  " does not lie on an edge of its tagged kind");
  }
}

}  // namespace eprroute

#endif  // EPRROUTE_ROUTER_HPP
