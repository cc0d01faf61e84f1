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
// Square-grid devices with EPR-pair ancillas on the border, the augmented
// coupling graph they induce, and fidelity-weighted all-pairs distances.

#ifndef EPRROUTE_DEVICE_HPP
#define EPRROUTE_DEVICE_HPP

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eprroute/circuit.hpp"

namespace eprroute {

enum class Role { Data, Ancilla };

struct Device {
  int side = 0;  // grid is side x side, row-major indices
  std::vector<Role> roles;
  std::vector<std::pair<int, int>> epr_pairs;
  double fidelity_standard = 0.9;
  double fidelity_augmented = 0.8;

  int n_nodes() const { return side * side; }
  int index(int row, int col) const { return row * side + col; }
  int row(int v) const { return v / side; }
  int col(int v) const { return v % side; }
  bool is_data(int v) const { return roles[v] == Role::Data; }

  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    int r = row(v), c = col(v);
    if (r > 0) out.push_back(index(r - 1, c));
    if (c > 0) out.push_back(index(r, c - 1));
    if (c + 1 < side) out.push_back(index(r, c + 1));
    if (r + 1 < side) out.push_back(index(r + 1, c));
    return out;
  }

  std::vector<int> data_nodes() const {
    std::vector<int> out;
    for (int v = 0; v < n_nodes(); ++v)
      if (is_data(v)) out.push_back(v);
    return out;
  }
};

/// Checks the generated-device invariants: ancillas on the border (never at a
/// corner), each in exactly one EPR pair whose members sit at the two ends of
/// the same row or column.
inline void validate(const Device& d) {
  if (d.side < 2) throw Error("device side must be at least 2");
  if (static_cast<int>(d.roles.size()) != d.n_nodes())
    throw Error("roles size does not match grid");
  std::vector<int> pair_count(d.n_nodes(), 0);
  for (auto [a, b] : d.epr_pairs) {
    if (a < 0 || a >= d.n_nodes() || b < 0 || b >= d.n_nodes())
      throw Error("EPR pair member out of range");
    if (d.is_data(a) || d.is_data(b))
      throw Error("EPR pair member is not an ancilla");
    bool same_row_ends = d.row(a) == d.row(b) &&
                         std::min(d.col(a), d.col(b)) == 0 &&
                         std::max(d.col(a), d.col(b)) == d.side - 1;
    bool same_col_ends = d.col(a) == d.col(b) &&
                         std::min(d.row(a), d.row(b)) == 0 &&
                         std::max(d.row(a), d.row(b)) == d.side - 1;
    if (!same_row_ends && !same_col_ends)
      throw Error("EPR pair members must sit at the ends of a row or column");
    ++pair_count[a];
    ++pair_count[b];
  }
  for (int v = 0; v < d.n_nodes(); ++v) {
    if (d.is_data(v)) {
      if (pair_count[v] != 0) throw Error("data node in an EPR pair");
      continue;
    }
    int r = d.row(v), c = d.col(v);
    bool border = r == 0 || c == 0 || r == d.side - 1 || c == d.side - 1;
    bool corner = (r == 0 || r == d.side - 1) && (c == 0 || c == d.side - 1);
    if (!border || corner) throw Error("ancilla off the border or at a corner");
    if (pair_count[v] != 1)
      throw Error("ancilla " + std::to_string(v) +
                  " is in " + std::to_string(pair_count[v]) + " EPR pairs");
  }
}

inline int ancillas_per_border(int side) { return (side - 1) / 2; }

inline int data_count_for_side(int side) {
  return side * side - 4 * ancillas_per_border(side);
}

/// Grid of the given side with ancillas at every odd border offset: top and
/// bottom rows at odd columns (paired vertically), left and right columns at
/// odd rows (paired horizontally).
inline Device build_grid_device_for_side(int side,
                                         double fidelity_standard = 0.9,
                                         double fidelity_augmented = 0.8) {
  if (side < 2) throw Error("device side must be at least 2");
  Device d;
  d.side = side;
  d.fidelity_standard = fidelity_standard;
  d.fidelity_augmented = fidelity_augmented;
  d.roles.assign(d.n_nodes(), Role::Data);
  for (int c = 1; c <= side - 2; c += 2) {
    int top = d.index(0, c), bottom = d.index(side - 1, c);
    d.roles[top] = d.roles[bottom] = Role::Ancilla;
    d.epr_pairs.emplace_back(top, bottom);
  }
  for (int r = 1; r <= side - 2; r += 2) {
    int left = d.index(r, 0), right = d.index(r, side - 1);
    d.roles[left] = d.roles[right] = Role::Ancilla;
    d.epr_pairs.emplace_back(left, right);
  }
  validate(d);
  return d;
}

/// Plain grid with every node usable as data; the standard-compilation
/// baseline.
inline Device build_baseline_device(int side, double fidelity_standard = 0.9) {
  if (side < 2) throw Error("device side must be at least 2");
  Device d;
  d.side = side;
  d.fidelity_standard = fidelity_standard;
  d.roles.assign(d.n_nodes(), Role::Data);
  return d;
}

struct AugEdge {
  int u = 0;
  int v = 0;  // u < v
  EdgeKind kind = EdgeKind::Standard;
  double weight = 0.0;
  std::vector<int> serving_pairs;  // EPR-pair ids; empty for standard edges
};

struct AugmentedGraph {
  int n_nodes = 0;  // full grid index space; ancillas are isolated
  std::vector<int> data_nodes;
  std::vector<AugEdge> edges;
  std::vector<std::vector<int>> incident;  // node -> edge indices

  const AugEdge* find_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (int e : incident[a])
      if (edges[e].u == a && edges[e].v == b) return &edges[e];
    return nullptr;
  }

  bool has_edge(int a, int b) const { return find_edge(a, b) != nullptr; }
};

inline AugmentedGraph augment(const Device& d) {
  AugmentedGraph g;
  g.n_nodes = d.n_nodes();
  g.data_nodes = d.data_nodes();
  const double w_std = 1.0 - d.fidelity_standard;
  const double w_aug = 1.0 - d.fidelity_augmented;
  for (int v = 0; v < d.n_nodes(); ++v) {
    if (!d.is_data(v)) continue;
    for (int u : d.neighbors(v))
      if (u > v && d.is_data(u))
        g.edges.push_back({v, u, EdgeKind::Standard, w_std, {}});
  }
  std::map<std::pair<int, int>, std::vector<int>> aug;
  for (int p = 0; p < static_cast<int>(d.epr_pairs.size()); ++p) {
    auto [a, b] = d.epr_pairs[p];
    for (int u : d.neighbors(a)) {
      if (!d.is_data(u)) continue;
      for (int v : d.neighbors(b)) {
        if (!d.is_data(v) || u == v) continue;
        auto key = std::minmax(u, v);
        auto& pairs = aug[key];
        if (std::find(pairs.begin(), pairs.end(), p) == pairs.end())
          pairs.push_back(p);
      }
    }
  }
  for (auto& [key, pairs] : aug)
    g.edges.push_back({key.first, key.second, EdgeKind::Augmented, w_aug,
                       std::move(pairs)});
  std::sort(g.edges.begin(), g.edges.end(), [](const AugEdge& x, const AugEdge& y) {
    return std::tie(x.u, x.v, x.kind) < std::tie(y.u, y.v, y.kind);
  });
  g.incident.resize(g.n_nodes);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    g.incident[g.edges[e].u].push_back(e);
    g.incident[g.edges[e].v].push_back(e);
  }
  return g;
}

/// Data nodes that arbitrary circuits can safely occupy, sorted ascending.
///
/// Swaps run on standard edges only, so a data node without one is frozen:
/// whatever starts there can never move. The safe set is the largest
/// standard-connected component of swap-mobile nodes, plus the
/// lexicographically smallest maximum set of frozen nodes that are pairwise
/// edge-connected and each reach the mobile component by some edge. Within
/// that set every qubit pair can interact: mobile partners are swapped next
/// to a frozen node's augmented neighbourhood, and frozen-frozen pairs share
/// a direct edge.
inline std::vector<int> routable_nodes(const AugmentedGraph& g) {
  std::vector<bool> mobile(g.n_nodes, false);
  for (const AugEdge& e : g.edges)
    if (e.kind == EdgeKind::Standard) mobile[e.u] = mobile[e.v] = true;

  // Largest mobile component over standard edges (ties: smallest node).
  std::vector<int> comp(g.n_nodes, -1);
  std::vector<int> best_comp;
  int n_comp = 0;
  for (int s : g.data_nodes) {
    if (!mobile[s] || comp[s] >= 0) continue;
    std::vector<int> nodes{s};
    comp[s] = n_comp;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (int e : g.incident[nodes[i]]) {
        if (g.edges[e].kind != EdgeKind::Standard) continue;
        int to = g.edges[e].u == nodes[i] ? g.edges[e].v : g.edges[e].u;
        if (comp[to] < 0) {
          comp[to] = n_comp;
          nodes.push_back(to);
        }
      }
    if (nodes.size() > best_comp.size()) best_comp = std::move(nodes);
    ++n_comp;
  }
  std::sort(best_comp.begin(), best_comp.end());

  // Frozen candidates: no standard edge, but some edge into the component
  // (every data node when there is no mobile component at all).
  std::vector<bool> in_comp(g.n_nodes, false);
  for (int v : best_comp) in_comp[v] = true;
  std::vector<int> frozen;
  for (int v : g.data_nodes) {
    if (mobile[v]) continue;
    bool linked = best_comp.empty();
    for (int e : g.incident[v]) {
      int to = g.edges[e].u == v ? g.edges[e].v : g.edges[e].u;
      if (in_comp[to]) linked = true;
    }
    if (linked) frozen.push_back(v);
  }

  // Lexicographically smallest maximum pairwise-connected subset; candidate
  // counts are tiny (corners, or the whole data set of the 3x3 grid).
  std::vector<int> best_clique;
  const int f = static_cast<int>(frozen.size());
  if (f > 0 && f <= 16) {
    for (unsigned mask = 0; mask < (1u << f); ++mask) {
      std::vector<int> pick;
      for (int i = 0; i < f; ++i)
        if (mask & (1u << i)) pick.push_back(frozen[i]);
      if (pick.size() <= best_clique.size()) continue;
      bool ok = true;
      for (std::size_t i = 0; i < pick.size() && ok; ++i)
        for (std::size_t j = i + 1; j < pick.size() && ok; ++j)
          ok = g.has_edge(pick[i], pick[j]);
      if (ok) best_clique = std::move(pick);
    }
  }

  std::vector<int> out = best_comp;
  out.insert(out.end(), best_clique.begin(), best_clique.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Smallest grid whose routable-node count reaches min_data_qubits. Raw data
/// count is not enough: a circuit touching more nodes than routable_nodes
/// allows can deadlock the swap router on frozen corners.
inline Device build_grid_device(int min_data_qubits,
                                double fidelity_standard = 0.9,
                                double fidelity_augmented = 0.8) {
  if (min_data_qubits < 1) throw Error("min_data_qubits must be >= 1");
  for (int side = 2;; ++side) {
    Device d =
        build_grid_device_for_side(side, fidelity_standard, fidelity_augmented);
    if (static_cast<int>(routable_nodes(augment(d)).size()) >= min_data_qubits)
      return d;
  }
}

struct DistanceMatrix {
  int n = 0;  // full grid index space
  std::vector<double> d;

  double at(int u, int v) const { return d[static_cast<std::size_t>(u) * n + v]; }
  double& at(int u, int v) { return d[static_cast<std::size_t>(u) * n + v]; }
};

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Dijkstra from every data node. Throws on a disconnected data graph,
/// listing the components.
inline DistanceMatrix weighted_distances(const AugmentedGraph& g) {
  DistanceMatrix m;
  m.n = g.n_nodes;
  m.d.assign(static_cast<std::size_t>(m.n) * m.n, kInf);
  for (int s : g.data_nodes) {
    std::vector<double> dist(g.n_nodes, kInf);
    dist[s] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du > dist[u]) continue;
      for (int e : g.incident[u]) {
        const AugEdge& edge = g.edges[e];
        int v = edge.u == u ? edge.v : edge.u;
        double nd = du + edge.weight;
        if (nd < dist[v] - 1e-15) {
          dist[v] = nd;
          pq.push({nd, v});
        }
      }
    }
    for (int v : g.data_nodes) m.at(s, v) = dist[v];
  }
  // Connectivity check on the data nodes.
  if (!g.data_nodes.empty()) {
    int s = g.data_nodes.front();
    std::vector<int> stranded;
    for (int v : g.data_nodes)
      if (m.at(s, v) == kInf) stranded.push_back(v);
    if (!stranded.empty()) {
      std::ostringstream msg;
      msg << "data graph is disconnected; nodes unreachable from "
          << s << ":";
      for (int v : stranded) msg << " " << v;
      throw Error(msg.str());
    }
  }
  return m;
}

inline std::string to_dot(const AugmentedGraph& g, const Device& d) {
  std::ostringstream out;
  out << "graph augmented {\n";
  out << "  node [shape=circle];\n";
  for (int v : g.data_nodes)
    out << "  q" << v << " [pos=\"" << d.col(v) << "," << d.side - 1 - d.row(v)
        << "!\"];\n";
  for (const AugEdge& e : g.edges) {
    out << "  q" << e.u << " -- q" << e.v;
    if (e.kind == EdgeKind::Augmented) {
      out << " [color=green, label=\"";
      for (std::size_t i = 0; i < e.serving_pairs.size(); ++i)
        out << (i ? "," : "") << "p" << e.serving_pairs[i];
      out << "\"]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace eprroute

#endif  // EPRROUTE_DEVICE_HPP
