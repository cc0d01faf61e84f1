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
// End-to-end compilation pipelines and the JSON artifact formats shared by
// the CLI and the test suites. All artifact strings are deterministic.

#ifndef EPRROUTE_PIPELINE_HPP
#define EPRROUTE_PIPELINE_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "eprroute/dag.hpp"
#include "eprroute/device.hpp"
#include "eprroute/generators.hpp"
#include "eprroute/lowering.hpp"
#include "eprroute/qasm.hpp"
#include "eprroute/router.hpp"
#include "eprroute/schedule.hpp"
#include "eprroute/simulator.hpp"

namespace eprroute {

using json = nlohmann::json;

struct CompileOptions {
  RouterParams router;
  double fidelity_standard = 0.9;
  double fidelity_augmented = 0.8;
  bool physical = false;
  DepthMode depth_mode = DepthMode::AllGates;
  std::uint64_t seed = 20240901;
  std::optional<Device> device_override;
};

inline json config_json(const CompileOptions& o) {
  json j;
  j["lookahead_size"] = o.router.lookahead_size;
  j["lookahead_weight"] = o.router.lookahead_weight;
  j["decay"] = o.router.decay;
  j["fidelity_standard"] = o.fidelity_standard;
  j["fidelity_augmented"] = o.fidelity_augmented;
  j["physical"] = o.physical;
  j["depth_mode"] = o.depth_mode == DepthMode::AllGates ? "all" : "2q";
  j["seed"] = o.seed;
  return j;
}

inline json device_to_json(const Device& d) {
  json j;
  j["side"] = d.side;
  std::vector<std::string> roles;
  for (Role r : d.roles) roles.push_back(r == Role::Data ? "data" : "ancilla");
  j["roles"] = roles;
  json pairs = json::array();
  for (auto [a, b] : d.epr_pairs) pairs.push_back({a, b});
  j["epr_pairs"] = pairs;
  j["fidelity_standard"] = d.fidelity_standard;
  j["fidelity_augmented"] = d.fidelity_augmented;
  return j;
}

inline Device device_from_json(const json& j) {
  Device d;
  d.side = j.at("side").get<int>();
  for (const auto& r : j.at("roles"))
    d.roles.push_back(r.get<std::string>() == "data" ? Role::Data
                                                     : Role::Ancilla);
  for (const auto& p : j.at("epr_pairs"))
    d.epr_pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  d.fidelity_standard = j.at("fidelity_standard").get<double>();
  d.fidelity_augmented = j.at("fidelity_augmented").get<double>();
  if (static_cast<int>(d.roles.size()) != d.n_nodes())
    throw Error("device JSON: roles size does not match side");
  return d;
}

inline json layout_to_json(const Layout& l) {
  json j;
  j["v2p"] = l.v2p;
  j["p2v"] = l.p2v;
  return j;
}

inline Layout layout_from_json(const json& j) {
  Layout l;
  l.v2p = j.at("v2p").get<std::vector<int>>();
  l.p2v = j.at("p2v").get<std::vector<int>>();
  return l;
}

inline json blocks_to_json(const std::vector<RemoteBlock>& blocks) {
  json arr = json::array();
  for (const RemoteBlock& b : blocks) {
    json j;
    j["block_id"] = b.block_id;
    j["control"] = b.control;
    j["target"] = b.target;
    j["pair_id"] = b.pair_id;
    j["epr_pair"] = {b.epr_pair.first, b.epr_pair.second};
    j["position"] = b.position;
    j["clbits"] = {b.clbit_a, b.clbit_b};
    arr.push_back(j);
  }
  return arr;
}

struct RemoteCompilation {
  Device device;
  AugmentedGraph graph;
  DistanceMatrix dist;
  RoutedCircuit routed;
  LowerResult logical;   // no EPR preparation; the reporting view
  LowerResult physical;  // with per-block pair preparation; the runnable view
  Schedule sched;        // contention-aware schedule of the logical circuit
};

struct StandardCompilation {
  Device device;
  AugmentedGraph graph;
  DistanceMatrix dist;
  RoutedCircuit routed;
};

inline RemoteCompilation compile_remote(const Circuit& circuit,
                                        const CompileOptions& opts = {}) {
  RemoteCompilation r;
  r.device = opts.device_override
                 ? *opts.device_override
                 : build_grid_device(circuit.n_qubits, opts.fidelity_standard,
                                     opts.fidelity_augmented);
  r.graph = augment(r.device);
  r.dist = weighted_distances(r.graph);
  Layout layout = initial_layout(circuit, r.graph, r.dist);
  r.routed = route(circuit, r.graph, r.dist, layout, opts.router);
  r.logical = lower(r.routed, r.device, r.graph, /*include_prep=*/false);
  r.physical = lower(r.routed, r.device, r.graph, /*include_prep=*/true);
  r.sched = schedule(r.logical.circuit, r.logical.blocks);
  return r;
}

/// The baseline: same grid side, every node a data qubit, standard edges
/// only.
inline StandardCompilation compile_standard(const Circuit& circuit, int side,
                                            const CompileOptions& opts = {}) {
  StandardCompilation r;
  r.device = build_baseline_device(side, opts.fidelity_standard);
  r.graph = augment(r.device);
  r.dist = weighted_distances(r.graph);
  Layout layout = initial_layout(circuit, r.graph, r.dist);
  r.routed = route(circuit, r.graph, r.dist, layout, opts.router);
  return r;
}

inline ComparisonReport run_benchmark(const Circuit& circuit,
                                      const std::string& family,
                                      const CompileOptions& opts = {}) {
  RemoteCompilation remote = compile_remote(circuit, opts);
  StandardCompilation standard =
      compile_standard(circuit, remote.device.side, opts);
  return compare(circuit.name, family, circuit, remote.routed.circuit,
                 remote.logical.circuit, remote.sched,
                 standard.routed.circuit, remote.device, opts.depth_mode);
}

inline json metrics_json(const ComparisonReport& r, const CompileOptions& o) {
  json j;
  j["config"] = config_json(o);
  j["name"] = r.name;
  j["family"] = r.family;
  j["n_qubits"] = r.n_qubits;
  j["side"] = r.side;
  j["epr_pairs"] = r.epr_pairs;
  j["original"] = {{"cx", r.original_cx}, {"depth", r.original_depth}};
  j["remote"] = {{"standard_cx", r.remote_standard_cx},
                 {"remote_cx", r.remote_remote_cx},
                 {"expanded_cx", r.remote_expanded_cx},
                 {"depth", r.remote_depth},
                 {"expanded_depth", r.remote_expanded_depth},
                 {"contended_depth", r.remote_contended_depth}};
  j["standard"] = {{"cx", r.standard_cx}, {"depth", r.standard_depth}};
  j["diff"] = {{"cx", r.diff_cx}, {"depth", r.diff_depth}};
  return j;
}

/// Parses "family:n" generator specs (qft:5, dj:8).
inline Circuit generate_circuit(const std::string& spec) {
  auto pos = spec.find(':');
  if (pos == std::string::npos)
    throw Error("generator spec must be family:n, got '" + spec + "'");
  const std::string family = spec.substr(0, pos);
  int n = 0;
  try {
    n = std::stoi(spec.substr(pos + 1));
  } catch (const std::exception&) {
    throw Error("bad generator size in '" + spec + "'");
  }
  if (family == "qft") return qft(n);
  if (family == "dj") return dj(n);
  throw Error("unknown circuit family '" + family + "'");
}

}  // namespace eprroute

#endif  // EPRROUTE_PIPELINE_HPP
