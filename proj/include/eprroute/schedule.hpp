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
// ASAP list scheduling with each EPR pair as an exclusive resource: a pair
// serves one remote block at a time, so concurrent blocks that share a pair
// serialize. Also assembles the per-benchmark comparison report.

#ifndef EPRROUTE_SCHEDULE_HPP
#define EPRROUTE_SCHEDULE_HPP

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eprroute/dag.hpp"
#include "eprroute/lowering.hpp"

namespace eprroute {

struct Schedule {
  std::vector<long> start;  // 1-based start layer per gate
  long makespan = 0;
  // pair id -> busy [first, last] layer intervals
  std::map<int, std::vector<std::pair<long, long>>> pair_busy;
};

/// List-schedules gates in program order (a topological order); remote-block
/// gates additionally hold the block's EPR pair from the block's first layer
/// through its last. With constrain_pairs=false this reduces to the plain
/// ASAP layering, which is the cross-check against depth().
inline Schedule schedule(const Circuit& lowered,
                         const std::vector<RemoteBlock>& blocks,
                         bool constrain_pairs = true) {
  Schedule sched;
  sched.start.assign(lowered.gates.size(), 0);
  std::vector<long> avail_q(lowered.n_qubits, 1);
  std::vector<long> avail_c(lowered.n_clbits, 1);
  std::map<int, int> block_pair;  // block_id -> pair_id
  for (const RemoteBlock& b : blocks) block_pair[b.block_id] = b.pair_id;
  std::map<int, long> pair_avail;           // pair_id -> next free layer
  std::map<int, long> block_start_layer;    // block_id -> first layer
  std::map<int, long> block_last_layer;     // block_id -> last layer so far

  for (std::size_t i = 0; i < lowered.gates.size(); ++i) {
    const Gate& g = lowered.gates[i];
    const long dur = g.kind == GateKind::Barrier ? 0 : 1;
    long s = 1;
    for (int q : g.qubits) s = std::max(s, avail_q[q]);
    for (int cb : g.clbits) s = std::max(s, avail_c[cb]);
    if (g.condition) s = std::max(s, avail_c[g.condition->clbit]);

    const bool in_block = g.block_id.has_value() &&
                          (g.provenance == Provenance::RemoteBlock ||
                           g.provenance == Provenance::EprPrep) &&
                          block_pair.count(*g.block_id);
    int pair = in_block ? block_pair.at(*g.block_id) : -1;
    if (in_block && constrain_pairs) {
      auto bs = block_start_layer.find(*g.block_id);
      if (bs == block_start_layer.end()) {
        auto pa = pair_avail.find(pair);
        if (pa != pair_avail.end()) s = std::max(s, pa->second);
        block_start_layer[*g.block_id] = s;
      } else {
        s = std::max(s, bs->second);
      }
    }
    sched.start[i] = s;
    long finish = s + dur;
    for (int q : g.qubits) avail_q[q] = finish;
    for (int cb : g.clbits) avail_c[cb] = finish;
    if (g.condition)
      avail_c[g.condition->clbit] =
          std::max(avail_c[g.condition->clbit], finish);
    sched.makespan = std::max(sched.makespan, finish - 1);
    if (in_block && constrain_pairs) {
      long& last = block_last_layer[*g.block_id];
      last = std::max(last, finish - 1);
      pair_avail[pair] = std::max(pair_avail[pair], last + 1);
    }
  }
  if (constrain_pairs) {
    for (const RemoteBlock& b : blocks) {
      auto s = block_start_layer.find(b.block_id);
      auto e = block_last_layer.find(b.block_id);
      if (s != block_start_layer.end() && e != block_last_layer.end())
        sched.pair_busy[b.pair_id].emplace_back(s->second, e->second);
    }
    for (auto& [pair, intervals] : sched.pair_busy)
      std::sort(intervals.begin(), intervals.end());
  }
  return sched;
}

struct ComparisonReport {
  std::string name;
  std::string family;
  int n_qubits = 0;
  int side = 0;
  int epr_pairs = 0;
  long original_cx = 0;
  long original_depth = 0;
  long remote_standard_cx = 0;
  long remote_remote_cx = 0;
  long remote_expanded_cx = 0;
  // Depth of the compiler output, where a remote CX across an augmented edge
  // counts as one gate. This is the view the comparison uses, since the
  // baseline column measures the same kind of circuit.
  long remote_depth = 0;
  // Depth after each remote CX is expanded into its measurement-based block.
  long remote_expanded_depth = 0;
  long remote_contended_depth = 0;
  long standard_cx = 0;
  long standard_depth = 0;
  long diff_cx = 0;     // standard - remote (positive: remote wins)
  long diff_depth = 0;  // standard - remote
  bool failed = false;
  std::string error;
};

/// Builds the report row for one benchmark. The sign convention: positive
/// differences mean the remote compilation achieved the lower value. The
/// depth difference compares the two compiler outputs on equal terms (a
/// remote CX counts as one gate, like any other CX in either column); the
/// expanded and contended depths quantify what the blocks cost physically.
inline ComparisonReport compare(const std::string& name,
                                const std::string& family,
                                const Circuit& original,
                                const Circuit& remote_routed,
                                const Circuit& remote_lowered,
                                const Schedule& remote_schedule,
                                const Circuit& standard_routed,
                                const Device& device,
                                DepthMode mode = DepthMode::AllGates) {
  if (original.name != remote_routed.name ||
      original.name != remote_lowered.name ||
      original.name != standard_routed.name)
    throw Error("compare: circuits belong to different benchmarks");
  ComparisonReport r;
  r.name = name;
  r.family = family;
  r.n_qubits = original.n_qubits;
  r.side = device.side;
  r.epr_pairs = static_cast<int>(device.epr_pairs.size());
  GateCounts oc = gate_counts(original);
  r.original_cx = oc.standard_cx;
  r.original_depth = depth(original, mode);
  GateCounts rc = gate_counts(remote_lowered);
  r.remote_standard_cx = rc.standard_cx;
  r.remote_remote_cx = rc.remote_cx;
  r.remote_expanded_cx = expanded_cx(rc);
  r.remote_depth = depth(remote_routed, mode);
  r.remote_expanded_depth = depth(remote_lowered, mode);
  r.remote_contended_depth = remote_schedule.makespan;
  GateCounts sc = gate_counts(standard_routed);
  r.standard_cx = sc.standard_cx;
  r.standard_depth = depth(standard_routed, mode);
  r.diff_cx = r.standard_cx - r.remote_standard_cx;
  r.diff_depth = r.standard_depth - r.remote_depth;
  return r;
}

inline std::string report_csv_header() {
  return "name,family,n_qubits,side,epr_pairs,original_cx,original_depth,"
         "remote_standard_cx,remote_remote_cx,remote_expanded_cx,remote_depth,"
         "remote_expanded_depth,remote_contended_depth,standard_cx,"
         "standard_depth,diff_cx,diff_depth,status,error";
}

inline std::string report_csv_row(const ComparisonReport& r) {
  std::ostringstream out;
  std::string err = r.error;
  std::replace(err.begin(), err.end(), ',', ';');
  std::replace(err.begin(), err.end(), '\n', ' ');
  out << r.name << "," << r.family << "," << r.n_qubits << "," << r.side << ","
      << r.epr_pairs << "," << r.original_cx << "," << r.original_depth << ","
      << r.remote_standard_cx << "," << r.remote_remote_cx << ","
      << r.remote_expanded_cx << "," << r.remote_depth << ","
      << r.remote_expanded_depth << ","
      << r.remote_contended_depth << "," << r.standard_cx << ","
      << r.standard_depth << "," << r.diff_cx << "," << r.diff_depth << ","
      << (r.failed ? "failed" : "ok") << "," << err;
  return out.str();
}

inline std::string difference_csv_header() {
  return "n_qubits,cx_difference,depth_difference,family";
}

inline std::string difference_csv_row(const ComparisonReport& r) {
  std::ostringstream out;
  out << r.n_qubits << "," << r.diff_cx << "," << r.diff_depth << ","
      << r.family;
  return out.str();
}

}  // namespace eprroute

#endif  // EPRROUTE_SCHEDULE_HPP
