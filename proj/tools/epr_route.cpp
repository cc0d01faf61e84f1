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
// epr-route: compile, benchmark, and verify circuits on EPR-augmented grids.
//
// Exit codes: 0 success/pass, 1 verification failure, 2 usage error,
// 3 pipeline error, 4 circuit too large to verify.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eprroute/pipeline.hpp"

namespace fs = std::filesystem;
using namespace eprroute;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPipeline = 3;
constexpr int kExitNotVerifiable = 4;

struct CliConfig {
  std::vector<std::string> inputs;
  std::vector<std::string> gens;
  std::string mode = "both";
  CompileOptions opts;
  std::string out_dir = ".";
  std::string device_json_path;
  int verify_trials = 2;
};

void add_common_flags(CLI::App* cmd, CliConfig& cfg, bool with_mode = true) {
  cmd->add_option("--input", cfg.inputs, "OPENQASM 2.0 input file(s)");
  cmd->add_option("--gen", cfg.gens, "generator spec(s), e.g. qft:5 or dj:8");
  if (with_mode)
    cmd->add_option("--mode", cfg.mode, "remote|standard|both")
        ->check(CLI::IsMember({"remote", "standard", "both"}));
  cmd->add_option("--fidelity-standard", cfg.opts.fidelity_standard,
                  "standard two-qubit gate fidelity");
  cmd->add_option("--fidelity-augmented", cfg.opts.fidelity_augmented,
                  "remote two-qubit gate fidelity");
  cmd->add_option("--lookahead", cfg.opts.router.lookahead_size,
                  "router lookahead window size");
  cmd->add_option("--lookahead-weight", cfg.opts.router.lookahead_weight,
                  "router lookahead weight");
  cmd->add_option("--decay", cfg.opts.router.decay,
                  "router decay increment per swap");
  cmd->add_flag("--physical", cfg.opts.physical,
                "emit EPR preparation gates in compiled output");
  cmd->add_option("--depth-mode", [&cfg](const std::vector<std::string>& v) {
        cfg.opts.depth_mode =
            v[0] == "2q" ? DepthMode::TwoQubitOnly : DepthMode::AllGates;
        return v[0] == "2q" || v[0] == "all";
      },
      "all|2q: gates counted toward depth")
      ->expected(1);
  cmd->add_option("--seed", cfg.opts.seed, "verification seed");
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_option("--device-json", cfg.device_json_path,
                  "device description overriding the generated grid");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& data) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << data;
}

std::string sanitize(const std::string& name) {
  std::string s;
  for (char c : name)
    s += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')
             ? c
             : '_';
  return s.empty() ? "circuit" : s;
}

struct NamedCircuit {
  Circuit circuit;
  std::string family;  // empty for file inputs
};

std::vector<NamedCircuit> load_inputs(const CliConfig& cfg) {
  std::vector<NamedCircuit> out;
  for (const std::string& path : cfg.inputs) {
    Circuit c = parse_qasm(read_file(path));
    if (c.name.empty()) c.name = fs::path(path).stem().string();
    out.push_back({std::move(c), ""});
  }
  for (const std::string& spec : cfg.gens) {
    Circuit c = generate_circuit(spec);
    out.push_back({std::move(c), spec.substr(0, spec.find(':'))});
  }
  if (out.empty())
    throw CLI::ValidationError("--input or --gen", "no input circuits given");
  return out;
}

void apply_device_override(CliConfig& cfg) {
  if (cfg.device_json_path.empty()) return;
  Device d = device_from_json(json::parse(read_file(cfg.device_json_path)));
  validate(d);
  cfg.opts.device_override = d;
}

std::string config_comment(const CliConfig& cfg) {
  return "config: " + config_json(cfg.opts).dump();
}

json with_config(json j, const CliConfig& cfg) {
  j["config"] = config_json(cfg.opts);
  return j;
}

int cmd_compile(CliConfig& cfg) {
  apply_device_override(cfg);
  for (const NamedCircuit& nc : load_inputs(cfg)) {
    const std::string base = sanitize(nc.circuit.name);
    const fs::path dir = cfg.out_dir;
    int side = 0;
    if (cfg.mode != "standard") {
      RemoteCompilation r = compile_remote(nc.circuit, cfg.opts);
      side = r.device.side;
      const LowerResult& view = cfg.opts.physical ? r.physical : r.logical;
      write_file(dir / (base + ".remote.qasm"),
                 emit_qasm(view.circuit, {config_comment(cfg)}));
      json layout;
      layout["initial"] = layout_to_json(r.routed.initial_layout);
      layout["final"] = layout_to_json(r.routed.final_layout);
      write_file(dir / (base + ".remote.layout.json"),
                 with_config(layout, cfg).dump(2) + "\n");
      json blocks;
      blocks["blocks"] = blocks_to_json(view.blocks);
      write_file(dir / (base + ".remote.blocks.json"),
                 with_config(blocks, cfg).dump(2) + "\n");
      write_file(dir / (base + ".device.json"),
                 with_config(device_to_json(r.device), cfg).dump(2) + "\n");
      GateCounts gc = gate_counts(r.logical.circuit);
      std::cout << base << ": remote blocks=" << view.blocks.size()
                << " remote_cx=" << gc.remote_cx << " side=" << side << "\n";
    }
    if (cfg.mode != "remote") {
      if (side == 0) {
        Device probe = cfg.opts.device_override
                           ? *cfg.opts.device_override
                           : build_grid_device(nc.circuit.n_qubits);
        side = probe.side;
      }
      StandardCompilation s = compile_standard(nc.circuit, side, cfg.opts);
      write_file(dir / (base + ".standard.qasm"),
                 emit_qasm(s.routed.circuit, {config_comment(cfg)}));
      json layout;
      layout["initial"] = layout_to_json(s.routed.initial_layout);
      layout["final"] = layout_to_json(s.routed.final_layout);
      write_file(dir / (base + ".standard.layout.json"),
                 with_config(layout, cfg).dump(2) + "\n");
    }
    if (cfg.mode == "both") {
      ComparisonReport rep = run_benchmark(
          nc.circuit, nc.family.empty() ? "file" : nc.family, cfg.opts);
      write_file(dir / (base + ".metrics.json"),
                 metrics_json(rep, cfg.opts).dump(2) + "\n");
      std::cout << base << ": diff_cx=" << rep.diff_cx
                << " diff_depth=" << rep.diff_depth << "\n";
    }
  }
  return kExitPass;
}

int cmd_bench(CliConfig& cfg) {
  apply_device_override(cfg);
  std::vector<ComparisonReport> rows;
  for (const std::string& path : cfg.inputs) {
    ComparisonReport r;
    r.name = sanitize(fs::path(path).stem().string());
    r.family = "file";
    try {
      Circuit c = parse_qasm(read_file(path));
      if (c.name.empty()) c.name = r.name;
      r = run_benchmark(c, "file", cfg.opts);
    } catch (const std::exception& e) {
      r.failed = true;
      r.error = e.what();
    }
    rows.push_back(std::move(r));
  }
  for (const std::string& spec : cfg.gens) {
    ComparisonReport r;
    r.name = sanitize(spec);
    r.family = spec.substr(0, spec.find(':'));
    try {
      Circuit c = generate_circuit(spec);
      r = run_benchmark(c, r.family, cfg.opts);
    } catch (const std::exception& e) {
      r.failed = true;
      r.error = e.what();
    }
    rows.push_back(std::move(r));
  }

  std::string report =
      "# " + config_comment(cfg) + "\n" + report_csv_header() + "\n";
  std::string diffs =
      "# " + config_comment(cfg) + "\n" + difference_csv_header() + "\n";
  int cx_wins = 0, depth_wins = 0, failed = 0;
  for (const ComparisonReport& r : rows) {
    report += report_csv_row(r) + "\n";
    diffs += difference_csv_row(r) + "\n";
    if (r.failed) {
      ++failed;
      continue;
    }
    if (r.diff_cx > 0) ++cx_wins;
    if (r.diff_depth > 0) ++depth_wins;
  }
  const fs::path dir = cfg.out_dir;
  write_file(dir / "report.csv", report);
  write_file(dir / "difference.csv", diffs);
  std::cout << rows.size() << " benchmark(s): " << cx_wins
            << " with positive cx difference, " << depth_wins
            << " with positive depth difference, " << failed << " failed\n";
  return kExitPass;
}

int cmd_verify(CliConfig& cfg) {
  apply_device_override(cfg);
  CompileOptions opts = cfg.opts;
  opts.physical = true;  // ancillas then start in |0>, no EPR assumption
  bool all_pass = true;
  for (const NamedCircuit& nc : load_inputs(cfg)) {
    if (nc.circuit.n_qubits > 16) {
      std::cout << nc.circuit.name
                << ": not verifiable at desk scale (more than 16 qubits)\n";
      return kExitNotVerifiable;
    }
    try {
      if (cfg.mode != "standard") {
        RemoteCompilation r = compile_remote(nc.circuit, opts);
        auto res = check_equivalence(nc.circuit, r.physical.circuit,
                                     r.routed.initial_layout,
                                     r.routed.final_layout, cfg.verify_trials,
                                     opts.seed);
        std::cout << nc.circuit.name << " remote: "
                  << (res.pass ? "pass" : "FAIL")
                  << " min_fidelity=" << res.min_fidelity << "\n";
        all_pass = all_pass && res.pass;
      }
      if (cfg.mode != "remote") {
        Device probe = opts.device_override
                           ? *opts.device_override
                           : build_grid_device(nc.circuit.n_qubits);
        StandardCompilation s =
            compile_standard(nc.circuit, probe.side, opts);
        auto res = check_equivalence(nc.circuit, s.routed.circuit,
                                     s.routed.initial_layout,
                                     s.routed.final_layout, cfg.verify_trials,
                                     opts.seed);
        std::cout << nc.circuit.name << " standard: "
                  << (res.pass ? "pass" : "FAIL")
                  << " min_fidelity=" << res.min_fidelity << "\n";
        all_pass = all_pass && res.pass;
      }
    } catch (const Error& e) {
      if (std::string(e.what()).find("16") != std::string::npos) {
        std::cout << nc.circuit.name
                  << ": not verifiable at desk scale (" << e.what() << ")\n";
        return kExitNotVerifiable;
      }
      throw;
    }
  }
  return all_pass ? kExitPass : kExitVerifyFail;
}

int cmd_gen(CliConfig& cfg) {
  if (cfg.gens.empty())
    throw CLI::ValidationError("--gen", "no generator specs given");
  for (const std::string& spec : cfg.gens) {
    Circuit c = generate_circuit(spec);
    write_file(fs::path(cfg.out_dir) / (sanitize(c.name) + ".qasm"),
               emit_qasm(c, {config_comment(cfg)}));
    std::cout << c.name << ": " << c.gates.size() << " gates\n";
  }
  return kExitPass;
}

int cmd_device(CliConfig& cfg) {
  apply_device_override(cfg);
  Device d;
  if (cfg.opts.device_override) {
    d = *cfg.opts.device_override;
  } else {
    auto inputs = load_inputs(cfg);
    d = build_grid_device(inputs.front().circuit.n_qubits,
                          cfg.opts.fidelity_standard,
                          cfg.opts.fidelity_augmented);
  }
  AugmentedGraph g = augment(d);
  const fs::path dir = cfg.out_dir;
  write_file(dir / "device.json",
             with_config(device_to_json(d), cfg).dump(2) + "\n");
  write_file(dir / "device.dot", to_dot(g, d));
  std::cout << "side=" << d.side << " data=" << g.data_nodes.size()
            << " epr_pairs=" << d.epr_pairs.size()
            << " edges=" << g.edges.size() << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Route and benchmark circuits on EPR-augmented grid devices"};
  app.require_subcommand(1);
  CliConfig cfg;

  CLI::App* compile = app.add_subcommand(
      "compile", "compile circuits and write QASM/JSON artifacts");
  add_common_flags(compile, cfg);
  CLI::App* bench = app.add_subcommand(
      "bench", "run remote-vs-standard comparisons, write CSV reports");
  add_common_flags(bench, cfg, /*with_mode=*/false);
  CLI::App* verify = app.add_subcommand(
      "verify", "check compiled output equivalence by simulation");
  add_common_flags(verify, cfg);
  verify->add_option("--trials", cfg.verify_trials,
                     "random input states per circuit");
  CLI::App* gen =
      app.add_subcommand("gen", "emit generated benchmark circuits as QASM");
  add_common_flags(gen, cfg, /*with_mode=*/false);
  CLI::App* device = app.add_subcommand(
      "device", "export the device description and DOT graph");
  add_common_flags(device, cfg, /*with_mode=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (compile->parsed()) return cmd_compile(cfg);
    if (bench->parsed()) return cmd_bench(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (gen->parsed()) return cmd_gen(cfg);
    if (device->parsed()) return cmd_device(cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipeline;
  }
  return kExitUsage;
}
