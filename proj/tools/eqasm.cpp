// Copyright 2026 The eQASM Toolchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// eqasm: assemble, disassemble, simulate and explore instantiations.
//
// Exit codes: 0 success, 1 diagnostics or a failed run, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "eqasm/assembler.hpp"
#include "eqasm/dse.hpp"
#include "eqasm/simulator.hpp"
#include "eqasm/version.hpp"

namespace {

using namespace eqasm;

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kUsage = 2;

/// Raised for any failure reported as a diagnostic (exit code 1).
struct Failure {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{path + ": cannot open file"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << data)) throw Failure{path + ": cannot write file"};
}

std::string hex32(uint32_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%08x", v);
  return buf;
}

InstantiationConfig config_from(const std::string& path) {
  if (path.empty()) return InstantiationConfig::qumav2_default();
  try {
    return load_config(path);
  } catch (const ConfigLoadError& e) {
    throw Failure{path + ": " + e.what()};
  }
}

void report(const std::vector<Diagnostic>& diagnostics, const std::string& file) {
  for (const auto& d : diagnostics) std::cerr << format_diagnostic(d, file) << "\n";
}

/// Binary images are checked against the config; anything else is assembled.
std::vector<Instruction> load_program(const std::string& path, const InstantiationConfig& config) {
  const std::string data = read_file(path);
  if (data.rfind("EQSM", 0) == 0) {
    const std::vector<uint8_t> bytes(data.begin(), data.end());
    const BinaryImage image = deserialize_image(bytes);
    check_image_config(image, config);
    return decode(image.words, config).instructions();
  }
  const Assembled a = assemble(data, config);
  report(a.warnings, path);
  return decode(a.words, config).instructions();
}

// ---------------------------------------------------------------------------

struct ValidateArgs {
  std::string config;
  std::vector<std::string> programs;
};

int cmd_validate(const ValidateArgs& args) {
  const InstantiationConfig config = config_from(args.config);
  const auto errors = validate_config(config);
  for (const auto& e : errors) {
    std::cerr << (args.config.empty() ? "<default>" : args.config) << ": error: " << e.message << " ["
              << to_string(e.kind) << "]\n";
  }
  if (!errors.empty()) return kDiagnostics;
  std::cout << "config " << config.name << " ok (hash " << hex32(config_hash(config)) << ")\n";
  int status = kOk;
  for (const auto& path : args.programs) {
    try {
      const Assembled a = assemble(read_file(path), config);
      report(a.warnings, path);
      std::cout << path << ": ok (" << a.words.size() << " words)\n";
    } catch (const AsmError& e) {
      report(e.diagnostics(), path);
      status = kDiagnostics;
    }
  }
  return status;
}

struct AsmArgs {
  std::string input, config, output;
  bool listing = false;
};

int cmd_asm(const AsmArgs& args) {
  const InstantiationConfig config = config_from(args.config);
  const Assembled a = assemble(read_file(args.input), config);
  report(a.warnings, args.input);
  write_image(args.output, BinaryImage{config_hash(config), a.words});
  if (args.listing) std::cout << format_program(resolve_branches(a.program));
  return kOk;
}

struct DisasmArgs {
  std::string input, config, output = "-";
};

int cmd_disasm(const DisasmArgs& args) {
  const InstantiationConfig config = config_from(args.config);
  const BinaryImage image = read_image(args.input);
  check_image_config(image, config);
  write_file(args.output, format_program(decode(image.words, config)));
  return kOk;
}

struct RunArgs {
  std::string input, config, script, trace, backend = "statevector";
  uint64_t seed = 0;
  uint64_t max_cycles = SimOptions{}.max_cycles;
  int64_t start_offset = SimOptions{}.start_offset;
  bool dump_state = false;
};

int cmd_run(const RunArgs& args) {
  const InstantiationConfig config = config_from(args.config);
  const auto program = load_program(args.input, config);
  SimOptions options;
  options.max_cycles = args.max_cycles;
  options.start_offset = args.start_offset;
  if (!args.script.empty()) {
    try {
      options.script = ResultScript::parse(read_file(args.script));
    } catch (const std::invalid_argument& e) {
      throw Failure{args.script + ": " + e.what()};
    }
  }
  std::unique_ptr<QuantumBackend> backend;
  if (args.backend == "mock") {
    backend = std::make_unique<MockBackend>();
  } else {
    backend = std::make_unique<StateVectorBackend>(args.seed);
  }

  Simulator sim(config, program, *backend, options);
  const SimResult result = sim.run();
  if (!args.trace.empty()) {
    std::ostringstream os;
    write_trace(os, result.trace);
    write_file(args.trace, os.str());
  }

  std::cout << "halt: " << to_string(result.reason) << "\n";
  std::cout << "cycles: " << result.cycles << "\n";
  for (const auto& m : result.measurements) {
    std::cout << "measure q" << m.qubit << " t=" << m.timestamp << " result=" << m.result << "\n";
  }
  const ArchState& state = sim.state();
  for (std::size_t r = 0; r < state.gpr.size(); ++r) {
    if (state.gpr[r] != 0) std::cout << "R" << r << " = " << static_cast<int32_t>(state.gpr[r]) << "\n";
  }
  if (args.dump_state) {
    if (const QuantumState* s = backend->state()) {
      std::cout << "state:\n";
      s->dump(std::cout);
    }
  }
  if (result.error) {
    std::cerr << args.input << ": error: " << to_string(result.error->kind) << ": " << result.error->message
              << " (pc " << result.error->pc << ")\n";
  }
  return result.reason == HaltReason::Completed ? kOk : kDiagnostics;
}

struct DseArgs {
  std::vector<std::string> benchmarks = {"rb", "parallel", "sequential"};
  std::string sweep = "default", output = "-", accounting = "uncounted";
  uint64_t seed = 0;
};

int cmd_dse(const DseArgs& args) {
  std::vector<ScheduledCircuit> circuits;
  for (const auto& name : args.benchmarks) {
    circuits.push_back(generate_benchmark(parse_benchmark_kind(name), {}, args.seed));
  }
  CountOptions options;
  options.accounting = args.accounting == "lru" ? SetupAccounting::Lru : SetupAccounting::Uncounted;
  std::ostringstream os;
  write_sweep_csv(os, sweep(default_sweep_configs(), circuits, options));
  write_file(args.output, os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eQASM toolchain: assembler, simulator and design-space exploration", "eqasm"};
  app.set_version_flag("--version", std::string("eqasm ") + std::string(kVersion) + " (default config hash " +
                                        hex32(config_hash(InstantiationConfig::qumav2_default())) + ")");
  app.require_subcommand(1);

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Check a configuration and, optionally, assembly programs");
  validate->add_option("--config", validate_args.config, "Instantiation config (JSON); built-in default if omitted")
      ->check(CLI::ExistingFile);
  validate->add_option("programs", validate_args.programs, "Assembly files to check")->check(CLI::ExistingFile);

  AsmArgs asm_args;
  auto* asm_cmd = app.add_subcommand("asm", "Assemble a .qisa file into a binary image");
  asm_cmd->add_option("input", asm_args.input, "Assembly source")->required()->check(CLI::ExistingFile);
  asm_cmd->add_option("--config", asm_args.config, "Instantiation config (JSON)")->check(CLI::ExistingFile);
  asm_cmd->add_option("-o,--output", asm_args.output, "Output binary image")->required();
  asm_cmd->add_flag("--listing", asm_args.listing, "Print the legalized, split program");

  DisasmArgs disasm_args;
  auto* disasm = app.add_subcommand("disasm", "Disassemble a binary image");
  disasm->add_option("input", disasm_args.input, "Binary image")->required()->check(CLI::ExistingFile);
  disasm->add_option("--config", disasm_args.config, "Instantiation config (JSON)")->check(CLI::ExistingFile);
  disasm->add_option("-o,--output", disasm_args.output, "Output file, '-' for stdout");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Simulate a binary image or assembly source");
  run->add_option("input", run_args.input, "Binary image or assembly source")->required()->check(CLI::ExistingFile);
  run->add_option("--config", run_args.config, "Instantiation config (JSON)")->check(CLI::ExistingFile);
  run->add_option("--seed", run_args.seed, "Measurement RNG seed")->capture_default_str();
  run->add_option("--script", run_args.script, "Scripted measurement results")->check(CLI::ExistingFile);
  run->add_option("--max-cycles", run_args.max_cycles, "Cycle limit")->capture_default_str();
  run->add_option("--trace", run_args.trace, "Write the event trace here, '-' for stdout");
  run->add_option("--start-offset", run_args.start_offset, "Cycles between the first reservation and timeline 0")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  run->add_option("--backend", run_args.backend, "Quantum backend")
      ->capture_default_str()
      ->check(CLI::IsMember({"statevector", "mock"}));
  run->add_flag("--dump-state", run_args.dump_state, "Print final amplitudes as 'index real imag'");

  DseArgs dse_args;
  auto* dse = app.add_subcommand("dse", "Instruction counts over the configuration sweep");
  dse->add_option("--benchmark", dse_args.benchmarks, "rb, parallel and/or sequential")
      ->capture_default_str()
      ->check(CLI::IsMember({"rb", "parallel", "sequential", "rb_like", "parallel_like", "sequential_like"}));
  dse->add_option("--sweep", dse_args.sweep, "Sweep definition")->capture_default_str()->check(CLI::IsMember({"default"}));
  dse->add_option("--seed", dse_args.seed, "Benchmark generator seed")->capture_default_str();
  dse->add_option("--accounting", dse_args.accounting, "SMIS/SMIT accounting")
      ->capture_default_str()
      ->check(CLI::IsMember({"uncounted", "lru"}));
  dse->add_option("-o,--output", dse_args.output, "CSV output, '-' for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(validate_args);
    if (*asm_cmd) return cmd_asm(asm_args);
    if (*disasm) return cmd_disasm(disasm_args);
    if (*run) return cmd_run(run_args);
    if (*dse) return cmd_dse(dse_args);
  } catch (const AsmError& e) {
    const std::string file = *asm_cmd ? asm_args.input : *disasm ? disasm_args.input : run_args.input;
    report(e.diagnostics(), file);
    return kDiagnostics;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return kDiagnostics;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDiagnostics;
  }
  return kUsage;
}
