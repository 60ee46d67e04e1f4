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

#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <sstream>

#include "eqasm/assembler.hpp"
#include "eqasm/dse.hpp"
#include "eqasm/simulator.hpp"
#include "eqasm/version.hpp"

namespace py = pybind11;
using namespace eqasm;

namespace {

InstantiationConfig config_of(const std::optional<std::string>& json) {
  return json ? config_from_json_text(*json) : InstantiationConfig::qumav2_default();
}

std::string diagnostics_text(const AsmError& e) {
  std::string out;
  for (const auto& d : e.diagnostics()) out += (out.empty() ? "" : "\n") + format_diagnostic(d, "<input>");
  return out;
}

std::vector<uint32_t> assemble_words(const std::string& text, const InstantiationConfig& config) {
  try {
    return assemble(text, config).words;
  } catch (const AsmError& e) {
    throw py::value_error(diagnostics_text(e));
  }
}

py::dict run_program(const std::string& source, const std::optional<std::string>& config_json, uint64_t seed,
                     const std::optional<std::string>& script, uint64_t max_cycles, int64_t start_offset,
                     const std::string& backend_name) {
  const InstantiationConfig config = config_of(config_json);
  std::vector<Instruction> program;
  try {
    program = decode(assemble_words(source, config), config).instructions();
  } catch (const AsmError& e) {
    throw py::value_error(diagnostics_text(e));
  }
  SimOptions options;
  options.max_cycles = max_cycles;
  options.start_offset = start_offset;
  if (script) options.script = ResultScript::parse(*script);

  std::unique_ptr<QuantumBackend> backend;
  if (backend_name == "mock") {
    backend = std::make_unique<MockBackend>();
  } else if (backend_name == "statevector") {
    backend = std::make_unique<StateVectorBackend>(seed);
  } else {
    throw py::value_error("backend must be 'statevector' or 'mock'");
  }

  SimResult result;
  std::vector<uint32_t> gpr;
  {
    py::gil_scoped_release release;
    Simulator sim(config, program, *backend, options);
    result = sim.run();
    gpr = sim.state().gpr;
  }

  py::dict out;
  out["reason"] = std::string(to_string(result.reason));
  out["cycles"] = result.cycles;
  std::ostringstream trace;
  write_trace(trace, result.trace);
  out["trace"] = trace.str();
  py::list triggers;
  for (const auto& t : result.triggers) {
    py::dict d;
    d["timestamp"] = t.timestamp;
    d["cycle"] = t.cycle;
    d["qubit"] = t.qubit;
    d["op"] = t.mnemonic;
    d["released"] = t.released;
    triggers.append(d);
  }
  out["triggers"] = triggers;
  py::list measurements;
  for (const auto& m : result.measurements) {
    py::dict d;
    d["qubit"] = m.qubit;
    d["timestamp"] = m.timestamp;
    d["result"] = m.result;
    d["p1"] = m.p1;
    measurements.append(d);
  }
  out["measurements"] = measurements;
  out["gpr"] = gpr;
  if (result.error) {
    out["error"] = std::string(to_string(result.error->kind)) + ": " + result.error->message;
  } else {
    out["error"] = py::none();
  }
  if (const QuantumState* s = backend->state()) {
    out["amplitudes"] = s->amplitudes();
  } else {
    out["amplitudes"] = py::none();
  }
  return out;
}

py::dict report_dict(const DseReport& r) {
  py::dict d;
  d["total"] = r.total_instructions;
  d["qwaits"] = r.qwait_instructions;
  d["bundles"] = r.bundle_instructions;
  d["setup"] = r.setup_instructions;
  d["effective_ops"] = r.effective_ops;
  d["eff_ops_per_bundle"] = r.effective_ops_per_bundle;
  d["r_req"] = r.r_req;
  return d;
}

CountOptions count_options(const std::string& accounting) {
  if (accounting != "uncounted" && accounting != "lru") throw py::value_error("accounting must be 'uncounted' or 'lru'");
  return {accounting == "lru" ? SetupAccounting::Lru : SetupAccounting::Uncounted, 16};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "eQASM toolchain core";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<DseError>(m, "DseError", PyExc_ValueError);
  py::register_exception<ConfigLoadError>(m, "ConfigError", PyExc_ValueError);

  m.def("default_config", [] { return config_to_json_text(InstantiationConfig::qumav2_default()); },
        "The built-in instantiation as JSON text.");
  m.def("config_hash", [](const std::optional<std::string>& json) { return config_hash(config_of(json)); },
        py::arg("config") = py::none());
  m.def(
      "validate",
      [](const std::optional<std::string>& json) {
        std::vector<std::string> errors;
        for (const auto& e : validate_config(config_of(json))) {
          errors.push_back(std::string(to_string(e.kind)) + ": " + e.message);
        }
        return errors;
      },
      py::arg("config") = py::none(), "Returns the violated config invariants; empty means valid.");
  m.def(
      "assemble",
      [](const std::string& text, const std::optional<std::string>& json) {
        return assemble_words(text, config_of(json));
      },
      py::arg("text"), py::arg("config") = py::none(), "Assembles eQASM text into 32-bit words.");
  m.def(
      "disassemble",
      [](const std::vector<uint32_t>& words, const std::optional<std::string>& json) {
        try {
          return format_program(decode(words, config_of(json)));
        } catch (const AsmError& e) {
          throw py::value_error(diagnostics_text(e));
        }
      },
      py::arg("words"), py::arg("config") = py::none());
  m.def("run", &run_program, py::arg("source"), py::arg("config") = py::none(), py::arg("seed") = 0,
        py::arg("script") = py::none(), py::arg("max_cycles") = SimOptions{}.max_cycles,
        py::arg("start_offset") = SimOptions{}.start_offset, py::arg("backend") = "statevector",
        "Assembles and simulates a program; returns the trace, triggers and measurements.");
  m.def(
      "count_instructions",
      [](const std::string& benchmark, int config_id, uint32_t w, uint64_t seed, const std::string& accounting) {
        const ScheduledCircuit c = generate_benchmark(parse_benchmark_kind(benchmark), {}, seed);
        return report_dict(count_instructions(c, numbered_config(config_id, w), count_options(accounting)));
      },
      py::arg("benchmark"), py::arg("config_id"), py::arg("w"), py::arg("seed") = 0,
      py::arg("accounting") = "uncounted");
  m.def(
      "dse_sweep",
      [](const std::vector<std::string>& benchmarks, uint64_t seed, const std::string& accounting) {
        std::vector<ScheduledCircuit> circuits;
        for (const auto& b : benchmarks) circuits.push_back(generate_benchmark(parse_benchmark_kind(b), {}, seed));
        const CountOptions options = count_options(accounting);
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = sweep(default_sweep_configs(), circuits, options);
        }
        std::ostringstream os;
        write_sweep_csv(os, rows);
        return os.str();
      },
      py::arg("benchmarks") = std::vector<std::string>{"rb", "parallel", "sequential"}, py::arg("seed") = 0,
      py::arg("accounting") = "uncounted", "Runs the default sweep and returns it as CSV text.");
}
