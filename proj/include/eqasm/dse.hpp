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

// Instruction-count analysis of scheduled circuits under alternative
// instantiations (timing scheme, PI width, SOMQ, VLIW width).

#ifndef EQASM_DSE_HPP_
#define EQASM_DSE_HPP_

#include <array>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqasm/config.hpp"
#include "eqasm/topology.hpp"

namespace eqasm {

struct ScheduledOp {
  uint64_t start_cycle = 0;
  std::string mnemonic;
  std::vector<uint32_t> qubits;  // one qubit, or {source, target} for a pair

  friend bool operator==(const ScheduledOp&, const ScheduledOp&) = default;
};

struct ScheduledCircuit {
  std::string name;
  ChipTopology topology;
  std::vector<ScheduledOp> ops;  // start cycles non-decreasing

  uint32_t num_qubits() const { return topology.num_qubits; }
  friend bool operator==(const ScheduledCircuit&, const ScheduledCircuit&) = default;
};

enum class TimingScheme { Ts1, Ts2, Ts3 };

std::string_view to_string(TimingScheme scheme);

struct DseConfig {
  int id = 0;  // 1..10 in the default sweep, 0 for ad-hoc cells
  TimingScheme scheme = TimingScheme::Ts1;
  uint32_t pi_width = 0;
  bool somq = false;
  uint32_t vliw_width = 1;

  friend bool operator==(const DseConfig&, const DseConfig&) = default;
};

/// Configs 1..10: ts1; ts2; ts3 with w_PI = 1..4; the same with SOMQ.
DseConfig numbered_config(int id, uint32_t vliw_width);
/// Every legal (config 1..10, w = 1..4) cell, ordered by config then w.
std::vector<DseConfig> default_sweep_configs();

/// Whether SMIS/SMIT setup words are part of the total.
enum class SetupAccounting { Uncounted, Lru };

std::string_view to_string(SetupAccounting accounting);

struct CountOptions {
  SetupAccounting accounting = SetupAccounting::Uncounted;
  uint32_t r_req_window = 16;  // cycles
};

struct DseReport {
  uint64_t total_instructions = 0;
  uint64_t qwait_instructions = 0;
  uint64_t bundle_instructions = 0;
  uint64_t setup_instructions = 0;  // SMIS/SMIT under LRU register reuse, reported in every mode
  uint64_t effective_ops = 0;       // occupied quantum-operation slots
  double effective_ops_per_bundle = 0.0;
  double r_req = 0.0;  // peak words per cycle over any window of r_req_window cycles

  friend bool operator==(const DseReport&, const DseReport&) = default;
};

enum class DseErrorKind { IllegalConfig, IllegalCircuit };

class DseError : public std::invalid_argument {
 public:
  DseError(DseErrorKind kind, const std::string& message) : std::invalid_argument(message), kind_(kind) {}
  DseErrorKind kind() const { return kind_; }

 private:
  DseErrorKind kind_;
};

void validate_dse_config(const DseConfig& config);
void validate_circuit(const ScheduledCircuit& circuit);

/// The instantiation a cell is materialized under: q_opcode width from the
/// operation table, target register width from the remaining bundle bits.
InstantiationConfig dse_instantiation(const ChipTopology& topology, const DseConfig& config);

/// Largest interval a ts2 wait slot carries in every ts2 cell.
uint32_t ts2_slot_wait_limit();

DseReport count_instructions(const ScheduledCircuit& circuit, const DseConfig& config, const CountOptions& options = {});

/// eQASM text for the counted program; assembling it under
/// dse_instantiation() yields qwait + bundle + setup words.
std::string materialize(const ScheduledCircuit& circuit, const DseConfig& config);

// Benchmarks -----------------------------------------------------------------

enum class BenchmarkKind { RbLike, ParallelLike, SequentialLike };

std::string_view to_string(BenchmarkKind kind);
BenchmarkKind parse_benchmark_kind(std::string_view name);  // "rb", "rb_like", ...; throws DseError

struct BenchmarkParams {
  uint32_t num_qubits = 0;           // 0: 7 for rb/parallel, 8 for sequential
  uint32_t cliffords = 4096;         // rb_like, per qubit
  uint32_t layers = 2000;            // parallel_like
  uint32_t gates = 4000;             // sequential_like
  double two_qubit_fraction = -1.0;  // negative: 0.008 parallel, 0.39 sequential
  double locality = 0.97;            // sequential_like: chance a gate reuses a qubit of its predecessor
};

ScheduledCircuit generate_benchmark(BenchmarkKind kind, const BenchmarkParams& params, uint64_t seed);

/// The 24 single-qubit Cliffords as x/y rotation sequences (I counts as one primitive).
const std::array<std::vector<std::string>, 24>& clifford_decompositions();

/// Two-qubit gates over all gates, measurements excluded.
double two_qubit_fraction(const ScheduledCircuit& circuit);

// Sweep -----------------------------------------------------------------------

struct SweepRow {
  std::string benchmark;
  DseConfig config;
  DseReport report;
  double normalized = 0.0;  // total relative to (config 1, w=1) on the same circuit
};

std::vector<SweepRow> sweep(const std::vector<DseConfig>& configs, const std::vector<ScheduledCircuit>& circuits,
                            const CountOptions& options = {});

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace eqasm

#endif  // EQASM_DSE_HPP_
