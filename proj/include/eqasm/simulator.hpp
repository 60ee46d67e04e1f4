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

#ifndef EQASM_SIMULATOR_HPP_
#define EQASM_SIMULATOR_HPP_

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "eqasm/backend.hpp"
#include "eqasm/config.hpp"
#include "eqasm/instruction.hpp"
#include "eqasm/microcode.hpp"
#include "eqasm/timeline.hpp"

namespace eqasm {

inline constexpr int kNumExecFlags = 4;

/// Architectural state visible to the program.
struct ArchState {
  uint32_t pc = 0;
  std::vector<uint32_t> gpr;
  ComparisonFlags cmp_flags;
  std::vector<uint64_t> s_regs;  // qubit masks
  std::vector<uint64_t> t_regs;  // pair masks
  std::vector<uint8_t> q;        // last measurement result per qubit
  std::vector<uint32_t> c;       // pending measurements per qubit
  std::vector<std::array<bool, kNumExecFlags>> exec_flags;
  std::vector<std::vector<int>> history;  // finished results, newest last, at most two kept
  std::vector<uint8_t> memory;

  explicit ArchState(const InstantiationConfig& config);
  bool q_valid(uint32_t qubit) const { return c[qubit] == 0; }
};

/// Flag 0 is always 1; flag 1: last result was 1; flag 2: last result was 0;
/// flag 3: the last two results were equal. Flags read 0 until enough
/// results have finished.
std::array<bool, kNumExecFlags> exec_flags_from_history(const std::vector<int>& history);

/// Executes a register-only classical instruction (CMP, FBR, LDI, LDUI,
/// logic and arithmetic). Returns false for anything else.
bool execute_register_op(const Instruction& instruction, std::vector<uint32_t>& gpr, ComparisonFlags& flags);

enum class SimErrorKind {
  TimingViolation,
  LaneConflict,
  BundleConflict,
  ConflictingPairSelection,
  UnknownQOpcode,
  PCOutOfRange,
  MisalignedAccess,
  MemoryOutOfRange,
  BackendError,
};

std::string_view to_string(SimErrorKind kind);

struct SimError {
  SimErrorKind kind;
  std::string message;
  uint32_t pc = 0;
  std::optional<uint32_t> qubit;
  std::optional<int64_t> timestamp;
};

enum class HaltReason { Completed, Error, CycleLimit };

std::string_view to_string(HaltReason reason);

/// One trace record. Serialized as tab-separated
/// "cycle domain kind target detail status", empty fields as "-".
struct TraceEvent {
  uint64_t cycle = 0;
  std::string domain;  // "classical" or "quantum"
  std::string kind;    // issue, stall, trigger, meas_result, error, drained, halt
  std::string target;  // e.g. "q2", "R1", "pc=4"
  std::string detail;
  std::string status;  // released, canceled or empty
};

std::string format_trace_event(const TraceEvent& event);
void write_trace(std::ostream& os, const std::vector<TraceEvent>& trace);

struct TriggerRecord {
  int64_t timestamp = 0;
  uint64_t cycle = 0;
  uint32_t qubit = 0;
  std::string mnemonic;
  OpSel role = OpSel::Single;
  bool released = true;
};

struct MeasurementRecord {
  uint32_t qubit = 0;
  int64_t timestamp = 0;  // trigger timestamp
  int result = 0;
  double p1 = 0.0;
};

/// Per-qubit queues of forced measurement outcomes.
struct ResultScript {
  std::map<uint32_t, std::deque<int>> queues;

  std::optional<int> next(uint32_t qubit);
  /// Lines "Q<i>: b b b ..." with '#' comments. Throws std::invalid_argument.
  static ResultScript parse(std::string_view text);
};

struct SimOptions {
  uint64_t max_cycles = 10'000'000;
  /// Cycles between the first timing-point reservation and timeline point 0.
  int64_t start_offset = 16;
  ResultScript script;
};

struct SimResult {
  HaltReason reason = HaltReason::Completed;
  std::optional<SimError> error;
  uint64_t cycles = 0;
  std::vector<TraceEvent> trace;
  std::vector<TriggerRecord> triggers;
  std::vector<MeasurementRecord> measurements;
};

/// Cycle-driven model of the control microarchitecture. Each cycle runs, in
/// order: measurement write-back, the issue stage (up to issue_rate words;
/// reserve phase for timing instructions) and the trigger stage of the
/// deterministic timing domain.
class Simulator {
 public:
  /// `program` must have resolved branch offsets.
  Simulator(const InstantiationConfig& config, std::vector<Instruction> program, QuantumBackend& backend,
            SimOptions options = {});

  /// Advances one cycle. Returns false once halted.
  bool step();
  SimResult run();

  const ArchState& state() const { return state_; }
  bool halted() const { return halted_; }
  const SimResult& result() const { return result_; }

 private:
  struct MicroOpEntry {
    const QOpDef* def = nullptr;
    OpSel role = OpSel::Single;
    uint32_t partner = 0;  // other qubit of a two-qubit operation
  };
  struct TimePoint {
    int64_t timestamp = 0;
    std::map<uint32_t, MicroOpEntry> ops;  // by qubit
  };
  struct PendingResult {
    int64_t due = 0;
    uint32_t qubit = 0;
    int result = 0;
  };
  enum class Issue { Retired, Stalled, Done };

  Issue issue_one();
  void reserve_bundle(const insn::Bundle& bundle);
  void flush_buffer();
  void trigger_point(TimePoint& point);
  void write_back();
  void fail(SimErrorKind kind, std::string message, std::optional<uint32_t> qubit = std::nullopt,
            std::optional<int64_t> timestamp = std::nullopt);
  void halt(HaltReason reason);
  void emit(std::string domain, std::string kind, std::string target, std::string detail, std::string status = {});
  int64_t timer() const { return static_cast<int64_t>(cycle_) - origin_.value_or(0); }
  std::size_t occupancy() const { return queue_.size() + (buffer_.ops.empty() ? 0 : 1); }

  const InstantiationConfig& config_;
  std::vector<Instruction> program_;
  QuantumBackend& backend_;
  SimOptions options_;

  ArchState state_;
  TimestampManager timestamps_;
  std::optional<int64_t> origin_;  // cycle at which timeline point 0 is due
  TimePoint buffer_;
  std::deque<TimePoint> queue_;
  std::deque<PendingResult> pending_;
  uint64_t cycle_ = 0;
  bool stalled_ = false;
  bool halted_ = false;
  SimResult result_;
};

/// Convenience driver: builds a simulator, runs it to completion.
SimResult simulate(const InstantiationConfig& config, const std::vector<Instruction>& program,
                   QuantumBackend& backend, SimOptions options = {});

}  // namespace eqasm

#endif  // EQASM_SIMULATOR_HPP_
