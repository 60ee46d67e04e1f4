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

#ifndef EQASM_CONFIG_HPP_
#define EQASM_CONFIG_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqasm/topology.hpp"

namespace eqasm {

enum class QOpKind {
  Single,    // one micro-operation per selected qubit (OpSel 11)
  TwoQubit,  // source and target micro-operations per selected pair
  Measure,   // single-qubit Z measurement
  Qnop,      // slot filler, q_opcode 0
  Wait,      // waiting interval carried in a bundle slot
};

std::string_view to_string(QOpKind kind);

/// What an operation does to the quantum state once released.
struct GateSemantics {
  enum class Type { Rotation, Cz, Cnot, MeasZ, None };
  Type type = Type::None;
  std::array<double, 3> axis{1.0, 0.0, 0.0};  // unit vector, rotations only
  double angle_deg = 0.0;                    // R_axis(angle) = exp(-i angle/2 axis.sigma)

  friend bool operator==(const GateSemantics&, const GateSemantics&) = default;
};

struct QOpDef {
  std::string mnemonic;
  uint32_t q_opcode = 0;
  QOpKind kind = QOpKind::Single;
  uint32_t duration = 1;     // cycles
  uint32_t flag_select = 0;  // execution flag consulted at trigger time
  GateSemantics semantics;
  // Microcode: device codewords emitted for the micro-operation(s). One entry
  // for single/measure ops, {source, target} for two-qubit ops.
  std::vector<uint32_t> codewords;

  friend bool operator==(const QOpDef&, const QOpDef&) = default;
};

/// Everything fixed when the instruction set is instantiated for a platform.
struct InstantiationConfig {
  std::string name = "qumav2-7q";
  ChipTopology topology;

  uint32_t vliw_width = 2;
  uint32_t pi_width = 3;
  uint32_t qubit_mask_width = 7;
  uint32_t pair_mask_width = 16;
  uint32_t num_gprs = 32;
  uint32_t num_sregs = 32;
  uint32_t num_tregs = 32;
  uint32_t target_reg_width = 5;
  uint32_t qwait_imm_width = 20;
  uint32_t q_opcode_width = 9;

  uint32_t cycle_time_ns = 20;
  uint32_t data_mem_size = 64 * 1024;
  uint32_t queue_depth = 64;
  uint32_t issue_rate = 1;  // instruction words fetched per cycle

  /// Single-format opcodes (6 bits) by mnemonic.
  std::map<std::string, uint32_t> opcodes;
  std::vector<QOpDef> quantum_ops;

  /// Case-insensitive mnemonic lookup; nullptr if absent.
  const QOpDef* find_op(std::string_view mnemonic) const;
  const QOpDef* find_op_by_opcode(uint32_t q_opcode) const;

  uint32_t max_pi() const { return pi_width >= 32 ? UINT32_MAX : (1u << pi_width) - 1; }
  uint32_t max_qwait() const { return (1u << qwait_imm_width) - 1; }
  uint32_t max_slot_wait() const { return (1u << target_reg_width) - 1; }

  /// The seven-qubit instantiation: w=2, 3-bit PI, 9-bit q_opcode, SOMQ masks.
  static InstantiationConfig qumav2_default();

  friend bool operator==(const InstantiationConfig&, const InstantiationConfig&) = default;
};

enum class ConfigErrorKind {
  MissingReverseEdge,
  DanglingQubit,
  DuplicateEdge,
  BitBudgetExceeded,
  DuplicateOpcode,
  MaskWidthMismatch,
  InvalidOpDef,
};

std::string_view to_string(ConfigErrorKind kind);

struct ConfigError {
  ConfigErrorKind kind;
  std::string message;
};

std::vector<ConfigError> validate_config(const InstantiationConfig& config);

class ConfigLoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON (de)serialization. Parse errors and schema violations throw ConfigLoadError.
InstantiationConfig config_from_json_text(std::string_view text);
std::string config_to_json_text(const InstantiationConfig& config, int indent = 2);
InstantiationConfig load_config(const std::filesystem::path& path);

/// FNV-1a over the canonical (sorted-key, compact) JSON form.
uint32_t config_hash(const InstantiationConfig& config);

}  // namespace eqasm

#endif  // EQASM_CONFIG_HPP_
