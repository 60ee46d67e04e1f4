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

#ifndef EQASM_MICROCODE_HPP_
#define EQASM_MICROCODE_HPP_

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "eqasm/config.hpp"
#include "eqasm/topology.hpp"

namespace eqasm {

/// Per-qubit micro-operation selection signal. Bit 1 selects the target-role
/// micro-operation, bit 0 the source-role one; both set means the
/// single-qubit micro-operation.
enum class OpSel : uint8_t { None = 0b00, Src = 0b01, Tgt = 0b10, Single = 0b11 };

std::string_view to_string(OpSel sel);

class OpSelConflict : public std::runtime_error {
 public:
  OpSelConflict(uint32_t qubit, std::string_view message);
  uint32_t qubit() const { return qubit_; }

 private:
  uint32_t qubit_;
};

/// Expands a qubit mask (single-qubit and measurement kinds) or a pair mask
/// (two-qubit kind) into one selector per qubit. For pair masks each qubit ORs
/// the edges where it is the target into the high bit and the edges where it
/// is the source into the low bit. Throws OpSelConflict when two selected
/// edges share a qubit. QNOP and wait kinds select nothing.
std::vector<OpSel> resolve_opsel(const ChipTopology& topology, uint64_t mask, QOpKind kind);

struct DecodedQOp {
  const QOpDef* def = nullptr;
  /// Micro-operation roles emitted by the control store: {Single} for
  /// single-qubit and measurement operations, {Src, Tgt} for two-qubit ones,
  /// empty for QNOP.
  std::vector<OpSel> micro_ops;
  uint32_t flag_select = 0;
};

class UnknownQOpcode : public std::runtime_error {
 public:
  explicit UnknownQOpcode(uint32_t q_opcode);
  uint32_t q_opcode() const { return q_opcode_; }

 private:
  uint32_t q_opcode_;
};

DecodedQOp microcode_decode(const InstantiationConfig& config, uint32_t q_opcode);

}  // namespace eqasm

#endif  // EQASM_MICROCODE_HPP_
