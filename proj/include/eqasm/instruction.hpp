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

#ifndef EQASM_INSTRUCTION_HPP_
#define EQASM_INSTRUCTION_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eqasm/config.hpp"
#include "eqasm/topology.hpp"

namespace eqasm {

enum class CmpFlag : uint8_t { Always, Never, Eq, Ne, Lt, Ge, Le, Gt, Ltu, Geu, Leu, Gtu };
inline constexpr int kNumCmpFlags = 12;

std::string_view to_string(CmpFlag flag);
std::optional<CmpFlag> parse_cmp_flag(std::string_view name);

/// Result of the last CMP. ALWAYS reads 1 and NEVER reads 0 regardless of history.
class ComparisonFlags {
 public:
  ComparisonFlags() = default;
  static ComparisonFlags compare(uint32_t rs, uint32_t rt);
  bool get(CmpFlag flag) const;

  friend bool operator==(const ComparisonFlags&, const ComparisonFlags&) = default;

 private:
  std::array<bool, kNumCmpFlags> bits_{};
};

namespace insn {

struct Cmp {
  uint8_t rs = 0, rt = 0;
  friend bool operator==(const Cmp&, const Cmp&) = default;
};
/// Jump to PC + offset. While `label` is non-empty the offset is unresolved.
struct Br {
  CmpFlag flag = CmpFlag::Always;
  std::string label;
  int32_t offset = 0;
  friend bool operator==(const Br&, const Br&) = default;
};
struct Fbr {
  CmpFlag flag = CmpFlag::Always;
  uint8_t rd = 0;
  friend bool operator==(const Fbr&, const Fbr&) = default;
};
struct Ldi {
  uint8_t rd = 0;
  int64_t imm = 0;
  friend bool operator==(const Ldi&, const Ldi&) = default;
};
struct Ldui {
  uint8_t rd = 0;
  int64_t imm = 0;
  uint8_t rs = 0;
  friend bool operator==(const Ldui&, const Ldui&) = default;
};
struct Ld {
  uint8_t rd = 0, rt = 0;
  int64_t imm = 0;
  friend bool operator==(const Ld&, const Ld&) = default;
};
struct St {
  uint8_t rs = 0, rt = 0;
  int64_t imm = 0;
  friend bool operator==(const St&, const St&) = default;
};
struct Fmr {
  uint8_t rd = 0;
  uint32_t qubit = 0;
  friend bool operator==(const Fmr&, const Fmr&) = default;
};
enum class LogicOp : uint8_t { And, Or, Xor };
struct Logic {
  LogicOp op = LogicOp::And;
  uint8_t rd = 0, rs = 0, rt = 0;
  friend bool operator==(const Logic&, const Logic&) = default;
};
struct Not {
  uint8_t rd = 0, rt = 0;
  friend bool operator==(const Not&, const Not&) = default;
};
enum class ArithOp : uint8_t { Add, Sub };
struct Arith {
  ArithOp op = ArithOp::Add;
  uint8_t rd = 0, rs = 0, rt = 0;
  friend bool operator==(const Arith&, const Arith&) = default;
};
struct Qwait {
  int64_t imm = 0;
  friend bool operator==(const Qwait&, const Qwait&) = default;
};
struct Qwaitr {
  uint8_t rs = 0;
  friend bool operator==(const Qwaitr&, const Qwaitr&) = default;
};
struct Smis {
  uint8_t sd = 0;
  std::vector<uint32_t> qubits;
  friend bool operator==(const Smis&, const Smis&) = default;
};
struct Smit {
  uint8_t td = 0;
  std::vector<QubitPair> pairs;
  friend bool operator==(const Smit&, const Smit&) = default;
};

/// One slot of a quantum bundle. `operand` is the S/T register address, or
/// the interval for a Wait slot; unused for QNOP.
struct QuantumOp {
  std::string mnemonic;
  QOpKind kind = QOpKind::Single;
  uint32_t operand = 0;
  friend bool operator==(const QuantumOp&, const QuantumOp&) = default;
};

struct Bundle {
  int64_t pi = 1;
  std::vector<QuantumOp> ops;
  friend bool operator==(const Bundle&, const Bundle&) = default;
};

}  // namespace insn

using Instruction = std::variant<insn::Cmp, insn::Br, insn::Fbr, insn::Ldi, insn::Ldui, insn::Ld, insn::St,
                                 insn::Fmr, insn::Logic, insn::Not, insn::Arith, insn::Qwait, insn::Qwaitr,
                                 insn::Smis, insn::Smit, insn::Bundle>;

/// True for QWAIT, QWAITR, SMIS, SMIT and bundles.
bool is_quantum(const Instruction& instruction);

struct SourceLocation {
  uint32_t line = 0;
  uint32_t column = 0;
};

struct Statement {
  Instruction instruction;
  SourceLocation location;
};

struct Program {
  std::vector<Statement> statements;
  /// Label -> index of the statement it precedes (may equal size()).
  std::map<std::string, std::size_t> labels;

  std::vector<Instruction> instructions() const;
};

/// Canonical assembly text of one instruction, e.g. "1, X90 S0 | X S2".
std::string format_instruction(const Instruction& instruction);

/// Canonical program listing with labels on their own lines.
std::string format_program(const Program& program);

}  // namespace eqasm

#endif  // EQASM_INSTRUCTION_HPP_
