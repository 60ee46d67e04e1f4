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

#include "eqasm/instruction.hpp"

#include <sstream>

#include "eqasm/text.hpp"

namespace eqasm {

namespace {

constexpr std::array<std::string_view, kNumCmpFlags> kFlagNames = {
    "ALWAYS", "NEVER", "EQ", "NE", "LT", "GE", "LE", "GT", "LTU", "GEU", "LEU", "GTU"};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string reg(char prefix, unsigned index) { return prefix + std::to_string(index); }

}  // namespace

std::string_view to_string(CmpFlag flag) { return kFlagNames[static_cast<int>(flag)]; }

std::optional<CmpFlag> parse_cmp_flag(std::string_view name) {
  for (int i = 0; i < kNumCmpFlags; ++i) {
    if (iequals(kFlagNames[i], name)) return static_cast<CmpFlag>(i);
  }
  return std::nullopt;
}

ComparisonFlags ComparisonFlags::compare(uint32_t rs, uint32_t rt) {
  ComparisonFlags f;
  const auto s = static_cast<int32_t>(rs);
  const auto t = static_cast<int32_t>(rt);
  auto set = [&f](CmpFlag flag, bool v) { f.bits_[static_cast<int>(flag)] = v; };
  set(CmpFlag::Eq, rs == rt);
  set(CmpFlag::Ne, rs != rt);
  set(CmpFlag::Lt, s < t);
  set(CmpFlag::Ge, s >= t);
  set(CmpFlag::Le, s <= t);
  set(CmpFlag::Gt, s > t);
  set(CmpFlag::Ltu, rs < rt);
  set(CmpFlag::Geu, rs >= rt);
  set(CmpFlag::Leu, rs <= rt);
  set(CmpFlag::Gtu, rs > rt);
  return f;
}

bool ComparisonFlags::get(CmpFlag flag) const {
  if (flag == CmpFlag::Always) return true;
  if (flag == CmpFlag::Never) return false;
  return bits_[static_cast<int>(flag)];
}

bool is_quantum(const Instruction& instruction) {
  return std::holds_alternative<insn::Qwait>(instruction) || std::holds_alternative<insn::Qwaitr>(instruction) ||
         std::holds_alternative<insn::Smis>(instruction) || std::holds_alternative<insn::Smit>(instruction) ||
         std::holds_alternative<insn::Bundle>(instruction);
}

std::vector<Instruction> Program::instructions() const {
  std::vector<Instruction> out;
  out.reserve(statements.size());
  for (const auto& s : statements) out.push_back(s.instruction);
  return out;
}

std::string format_instruction(const Instruction& instruction) {
  std::ostringstream os;
  std::visit(
      Overloaded{
          [&](const insn::Cmp& i) { os << "CMP " << reg('R', i.rs) << ", " << reg('R', i.rt); },
          [&](const insn::Br& i) {
            os << "BR " << to_string(i.flag) << ", ";
            if (!i.label.empty()) {
              os << i.label;
            } else {
              os << i.offset;
            }
          },
          [&](const insn::Fbr& i) { os << "FBR " << to_string(i.flag) << ", " << reg('R', i.rd); },
          [&](const insn::Ldi& i) { os << "LDI " << reg('R', i.rd) << ", " << i.imm; },
          [&](const insn::Ldui& i) { os << "LDUI " << reg('R', i.rd) << ", " << i.imm << ", " << reg('R', i.rs); },
          [&](const insn::Ld& i) { os << "LD " << reg('R', i.rd) << ", " << reg('R', i.rt) << "(" << i.imm << ")"; },
          [&](const insn::St& i) { os << "ST " << reg('R', i.rs) << ", " << reg('R', i.rt) << "(" << i.imm << ")"; },
          [&](const insn::Fmr& i) { os << "FMR " << reg('R', i.rd) << ", " << reg('Q', i.qubit); },
          [&](const insn::Logic& i) {
            static const char* names[] = {"AND", "OR", "XOR"};
            os << names[static_cast<int>(i.op)] << " " << reg('R', i.rd) << ", " << reg('R', i.rs) << ", "
               << reg('R', i.rt);
          },
          [&](const insn::Not& i) { os << "NOT " << reg('R', i.rd) << ", " << reg('R', i.rt); },
          [&](const insn::Arith& i) {
            os << (i.op == insn::ArithOp::Add ? "ADD " : "SUB ") << reg('R', i.rd) << ", " << reg('R', i.rs) << ", "
               << reg('R', i.rt);
          },
          [&](const insn::Qwait& i) { os << "QWAIT " << i.imm; },
          [&](const insn::Qwaitr& i) { os << "QWAITR " << reg('R', i.rs); },
          [&](const insn::Smis& i) {
            os << "SMIS " << reg('S', i.sd) << ", {";
            for (std::size_t k = 0; k < i.qubits.size(); ++k) os << (k ? ", " : "") << i.qubits[k];
            os << "}";
          },
          [&](const insn::Smit& i) {
            os << "SMIT " << reg('T', i.td) << ", {";
            for (std::size_t k = 0; k < i.pairs.size(); ++k) {
              os << (k ? ", " : "") << "(" << i.pairs[k].source << ", " << i.pairs[k].target << ")";
            }
            os << "}";
          },
          [&](const insn::Bundle& b) {
            os << b.pi << ", ";
            for (std::size_t k = 0; k < b.ops.size(); ++k) {
              const auto& op = b.ops[k];
              if (k) os << " | ";
              os << op.mnemonic;
              switch (op.kind) {
                case QOpKind::Single:
                case QOpKind::Measure: os << " " << reg('S', op.operand); break;
                case QOpKind::TwoQubit: os << " " << reg('T', op.operand); break;
                case QOpKind::Wait: os << " " << op.operand; break;
                case QOpKind::Qnop: break;
              }
            }
          },
      },
      instruction);
  return os.str();
}

std::string format_program(const Program& program) {
  std::multimap<std::size_t, std::string> by_index;
  for (const auto& [label, index] : program.labels) by_index.emplace(index, label);
  std::ostringstream os;
  for (std::size_t i = 0; i <= program.statements.size(); ++i) {
    auto [lo, hi] = by_index.equal_range(i);
    for (auto it = lo; it != hi; ++it) os << it->second << ":\n";
    if (i < program.statements.size()) os << "  " << format_instruction(program.statements[i].instruction) << "\n";
  }
  return os.str();
}

}  // namespace eqasm
