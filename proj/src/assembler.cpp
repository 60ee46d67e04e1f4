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

#include "eqasm/assembler.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>

namespace eqasm {

std::string_view to_string(DiagCode code) {
  switch (code) {
    case DiagCode::SyntaxError: return "SyntaxError";
    case DiagCode::UnknownMnemonic: return "UnknownMnemonic";
    case DiagCode::UnresolvedLabel: return "UnresolvedLabel";
    case DiagCode::DuplicateLabel: return "DuplicateLabel";
    case DiagCode::RegisterOutOfRange: return "RegisterOutOfRange";
    case DiagCode::OperandKindMismatch: return "OperandKindMismatch";
    case DiagCode::NotAnAllowedPair: return "NotAnAllowedPair";
    case DiagCode::ConflictingPairSelection: return "ConflictingPairSelection";
    case DiagCode::MaskOverflow: return "MaskOverflow";
    case DiagCode::PossibleSlotConflict: return "PossibleSlotConflict";
    case DiagCode::ImmediateOverflow: return "ImmediateOverflow";
    case DiagCode::UnknownOpcode: return "UnknownOpcode";
    case DiagCode::ConfigHashMismatch: return "ConfigHashMismatch";
    case DiagCode::MalformedBinary: return "MalformedBinary";
  }
  return "?";
}

std::string format_diagnostic(const Diagnostic& d, std::string_view filename) {
  std::ostringstream os;
  os << filename << ":" << d.location.line << ":" << d.location.column << ": "
     << (d.severity == Severity::Error ? "error" : "warning") << ": " << d.message << " [" << to_string(d.code)
     << "]";
  return os.str();
}

namespace {

std::string join_messages(const std::vector<Diagnostic>& diagnostics) {
  std::string msg;
  for (const auto& d : diagnostics) {
    if (!msg.empty()) msg += "; ";
    msg += std::to_string(d.location.line) + ":" + std::to_string(d.location.column) + ": " + d.message;
  }
  return msg;
}

}  // namespace

AsmError::AsmError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_messages(diagnostics)), diagnostics_(std::move(diagnostics)) {
  if (diagnostics_.empty()) diagnostics_.push_back({Severity::Error, DiagCode::SyntaxError, {}, "unknown error"});
}

// ---------------------------------------------------------------------------
// legalize

namespace {

/// Qubits touched by a target register value, or nullopt when unknown.
using KnownTargets = std::map<uint32_t, uint64_t>;

uint64_t pair_qubits(std::span<const QubitPair> pairs) {
  uint64_t m = 0;
  for (const auto& p : pairs) m |= (uint64_t{1} << p.source) | (uint64_t{1} << p.target);
  return m;
}

}  // namespace

LegalizeResult legalize(const Program& program, const InstantiationConfig& config) {
  LegalizeResult result;
  result.program = program;
  std::vector<Diagnostic> errors;
  std::set<std::size_t> label_targets;
  for (const auto& [_, index] : program.labels) label_targets.insert(index);

  KnownTargets s_known, t_known;
  for (std::size_t i = 0; i < result.program.statements.size(); ++i) {
    if (label_targets.contains(i)) {
      // Control may merge here; forget what the registers hold.
      s_known.clear();
      t_known.clear();
    }
    Statement& st = result.program.statements[i];
    const SourceLocation loc = st.location;
    if (auto* smis = std::get_if<insn::Smis>(&st.instruction)) {
      std::sort(smis->qubits.begin(), smis->qubits.end());
      smis->qubits.erase(std::unique(smis->qubits.begin(), smis->qubits.end()), smis->qubits.end());
      bool ok = true;
      for (uint32_t q : smis->qubits) {
        if (q >= config.qubit_mask_width || q >= config.topology.num_qubits) {
          errors.push_back({Severity::Error, DiagCode::MaskOverflow, loc,
                            "qubit " + std::to_string(q) + " does not fit the " +
                                std::to_string(config.qubit_mask_width) + "-bit qubit mask"});
          ok = false;
        }
      }
      if (ok) {
        s_known[smis->sd] = qubit_list_to_mask(smis->qubits);
      } else {
        s_known.erase(smis->sd);
      }
    } else if (auto* smit = std::get_if<insn::Smit>(&st.instruction)) {
      std::vector<std::pair<uint32_t, QubitPair>> addressed;
      bool ok = true;
      for (const QubitPair& p : smit->pairs) {
        const auto e = config.topology.edge_address(p);
        if (!e) {
          errors.push_back({Severity::Error, DiagCode::NotAnAllowedPair, loc,
                            "(" + std::to_string(p.source) + ", " + std::to_string(p.target) +
                                ") is not an allowed qubit pair"});
          ok = false;
          continue;
        }
        if (*e >= config.pair_mask_width) {
          errors.push_back({Severity::Error, DiagCode::MaskOverflow, loc,
                            "pair address " + std::to_string(*e) + " does not fit the pair mask"});
          ok = false;
          continue;
        }
        addressed.emplace_back(*e, p);
      }
      std::sort(addressed.begin(), addressed.end());
      addressed.erase(std::unique(addressed.begin(), addressed.end()), addressed.end());
      std::map<uint32_t, int> uses;
      for (const auto& [_, p] : addressed) {
        ++uses[p.source];
        ++uses[p.target];
      }
      for (const auto& [q, n] : uses) {
        if (n > 1) {
          errors.push_back({Severity::Error, DiagCode::ConflictingPairSelection, loc,
                            "qubit " + std::to_string(q) + " appears in " + std::to_string(n) +
                                " selected pairs of T" + std::to_string(smit->td)});
          ok = false;
        }
      }
      smit->pairs.clear();
      for (const auto& [_, p] : addressed) smit->pairs.push_back(p);
      if (ok) {
        t_known[smit->td] = pair_qubits(smit->pairs);
      } else {
        t_known.erase(smit->td);
      }
    } else if (const auto* b = std::get_if<insn::Bundle>(&st.instruction)) {
      std::vector<std::optional<uint64_t>> touched;
      std::vector<std::string> names;
      for (const auto& op : b->ops) {
        if (op.kind == QOpKind::Qnop || op.kind == QOpKind::Wait) continue;
        const char prefix = op.kind == QOpKind::TwoQubit ? 'T' : 'S';
        const KnownTargets& known = op.kind == QOpKind::TwoQubit ? t_known : s_known;
        auto it = known.find(op.operand);
        touched.push_back(it == known.end() ? std::nullopt : std::optional<uint64_t>(it->second));
        names.push_back(op.mnemonic + " " + prefix + std::to_string(op.operand));
      }
      for (std::size_t a = 0; a < touched.size(); ++a) {
        for (std::size_t c = a + 1; c < touched.size(); ++c) {
          const bool same_reg = names[a].substr(names[a].find(' ')) == names[c].substr(names[c].find(' '));
          uint64_t overlap = 0;
          if (touched[a] && touched[c]) overlap = *touched[a] & *touched[c];
          if (overlap != 0 || (same_reg && (!touched[a] || *touched[a] != 0))) {
            std::string detail = overlap ? " on qubit " + std::to_string(std::countr_zero(overlap)) : "";
            result.warnings.push_back({Severity::Warning, DiagCode::PossibleSlotConflict, loc,
                                       "'" + names[a] + "' and '" + names[c] + "' may address the same qubit" +
                                           detail});
          }
        }
      }
    }
  }
  if (!errors.empty()) throw AsmError(std::move(errors));
  return result;
}

// ---------------------------------------------------------------------------
// split_bundles / resolve_branches

namespace {

insn::QuantumOp qnop_op(const InstantiationConfig& config) {
  for (const auto& op : config.quantum_ops) {
    if (op.kind == QOpKind::Qnop) return {op.mnemonic, QOpKind::Qnop, 0};
  }
  return {"QNOP", QOpKind::Qnop, 0};
}

}  // namespace

Program split_bundles(const Program& program, const InstantiationConfig& config) {
  Program out;
  std::vector<std::size_t> new_index(program.statements.size() + 1);
  const std::size_t w = std::max<uint32_t>(config.vliw_width, 1);
  const insn::QuantumOp filler = qnop_op(config);
  for (std::size_t i = 0; i < program.statements.size(); ++i) {
    new_index[i] = out.statements.size();
    const Statement& st = program.statements[i];
    const auto* b = std::get_if<insn::Bundle>(&st.instruction);
    if (!b) {
      out.statements.push_back(st);
      continue;
    }
    int64_t pi = b->pi;
    const int64_t max_pi = config.max_pi();
    if (pi > max_pi) {
      int64_t excess = pi - max_pi;
      const int64_t max_wait = config.max_qwait();
      while (excess > 0) {
        const int64_t chunk = std::min(excess, max_wait);
        out.statements.push_back({insn::Qwait{chunk}, st.location});
        excess -= chunk;
      }
      pi = max_pi;
    }
    for (std::size_t k = 0; k < b->ops.size(); k += w) {
      insn::Bundle word;
      word.pi = k == 0 ? pi : 0;
      for (std::size_t s = k; s < k + w; ++s) word.ops.push_back(s < b->ops.size() ? b->ops[s] : filler);
      out.statements.push_back({word, st.location});
    }
  }
  new_index[program.statements.size()] = out.statements.size();
  for (const auto& [label, index] : program.labels) out.labels[label] = new_index[index];
  return out;
}

Program resolve_branches(const Program& program) {
  Program out = program;
  for (std::size_t i = 0; i < out.statements.size(); ++i) {
    auto* br = std::get_if<insn::Br>(&out.statements[i].instruction);
    if (!br || br->label.empty()) continue;
    auto it = program.labels.find(br->label);
    if (it == program.labels.end()) {
      throw AsmError({{Severity::Error, DiagCode::UnresolvedLabel, out.statements[i].location,
                       "branch target '" + br->label + "' is not defined"}});
    }
    br->offset = static_cast<int32_t>(static_cast<int64_t>(it->second) - static_cast<int64_t>(i));
    br->label.clear();
  }
  return out;
}

// ---------------------------------------------------------------------------
// encode / decode

namespace {

constexpr uint32_t kOpcodeLsb = 25;
constexpr uint32_t kRdLsb = 20;
constexpr uint32_t kRsLsb = 15;
constexpr uint32_t kRtLsb = 10;

constexpr uint32_t field_mask(uint32_t width) { return width >= 32 ? ~0u : (1u << width) - 1; }

void put(uint32_t& word, uint64_t value, uint32_t lsb, uint32_t width) {
  word |= (static_cast<uint32_t>(value) & field_mask(width)) << lsb;
}

uint32_t get(uint32_t word, uint32_t lsb, uint32_t width) { return (word >> lsb) & field_mask(width); }

int64_t get_signed(uint32_t word, uint32_t lsb, uint32_t width) {
  const uint32_t raw = get(word, lsb, width);
  const uint32_t sign = 1u << (width - 1);
  return static_cast<int64_t>(raw ^ sign) - static_cast<int64_t>(sign);
}

bool fits_signed(int64_t v, uint32_t width) {
  const int64_t lo = -(int64_t{1} << (width - 1));
  const int64_t hi = (int64_t{1} << (width - 1)) - 1;
  return v >= lo && v <= hi;
}

bool fits_unsigned(int64_t v, uint32_t width) { return v >= 0 && v < (int64_t{1} << width); }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class Encoder {
 public:
  Encoder(const InstantiationConfig& config, std::vector<Diagnostic>& errors) : config_(config), errors_(errors) {}

  uint32_t encode(const Instruction& instruction, SourceLocation loc) {
    loc_ = loc;
    return std::visit(
        Overloaded{
            [&](const insn::Cmp& i) { return rrr("CMP", 0, i.rs, i.rt, 0); },
            [&](const insn::Br& i) {
              uint32_t w = single("BR");
              put(w, static_cast<uint32_t>(i.flag), kRdLsb, 5);
              if (!fits_signed(i.offset, 20)) overflow("branch offset " + std::to_string(i.offset));
              put(w, static_cast<uint64_t>(static_cast<int64_t>(i.offset)), 0, 20);
              return w;
            },
            [&](const insn::Fbr& i) { return rrr("FBR", i.rd, 0, 0, static_cast<int64_t>(i.flag)); },
            [&](const insn::Ldi& i) {
              uint32_t w = single("LDI");
              put(w, i.rd, kRdLsb, 5);
              if (!fits_signed(i.imm, 20)) overflow("LDI immediate " + std::to_string(i.imm));
              put(w, static_cast<uint64_t>(i.imm), 0, 20);
              return w;
            },
            [&](const insn::Ldui& i) {
              uint32_t w = single("LDUI");
              put(w, i.rd, kRdLsb, 5);
              put(w, i.rs, kRsLsb, 5);
              if (!fits_unsigned(i.imm, 15)) overflow("LDUI immediate " + std::to_string(i.imm));
              put(w, static_cast<uint64_t>(i.imm), 0, 15);
              return w;
            },
            [&](const insn::Ld& i) { return rrr("LD", i.rd, 0, i.rt, i.imm); },
            [&](const insn::St& i) { return rrr("ST", 0, i.rs, i.rt, i.imm); },
            [&](const insn::Fmr& i) {
              if (i.qubit >= 32) overflow("qubit index " + std::to_string(i.qubit));
              return rrr("FMR", i.rd, static_cast<uint8_t>(i.qubit), 0, 0);
            },
            [&](const insn::Logic& i) {
              static const char* names[] = {"AND", "OR", "XOR"};
              return rrr(names[static_cast<int>(i.op)], i.rd, i.rs, i.rt, 0);
            },
            [&](const insn::Not& i) { return rrr("NOT", i.rd, 0, i.rt, 0); },
            [&](const insn::Arith& i) { return rrr(i.op == insn::ArithOp::Add ? "ADD" : "SUB", i.rd, i.rs, i.rt, 0); },
            [&](const insn::Qwait& i) {
              uint32_t w = single("QWAIT");
              if (!fits_unsigned(i.imm, config_.qwait_imm_width)) overflow("QWAIT interval " + std::to_string(i.imm));
              put(w, static_cast<uint64_t>(i.imm), 0, config_.qwait_imm_width);
              return w;
            },
            [&](const insn::Qwaitr& i) {
              uint32_t w = single("QWAITR");
              put(w, i.rs, kRsLsb, 5);
              return w;
            },
            [&](const insn::Smis& i) {
              uint32_t w = single("SMIS");
              put(w, i.sd, kRdLsb, 5);
              for (uint32_t q : i.qubits) {
                if (q >= config_.qubit_mask_width) {
                  errors_.push_back({Severity::Error, DiagCode::MaskOverflow, loc_,
                                     "qubit " + std::to_string(q) + " does not fit the qubit mask"});
                }
              }
              put(w, qubit_list_to_mask(i.qubits), 0, config_.qubit_mask_width);
              return w;
            },
            [&](const insn::Smit& i) {
              uint32_t w = single("SMIT");
              put(w, i.td, kRdLsb, 5);
              try {
                put(w, pair_list_to_mask(config_.topology, i.pairs), 0, config_.pair_mask_width);
              } catch (const NotAnAllowedPair& e) {
                errors_.push_back({Severity::Error, DiagCode::NotAnAllowedPair, loc_, e.what()});
              }
              return w;
            },
            [&](const insn::Bundle& b) { return bundle(b); },
        },
        instruction);
  }

 private:
  void overflow(const std::string& what) {
    errors_.push_back({Severity::Error, DiagCode::ImmediateOverflow, loc_, what + " does not fit its field"});
  }

  uint32_t single(const char* mnemonic) {
    auto it = config_.opcodes.find(mnemonic);
    if (it == config_.opcodes.end()) {
      errors_.push_back({Severity::Error, DiagCode::UnknownOpcode, loc_,
                         std::string("no opcode assigned to ") + mnemonic});
      return 0;
    }
    uint32_t w = 0;
    put(w, it->second, kOpcodeLsb, 6);
    return w;
  }

  uint32_t rrr(const char* mnemonic, uint8_t rd, uint8_t rs, uint8_t rt, int64_t imm) {
    uint32_t w = single(mnemonic);
    put(w, rd, kRdLsb, 5);
    put(w, rs, kRsLsb, 5);
    put(w, rt, kRtLsb, 5);
    if (!fits_signed(imm, 10)) overflow(std::string(mnemonic) + " offset " + std::to_string(imm));
    put(w, static_cast<uint64_t>(imm), 0, 10);
    return w;
  }

  uint32_t bundle(const insn::Bundle& b) {
    const uint32_t w = config_.vliw_width;
    const uint32_t qw = config_.q_opcode_width;
    const uint32_t rw = config_.target_reg_width;
    if (b.ops.size() > w) {
      errors_.push_back({Severity::Error, DiagCode::ImmediateOverflow, loc_,
                         "bundle word holds " + std::to_string(w) + " operations, got " +
                             std::to_string(b.ops.size()) + " (run split_bundles first)"});
      return 0;
    }
    if (b.pi < 0 || b.pi > config_.max_pi()) overflow("PI " + std::to_string(b.pi));
    uint32_t word = 1u << 31;
    for (uint32_t slot = 0; slot < b.ops.size(); ++slot) {
      const insn::QuantumOp& op = b.ops[slot];
      const QOpDef* def = config_.find_op(op.mnemonic);
      if (!def) {
        errors_.push_back({Severity::Error, DiagCode::UnknownMnemonic, loc_, "unknown operation " + op.mnemonic});
        continue;
      }
      const uint32_t top = 30 - slot * (qw + rw);
      const uint32_t opcode_lsb = top + 1 - qw;
      const uint32_t reg_lsb = opcode_lsb - rw;
      put(word, def->q_opcode, opcode_lsb, qw);
      if (def->kind == QOpKind::Wait && op.operand > config_.max_slot_wait()) {
        overflow("slot wait " + std::to_string(op.operand));
      }
      if (def->kind != QOpKind::Qnop) put(word, op.operand, reg_lsb, rw);
    }
    put(word, static_cast<uint64_t>(std::max<int64_t>(b.pi, 0)), 0, config_.pi_width);
    return word;
  }

  const InstantiationConfig& config_;
  std::vector<Diagnostic>& errors_;
  SourceLocation loc_;
};

}  // namespace

std::vector<uint32_t> encode(const Program& program, const InstantiationConfig& config) {
  const Program resolved = resolve_branches(program);
  std::vector<Diagnostic> errors;
  Encoder encoder(config, errors);
  std::vector<uint32_t> words;
  words.reserve(resolved.statements.size());
  for (const auto& st : resolved.statements) words.push_back(encoder.encode(st.instruction, st.location));
  if (!errors.empty()) throw AsmError(std::move(errors));
  return words;
}

Instruction decode_word(uint32_t word, const InstantiationConfig& config) {
  auto unknown = [&](const std::string& what) -> AsmError {
    std::ostringstream os;
    os << what << " in word 0x" << std::hex << word;
    return AsmError({{Severity::Error, DiagCode::UnknownOpcode, {}, os.str()}});
  };
  if (word >> 31) {
    insn::Bundle b;
    const uint32_t qw = config.q_opcode_width;
    const uint32_t rw = config.target_reg_width;
    for (uint32_t slot = 0; slot < config.vliw_width; ++slot) {
      const uint32_t top = 30 - slot * (qw + rw);
      const uint32_t opcode_lsb = top + 1 - qw;
      const uint32_t code = get(word, opcode_lsb, qw);
      const QOpDef* def = config.find_op_by_opcode(code);
      if (!def) throw unknown("unknown q_opcode " + std::to_string(code));
      insn::QuantumOp op{def->mnemonic, def->kind, 0};
      if (def->kind != QOpKind::Qnop) op.operand = get(word, opcode_lsb - rw, rw);
      b.ops.push_back(op);
    }
    b.pi = get(word, 0, config.pi_width);
    return b;
  }
  const uint32_t code = get(word, kOpcodeLsb, 6);
  std::string name;
  for (const auto& [m, c] : config.opcodes) {
    if (c == code) name = m;
  }
  if (name.empty()) throw unknown("unknown opcode " + std::to_string(code));
  const auto rd = static_cast<uint8_t>(get(word, kRdLsb, 5));
  const auto rs = static_cast<uint8_t>(get(word, kRsLsb, 5));
  const auto rt = static_cast<uint8_t>(get(word, kRtLsb, 5));
  const int64_t imm10 = get_signed(word, 0, 10);
  if (name == "CMP") return insn::Cmp{rs, rt};
  if (name == "BR") {
    if (rd >= kNumCmpFlags) throw unknown("unknown comparison flag " + std::to_string(rd));
    return insn::Br{static_cast<CmpFlag>(rd), "", static_cast<int32_t>(get_signed(word, 0, 20))};
  }
  if (name == "FBR") {
    if (imm10 < 0 || imm10 >= kNumCmpFlags) throw unknown("unknown comparison flag " + std::to_string(imm10));
    return insn::Fbr{static_cast<CmpFlag>(imm10), rd};
  }
  if (name == "LDI") return insn::Ldi{rd, get_signed(word, 0, 20)};
  if (name == "LDUI") return insn::Ldui{rd, get(word, 0, 15), rs};
  if (name == "LD") return insn::Ld{rd, rt, imm10};
  if (name == "ST") return insn::St{rs, rt, imm10};
  if (name == "FMR") return insn::Fmr{rd, rs};
  if (name == "AND") return insn::Logic{insn::LogicOp::And, rd, rs, rt};
  if (name == "OR") return insn::Logic{insn::LogicOp::Or, rd, rs, rt};
  if (name == "XOR") return insn::Logic{insn::LogicOp::Xor, rd, rs, rt};
  if (name == "NOT") return insn::Not{rd, rt};
  if (name == "ADD") return insn::Arith{insn::ArithOp::Add, rd, rs, rt};
  if (name == "SUB") return insn::Arith{insn::ArithOp::Sub, rd, rs, rt};
  if (name == "QWAIT") return insn::Qwait{get(word, 0, config.qwait_imm_width)};
  if (name == "QWAITR") return insn::Qwaitr{rs};
  if (name == "SMIS") return insn::Smis{rd, mask_to_qubit_list(get(word, 0, config.qubit_mask_width))};
  if (name == "SMIT") return insn::Smit{rd, mask_to_pair_list(config.topology, get(word, 0, config.pair_mask_width))};
  throw unknown("opcode " + name + " has no decoder");
}

Program decode(std::span<const uint32_t> words, const InstantiationConfig& config) {
  Program program;
  std::vector<Diagnostic> errors;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const SourceLocation loc{static_cast<uint32_t>(i + 1), 0};
    try {
      program.statements.push_back({decode_word(words[i], config), loc});
    } catch (const AsmError& e) {
      for (auto d : e.diagnostics()) {
        d.location = loc;
        errors.push_back(d);
      }
    }
  }
  if (!errors.empty()) throw AsmError(std::move(errors));
  return program;
}

Assembled assemble(std::string_view text, const InstantiationConfig& config) {
  Program parsed = parse(text, config);
  LegalizeResult legal = legalize(parsed, config);
  Assembled out;
  out.program = split_bundles(legal.program, config);
  out.words = encode(out.program, config);
  out.warnings = std::move(legal.warnings);
  return out;
}

// ---------------------------------------------------------------------------
// Binary images

namespace {

void put_le(std::vector<uint8_t>& out, uint32_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint32_t get_le(std::span<const uint8_t> in, std::size_t at, int bytes) {
  uint32_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<uint32_t>(in[at + i]) << (8 * i);
  return v;
}

AsmError malformed(const std::string& what) {
  return AsmError({{Severity::Error, DiagCode::MalformedBinary, {}, what}});
}

}  // namespace

std::vector<uint8_t> serialize_image(const BinaryImage& image) {
  std::vector<uint8_t> out = {'E', 'Q', 'S', 'M'};
  put_le(out, kBinaryFormatVersion, 2);
  put_le(out, 0, 2);
  put_le(out, image.config_hash, 4);
  put_le(out, static_cast<uint32_t>(image.words.size()), 4);
  for (uint32_t w : image.words) put_le(out, w, 4);
  return out;
}

BinaryImage deserialize_image(std::span<const uint8_t> bytes) {
  if (bytes.size() < 16 || bytes[0] != 'E' || bytes[1] != 'Q' || bytes[2] != 'S' || bytes[3] != 'M') {
    throw malformed("not an eQASM binary (bad magic)");
  }
  const uint32_t version = get_le(bytes, 4, 2);
  if (version != kBinaryFormatVersion) throw malformed("unsupported binary format version " + std::to_string(version));
  BinaryImage image;
  image.config_hash = get_le(bytes, 8, 4);
  const uint32_t count = get_le(bytes, 12, 4);
  if (bytes.size() != 16 + std::size_t{count} * 4) {
    throw malformed("header announces " + std::to_string(count) + " words but payload has " +
                    std::to_string((bytes.size() - 16) / 4));
  }
  image.words.reserve(count);
  for (uint32_t i = 0; i < count; ++i) image.words.push_back(get_le(bytes, 16 + std::size_t{i} * 4, 4));
  return image;
}

void check_image_config(const BinaryImage& image, const InstantiationConfig& config) {
  const uint32_t expected = config_hash(config);
  if (image.config_hash != expected) {
    std::ostringstream os;
    os << "binary was assembled for configuration 0x" << std::hex << image.config_hash << ", not 0x" << expected;
    throw AsmError({{Severity::Error, DiagCode::ConfigHashMismatch, {}, os.str()}});
  }
}

void write_image(const std::filesystem::path& path, const BinaryImage& image) {
  const auto bytes = serialize_image(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

BinaryImage read_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_image(bytes);
}

}  // namespace eqasm
