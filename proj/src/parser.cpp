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

#include <cctype>
#include <charconv>
#include <set>

#include "eqasm/assembler.hpp"
#include "eqasm/text.hpp"

namespace eqasm {

namespace {

enum class Tok { Ident, Number, Comma, Pipe, LBrace, RBrace, LParen, RParen, Colon, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int64_t value = 0;
  uint32_t column = 0;
};

struct LineError {
  Diagnostic diagnostic;
};

[[noreturn]] void fail(DiagCode code, uint32_t line, uint32_t column, std::string message) {
  throw LineError{{Severity::Error, code, {line, column}, std::move(message)}};
}

std::vector<Token> tokenize(std::string_view line, uint32_t line_no) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const auto col = static_cast<uint32_t>(i + 1);
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
      std::size_t j = i;
      while (j < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_' || line[j] == '.')) {
        ++j;
      }
      tokens.push_back({Tok::Ident, std::string(line.substr(i, j - i)), 0, col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < line.size() && std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
      const bool negative = c == '-';
      std::size_t j = negative ? i + 1 : i;
      int base = 10;
      if (j + 1 < line.size() && line[j] == '0' && (line[j + 1] == 'x' || line[j + 1] == 'X')) {
        base = 16;
        j += 2;
      } else if (j + 1 < line.size() && line[j] == '0' && (line[j + 1] == 'b' || line[j + 1] == 'B')) {
        base = 2;
        j += 2;
      }
      const std::size_t digits_begin = j;
      while (j < line.size() && std::isalnum(static_cast<unsigned char>(line[j]))) ++j;
      uint64_t magnitude = 0;
      const char* first = line.data() + digits_begin;
      const char* last = line.data() + j;
      auto [ptr, ec] = std::from_chars(first, last, magnitude, base);
      if (digits_begin == j || ec != std::errc() || ptr != last || magnitude > (uint64_t{1} << 62)) {
        fail(DiagCode::SyntaxError, line_no, col, "malformed number '" + std::string(line.substr(i, j - i)) + "'");
      }
      const int64_t v = negative ? -static_cast<int64_t>(magnitude) : static_cast<int64_t>(magnitude);
      tokens.push_back({Tok::Number, std::string(line.substr(i, j - i)), v, col});
      i = j;
      continue;
    }
    Tok kind;
    switch (c) {
      case ',': kind = Tok::Comma; break;
      case '|': kind = Tok::Pipe; break;
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ':': kind = Tok::Colon; break;
      default: fail(DiagCode::SyntaxError, line_no, col, std::string("unexpected character '") + c + "'");
    }
    tokens.push_back({kind, std::string(1, c), 0, col});
    ++i;
  }
  tokens.push_back({Tok::End, "", 0, static_cast<uint32_t>(line.size() + 1)});
  return tokens;
}

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::Comma: return "','";
    case Tok::Pipe: return "'|'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Colon: return "':'";
    case Tok::End: return "end of line";
  }
  return "?";
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, uint32_t line, const InstantiationConfig& config)
      : tokens_(std::move(tokens)), line_(line), config_(config) {}

  /// Leading "label:" prefixes.
  std::vector<std::pair<std::string, uint32_t>> take_labels() {
    std::vector<std::pair<std::string, uint32_t>> labels;
    while (peek().kind == Tok::Ident && peek(1).kind == Tok::Colon) {
      labels.emplace_back(peek().text, peek().column);
      pos_ += 2;
    }
    return labels;
  }

  bool at_end() const { return peek().kind == Tok::End; }
  uint32_t column() const { return peek().column; }

  Instruction instruction() {
    Instruction result = dispatch();
    if (!at_end()) {
      fail(DiagCode::SyntaxError, line_, peek().column, "unexpected " + std::string(describe(peek().kind)));
    }
    return result;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& advance() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

  const Token& expect(Tok kind) {
    if (peek().kind != kind) {
      fail(DiagCode::SyntaxError, line_, peek().column,
           "expected " + std::string(describe(kind)) + ", found " + std::string(describe(peek().kind)));
    }
    return advance();
  }

  int64_t number() { return expect(Tok::Number).value; }

  uint32_t register_index(char prefix, uint32_t count, DiagCode wrong_prefix = DiagCode::SyntaxError) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || t.text.size() < 2 ||
        std::toupper(static_cast<unsigned char>(t.text[0])) != prefix) {
      DiagCode code = DiagCode::SyntaxError;
      if (t.kind == Tok::Ident && t.text.size() >= 2 && std::isdigit(static_cast<unsigned char>(t.text[1]))) {
        code = wrong_prefix;
      }
      fail(code, line_, t.column, std::string("expected ") + prefix + " register, found '" + t.text + "'");
    }
    uint32_t index = 0;
    const char* first = t.text.data() + 1;
    const char* last = t.text.data() + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, index);
    if (ec != std::errc() || ptr != last) {
      fail(DiagCode::SyntaxError, line_, t.column, "malformed register '" + t.text + "'");
    }
    if (index >= count) {
      fail(DiagCode::RegisterOutOfRange, line_, t.column,
           t.text + " is out of range (" + std::to_string(count) + " available)");
    }
    advance();
    return index;
  }

  uint8_t gpr() { return static_cast<uint8_t>(register_index('R', config_.num_gprs)); }

  CmpFlag flag() {
    const Token& t = expect(Tok::Ident);
    auto f = parse_cmp_flag(t.text);
    if (!f) fail(DiagCode::SyntaxError, line_, t.column, "unknown comparison flag '" + t.text + "'");
    return *f;
  }

  Instruction dispatch() {
    const Token& head = peek();
    if (head.kind == Tok::Number) {
      insn::Bundle b;
      b.pi = advance().value;
      if (b.pi < 0) fail(DiagCode::SyntaxError, line_, head.column, "PI must be non-negative");
      expect(Tok::Comma);
      bundle_ops(b);
      return b;
    }
    if (head.kind != Tok::Ident) {
      fail(DiagCode::SyntaxError, line_, head.column, "expected an instruction, found " + std::string(describe(head.kind)));
    }
    const std::string name = to_upper(head.text);
    auto three_regs = [&](auto make) {
      advance();
      const uint8_t rd = gpr();
      expect(Tok::Comma);
      const uint8_t rs = gpr();
      expect(Tok::Comma);
      const uint8_t rt = gpr();
      return Instruction(make(rd, rs, rt));
    };
    if (name == "CMP") {
      advance();
      insn::Cmp i;
      i.rs = gpr();
      expect(Tok::Comma);
      i.rt = gpr();
      return i;
    }
    if (name == "BR") {
      advance();
      insn::Br i;
      i.flag = flag();
      expect(Tok::Comma);
      if (peek().kind == Tok::Number) {
        const int64_t v = advance().value;
        if (v < INT32_MIN || v > INT32_MAX) fail(DiagCode::ImmediateOverflow, line_, head.column, "offset too large");
        i.offset = static_cast<int32_t>(v);
      } else {
        i.label = expect(Tok::Ident).text;
      }
      return i;
    }
    if (name == "FBR") {
      advance();
      insn::Fbr i;
      i.flag = flag();
      expect(Tok::Comma);
      i.rd = gpr();
      return i;
    }
    if (name == "LDI") {
      advance();
      insn::Ldi i;
      i.rd = gpr();
      expect(Tok::Comma);
      i.imm = number();
      return i;
    }
    if (name == "LDUI") {
      advance();
      insn::Ldui i;
      i.rd = gpr();
      expect(Tok::Comma);
      i.imm = number();
      expect(Tok::Comma);
      i.rs = gpr();
      return i;
    }
    if (name == "LD" || name == "ST") {
      advance();
      const uint8_t a = gpr();
      expect(Tok::Comma);
      const uint8_t base = gpr();
      expect(Tok::LParen);
      const int64_t imm = number();
      expect(Tok::RParen);
      if (name == "LD") return insn::Ld{a, base, imm};
      return insn::St{a, base, imm};
    }
    if (name == "FMR") {
      advance();
      insn::Fmr i;
      i.rd = gpr();
      expect(Tok::Comma);
      i.qubit = register_index('Q', config_.topology.num_qubits);
      return i;
    }
    if (name == "AND" || name == "OR" || name == "XOR") {
      const insn::LogicOp op = name == "AND" ? insn::LogicOp::And : name == "OR" ? insn::LogicOp::Or : insn::LogicOp::Xor;
      return three_regs([op](uint8_t d, uint8_t s, uint8_t t) { return insn::Logic{op, d, s, t}; });
    }
    if (name == "ADD" || name == "SUB") {
      const insn::ArithOp op = name == "ADD" ? insn::ArithOp::Add : insn::ArithOp::Sub;
      return three_regs([op](uint8_t d, uint8_t s, uint8_t t) { return insn::Arith{op, d, s, t}; });
    }
    if (name == "NOT") {
      advance();
      insn::Not i;
      i.rd = gpr();
      expect(Tok::Comma);
      i.rt = gpr();
      return i;
    }
    if (name == "QWAIT" && !(peek(1).kind == Tok::Number && peek(2).kind == Tok::Pipe)) {
      advance();
      insn::Qwait i;
      i.imm = number();
      if (i.imm < 0) fail(DiagCode::SyntaxError, line_, head.column, "waiting time must be non-negative");
      return i;
    }
    if (name == "QWAITR") {
      advance();
      return insn::Qwaitr{gpr()};
    }
    if (name == "SMIS") {
      advance();
      insn::Smis i;
      i.sd = static_cast<uint8_t>(register_index('S', config_.num_sregs));
      expect(Tok::Comma);
      expect(Tok::LBrace);
      while (peek().kind != Tok::RBrace) {
        const Token& t = expect(Tok::Number);
        if (t.value < 0) fail(DiagCode::SyntaxError, line_, t.column, "qubit index must be non-negative");
        i.qubits.push_back(static_cast<uint32_t>(std::min<int64_t>(t.value, UINT32_MAX)));
        if (peek().kind != Tok::RBrace) expect(Tok::Comma);
      }
      expect(Tok::RBrace);
      return i;
    }
    if (name == "SMIT") {
      advance();
      insn::Smit i;
      i.td = static_cast<uint8_t>(register_index('T', config_.num_tregs));
      expect(Tok::Comma);
      expect(Tok::LBrace);
      while (peek().kind != Tok::RBrace) {
        expect(Tok::LParen);
        const Token& a = expect(Tok::Number);
        expect(Tok::Comma);
        const Token& b = expect(Tok::Number);
        expect(Tok::RParen);
        if (a.value < 0 || b.value < 0) fail(DiagCode::SyntaxError, line_, a.column, "qubit index must be non-negative");
        i.pairs.push_back({static_cast<uint32_t>(std::min<int64_t>(a.value, UINT32_MAX)),
                           static_cast<uint32_t>(std::min<int64_t>(b.value, UINT32_MAX))});
        if (peek().kind != Tok::RBrace) expect(Tok::Comma);
      }
      expect(Tok::RBrace);
      return i;
    }
    insn::Bundle b;
    bundle_ops(b);
    return b;
  }

  void bundle_ops(insn::Bundle& b) {
    b.ops.push_back(quantum_op());
    while (peek().kind == Tok::Pipe) {
      advance();
      b.ops.push_back(quantum_op());
    }
  }

  insn::QuantumOp quantum_op() {
    const Token& t = expect(Tok::Ident);
    const QOpDef* def = config_.find_op(t.text);
    if (!def) fail(DiagCode::UnknownMnemonic, line_, t.column, "unknown quantum operation '" + t.text + "'");
    insn::QuantumOp op;
    op.mnemonic = def->mnemonic;
    op.kind = def->kind;
    switch (def->kind) {
      case QOpKind::Single:
      case QOpKind::Measure:
        op.operand = register_index('S', config_.num_sregs, DiagCode::OperandKindMismatch);
        break;
      case QOpKind::TwoQubit:
        op.operand = register_index('T', config_.num_tregs, DiagCode::OperandKindMismatch);
        break;
      case QOpKind::Wait: {
        const Token& n = expect(Tok::Number);
        if (n.value < 0 || n.value > UINT32_MAX) fail(DiagCode::ImmediateOverflow, line_, n.column, "bad interval");
        op.operand = static_cast<uint32_t>(n.value);
        break;
      }
      case QOpKind::Qnop: break;
    }
    return op;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  uint32_t line_;
  const InstantiationConfig& config_;
};

}  // namespace

Program parse(std::string_view text, const InstantiationConfig& config) {
  Program program;
  std::vector<Diagnostic> errors;
  std::map<std::string, uint32_t> label_lines;

  uint32_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    try {
      LineParser p(tokenize(line, line_no), line_no, config);
      for (const auto& [label, col] : p.take_labels()) {
        if (program.labels.contains(label)) {
          errors.push_back({Severity::Error, DiagCode::DuplicateLabel, {line_no, col},
                            "label '" + label + "' already defined on line " + std::to_string(label_lines[label])});
          continue;
        }
        program.labels[label] = program.statements.size();
        label_lines[label] = line_no;
      }
      if (!p.at_end()) {
        const uint32_t col = p.column();
        program.statements.push_back({p.instruction(), {line_no, col}});
      }
    } catch (const LineError& e) {
      errors.push_back(e.diagnostic);
    }
    if (end == text.size()) break;
    start = end + 1;
  }

  for (const auto& st : program.statements) {
    if (const auto* br = std::get_if<insn::Br>(&st.instruction)) {
      if (!br->label.empty() && !program.labels.contains(br->label)) {
        errors.push_back({Severity::Error, DiagCode::UnresolvedLabel, st.location,
                          "branch target '" + br->label + "' is not defined"});
      }
    }
  }
  if (!errors.empty()) throw AsmError(std::move(errors));
  return program;
}

}  // namespace eqasm
