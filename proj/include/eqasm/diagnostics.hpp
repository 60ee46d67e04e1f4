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

#ifndef EQASM_DIAGNOSTICS_HPP_
#define EQASM_DIAGNOSTICS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqasm/instruction.hpp"

namespace eqasm {

enum class DiagCode {
  SyntaxError,
  UnknownMnemonic,
  UnresolvedLabel,
  DuplicateLabel,
  RegisterOutOfRange,
  OperandKindMismatch,
  NotAnAllowedPair,
  ConflictingPairSelection,
  MaskOverflow,
  PossibleSlotConflict,
  ImmediateOverflow,
  UnknownOpcode,
  ConfigHashMismatch,
  MalformedBinary,
};

std::string_view to_string(DiagCode code);

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  DiagCode code = DiagCode::SyntaxError;
  SourceLocation location;
  std::string message;
};

/// "file:line:col: error: message [Code]"
std::string format_diagnostic(const Diagnostic& d, std::string_view filename);

/// Raised by the assembler passes; carries every error found in the pass.
class AsmError : public std::runtime_error {
 public:
  explicit AsmError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  /// Code of the first diagnostic.
  DiagCode code() const { return diagnostics_.front().code; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace eqasm

#endif  // EQASM_DIAGNOSTICS_HPP_
