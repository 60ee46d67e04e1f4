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

#ifndef EQASM_ASSEMBLER_HPP_
#define EQASM_ASSEMBLER_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "eqasm/config.hpp"
#include "eqasm/diagnostics.hpp"
#include "eqasm/instruction.hpp"

namespace eqasm {

// Pipeline: parse -> legalize -> split_bundles -> encode. Each pass throws
// AsmError with all errors it found.

/// Parses assembly text. Mnemonics and register prefixes are case-insensitive;
/// '#' starts a comment; a bundle without an explicit PI gets PI = 1.
Program parse(std::string_view text, const InstantiationConfig& config);

struct LegalizeResult {
  Program program;
  std::vector<Diagnostic> warnings;
};

/// Checks target-register literals against the topology and mask widths and
/// canonicalizes them (qubits ascending, pairs by edge address). Warns when
/// two slots of a bundle may address the same qubit given the statically
/// known register contents.
LegalizeResult legalize(const Program& program, const InstantiationConfig& config);

/// Breaks bundles into words of exactly vliw_width slots (continuations get
/// PI = 0, QNOP pads the last word) and moves PI values above the field's
/// range into a preceding QWAIT. Labels are remapped.
Program split_bundles(const Program& program, const InstantiationConfig& config);

/// Replaces branch labels by signed word offsets relative to the branch.
Program resolve_branches(const Program& program);

// Instruction word layouts (bit 31 first):
//   bundle  [1 | (q_opcode:9 | Si/Ti:5) x w | unused | PI:pi_width]
//   SMIS    [0 | opcode:6 | Sd:5 | unused:13 | mask:7]      (mask in the low bits)
//   SMIT    [0 | opcode:6 | Td:5 | unused:4  | mask:16]
//   QWAIT   [0 | opcode:6 | unused:5 | imm:20]
//   QWAITR  [0 | opcode:6 | unused:5 | Rs:5 | unused:15]
//   LDI     [0 | opcode:6 | Rd:5 | imm:20 signed]
//   BR      [0 | opcode:6 | flag:5 | offset:20 signed]
//   LDUI    [0 | opcode:6 | Rd:5 | Rs:5 | imm:15]
//   others  [0 | opcode:6 | Rd:5 | Rs:5 | Rt:5 | imm:10 signed]
//     CMP uses Rs/Rt, FBR puts the flag in imm, FMR puts Qi in Rs,
//     NOT uses Rd/Rt, LD uses Rd/Rt/imm, ST uses Rs/Rt/imm.
std::vector<uint32_t> encode(const Program& program, const InstantiationConfig& config);

/// Disassembles one word. Throws AsmError(UnknownOpcode) for unassigned codes.
Instruction decode_word(uint32_t word, const InstantiationConfig& config);
Program decode(std::span<const uint32_t> words, const InstantiationConfig& config);

struct Assembled {
  Program program;  // after legalize + split, labels still symbolic
  std::vector<uint32_t> words;
  std::vector<Diagnostic> warnings;
};

Assembled assemble(std::string_view text, const InstantiationConfig& config);

// Binary image: 16-byte little-endian header {"EQSM", u16 version, u16 reserved,
// u32 config hash, u32 word count} followed by the words.
inline constexpr uint16_t kBinaryFormatVersion = 1;

struct BinaryImage {
  uint32_t config_hash = 0;
  std::vector<uint32_t> words;
};

std::vector<uint8_t> serialize_image(const BinaryImage& image);
/// Throws AsmError(MalformedBinary) on a bad header or truncated payload.
BinaryImage deserialize_image(std::span<const uint8_t> bytes);
/// Throws AsmError(ConfigHashMismatch) if the image was built for another config.
void check_image_config(const BinaryImage& image, const InstantiationConfig& config);

void write_image(const std::filesystem::path& path, const BinaryImage& image);
BinaryImage read_image(const std::filesystem::path& path);

}  // namespace eqasm

#endif  // EQASM_ASSEMBLER_HPP_
