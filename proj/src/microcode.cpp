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

#include "eqasm/microcode.hpp"

#include <string>

namespace eqasm {

std::string_view to_string(OpSel sel) {
  switch (sel) {
    case OpSel::None: return "00";
    case OpSel::Src: return "01";
    case OpSel::Tgt: return "10";
    case OpSel::Single: return "11";
  }
  return "??";
}

OpSelConflict::OpSelConflict(uint32_t qubit, std::string_view message)
    : std::runtime_error(std::string(message)), qubit_(qubit) {}

UnknownQOpcode::UnknownQOpcode(uint32_t q_opcode)
    : std::runtime_error("q_opcode " + std::to_string(q_opcode) + " is not in the control store"),
      q_opcode_(q_opcode) {}

std::vector<OpSel> resolve_opsel(const ChipTopology& topology, uint64_t mask, QOpKind kind) {
  std::vector<OpSel> sel(topology.num_qubits, OpSel::None);
  switch (kind) {
    case QOpKind::Single:
    case QOpKind::Measure:
      for (uint32_t q = 0; q < topology.num_qubits && q < 64; ++q) {
        if ((mask >> q) & 1) sel[q] = OpSel::Single;
      }
      break;
    case QOpKind::TwoQubit: {
      std::vector<uint8_t> hits(topology.num_qubits, 0);
      for (uint32_t e = 0; e < topology.num_edges() && e < 64; ++e) {
        if (!((mask >> e) & 1)) continue;
        const QubitPair& p = topology.edges[e];
        sel[p.source] = static_cast<OpSel>(static_cast<uint8_t>(sel[p.source]) | 0b01);
        sel[p.target] = static_cast<OpSel>(static_cast<uint8_t>(sel[p.target]) | 0b10);
        for (uint32_t q : {p.source, p.target}) {
          if (++hits[q] > 1) {
            throw OpSelConflict(q, "qubit " + std::to_string(q) + " is selected by more than one edge");
          }
        }
      }
      break;
    }
    case QOpKind::Qnop:
    case QOpKind::Wait:
      break;
  }
  return sel;
}

DecodedQOp microcode_decode(const InstantiationConfig& config, uint32_t q_opcode) {
  const QOpDef* def = config.find_op_by_opcode(q_opcode);
  if (!def) throw UnknownQOpcode(q_opcode);
  DecodedQOp out;
  out.def = def;
  out.flag_select = def->flag_select;
  switch (def->kind) {
    case QOpKind::Single:
    case QOpKind::Measure: out.micro_ops = {OpSel::Single}; break;
    case QOpKind::TwoQubit: out.micro_ops = {OpSel::Src, OpSel::Tgt}; break;
    case QOpKind::Qnop:
    case QOpKind::Wait: break;
  }
  return out;
}

}  // namespace eqasm
