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

#include "eqasm/timeline.hpp"

#include <algorithm>

#include "eqasm/simulator.hpp"

namespace eqasm {

std::vector<TimedOperation> timeline_of(const Program& program, const InstantiationConfig& config) {
  TimestampManager timestamps;
  std::vector<uint32_t> gpr(config.num_gprs, 0);
  std::vector<uint64_t> s_regs(config.num_sregs, 0), t_regs(config.num_tregs, 0);
  ComparisonFlags flags;
  std::vector<TimedOperation> out;

  for (const auto& st : program.statements) {
    const Instruction& in = st.instruction;
    if (const auto* w = std::get_if<insn::Qwait>(&in)) {
      timestamps.advance(w->imm);
    } else if (const auto* wr = std::get_if<insn::Qwaitr>(&in)) {
      timestamps.advance(gpr[wr->rs] & 0xFFFFF);
    } else if (const auto* smis = std::get_if<insn::Smis>(&in)) {
      s_regs[smis->sd] = qubit_list_to_mask(smis->qubits);
    } else if (const auto* smit = std::get_if<insn::Smit>(&in)) {
      t_regs[smit->td] = pair_list_to_mask(config.topology, smit->pairs);
    } else if (const auto* b = std::get_if<insn::Bundle>(&in)) {
      int64_t interval = b->pi;
      for (const auto& op : b->ops) {
        if (op.kind == QOpKind::Wait) interval += op.operand;
      }
      timestamps.advance(interval);
      for (const auto& op : b->ops) {
        const uint64_t mask = op.kind == QOpKind::TwoQubit ? t_regs[op.operand] : s_regs[op.operand];
        const auto sel = resolve_opsel(config.topology, mask, op.kind);
        for (uint32_t q = 0; q < sel.size(); ++q) {
          if (sel[q] != OpSel::None) out.push_back({timestamps.last_point(), q, op.mnemonic, sel[q]});
        }
      }
    } else if (const auto* fmr = std::get_if<insn::Fmr>(&in)) {
      gpr[fmr->rd] = 0;
    } else {
      execute_register_op(in, gpr, flags);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace eqasm
