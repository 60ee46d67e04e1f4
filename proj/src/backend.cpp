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

#include "eqasm/backend.hpp"

namespace eqasm {

void StateVectorBackend::reset(uint32_t num_qubits) { state_.emplace(num_qubits, seed_); }

void StateVectorBackend::apply(const QOpDef& op, uint32_t qubit) {
  if (op.semantics.type != GateSemantics::Type::Rotation) return;
  state_->apply_single(qubit, gate_matrix(op.semantics));
}

void StateVectorBackend::apply_pair(const QOpDef& op, uint32_t source, uint32_t target) {
  switch (op.semantics.type) {
    case GateSemantics::Type::Cz: state_->apply_cz(source, target); break;
    case GateSemantics::Type::Cnot: state_->apply_cnot(source, target); break;
    default: break;
  }
}

MeasureResult StateVectorBackend::measure(uint32_t qubit, std::optional<int> forced) {
  MeasureResult r;
  r.p1 = state_->probability_one(qubit);
  r.bit = state_->measure(qubit, forced);
  return r;
}

}  // namespace eqasm
