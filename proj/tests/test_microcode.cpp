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

#include "doctest.h"
#include "eqasm/microcode.hpp"

using namespace eqasm;

namespace {

// Reference: scan the edge list once per qubit.
std::optional<std::vector<OpSel>> edge_scan(const ChipTopology& t, uint32_t mask) {
  std::vector<OpSel> out(t.num_qubits, OpSel::None);
  for (uint32_t q = 0; q < t.num_qubits; ++q) {
    int src = 0, tgt = 0;
    for (uint32_t e = 0; e < t.num_edges(); ++e) {
      if (!((mask >> e) & 1)) continue;
      src += t.edges[e].source == q;
      tgt += t.edges[e].target == q;
    }
    if (src + tgt > 1) return std::nullopt;
    out[q] = static_cast<OpSel>((tgt ? 2 : 0) | (src ? 1 : 0));
  }
  return out;
}

}  // namespace

TEST_SUITE("microcode") {
  TEST_CASE("pair mask with only edge 0 selects qubit 2 as source and qubit 0 as target") {
    const auto sel = resolve_opsel(ChipTopology::surface7(), 1u, QOpKind::TwoQubit);
    CHECK(sel[0] == OpSel::Tgt);
    CHECK(sel[2] == OpSel::Src);
    for (uint32_t q : {1u, 3u, 4u, 5u, 6u}) CHECK(sel[q] == OpSel::None);
  }

  TEST_CASE("empty qubit mask selects nothing") {
    for (OpSel s : resolve_opsel(ChipTopology::surface7(), 0, QOpKind::Single)) CHECK(s == OpSel::None);
  }

  TEST_CASE("qubit mask selects the single micro-operation") {
    const auto sel = resolve_opsel(ChipTopology::surface7(), 0b1000101, QOpKind::Measure);
    CHECK(sel[0] == OpSel::Single);
    CHECK(sel[2] == OpSel::Single);
    CHECK(sel[6] == OpSel::Single);
    CHECK(sel[1] == OpSel::None);
  }

  TEST_CASE("QNOP selects nothing regardless of the operand") {
    for (OpSel s : resolve_opsel(ChipTopology::surface7(), 0x7F, QOpKind::Qnop)) CHECK(s == OpSel::None);
  }

  TEST_CASE("exhaustive pair masks agree with the edge scan") {
    const ChipTopology t = ChipTopology::surface7();
    int legal = 0;
    for (uint32_t mask = 0; mask < (1u << 16); ++mask) {
      const auto expected = edge_scan(t, mask);
      if (!expected) {
        REQUIRE_THROWS_AS(resolve_opsel(t, mask, QOpKind::TwoQubit), OpSelConflict);
        continue;
      }
      ++legal;
      const auto sel = resolve_opsel(t, mask, QOpKind::TwoQubit);
      REQUIRE(sel == *expected);
      // OpSel_0 = (T[0] | T[9]) :: (T[1] | T[8])
      const uint32_t hi = ((mask >> 0) | (mask >> 9)) & 1;
      const uint32_t lo = ((mask >> 1) | (mask >> 8)) & 1;
      REQUIRE(static_cast<uint32_t>(sel[0]) == ((hi << 1) | lo));
    }
    CHECK(legal > 0);
  }

  TEST_CASE("conflicting pair selection names the qubit") {
    try {
      resolve_opsel(ChipTopology::surface7(), 0b11, QOpKind::TwoQubit);  // (2,0) and (0,3)
      FAIL("expected a conflict");
    } catch (const OpSelConflict& e) {
      CHECK(e.qubit() == 0);
    }
  }

  TEST_CASE("microcode decode") {
    const InstantiationConfig c = InstantiationConfig::qumav2_default();
    const DecodedQOp cz = microcode_decode(c, c.find_op("CZ")->q_opcode);
    CHECK(cz.micro_ops == std::vector<OpSel>{OpSel::Src, OpSel::Tgt});
    CHECK(microcode_decode(c, 0).micro_ops.empty());
    const DecodedQOp cx = microcode_decode(c, c.find_op("C_X")->q_opcode);
    CHECK(cx.micro_ops == std::vector<OpSel>{OpSel::Single});
    CHECK(cx.flag_select == 1);
    CHECK(microcode_decode(c, c.find_op("MEASZ")->q_opcode).micro_ops == std::vector<OpSel>{OpSel::Single});
    CHECK_THROWS_AS(microcode_decode(c, 0x1FF), UnknownQOpcode);
  }
}
