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

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "eqasm/assembler.hpp"
#include "eqasm/dse.hpp"
#include "eqasm/quantum_state.hpp"
#include "eqasm/simulator.hpp"

using namespace eqasm;

namespace {

uint64_t cdiv(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

// Counting oracle written directly from the scheme definitions.
struct OracleCount {
  uint64_t qwaits = 0, bundles = 0;
};

OracleCount oracle_count(const ScheduledCircuit& c, const DseConfig& cfg) {
  std::map<uint64_t, std::vector<std::string>> by_cycle;
  for (const auto& op : c.ops) by_cycle[op.start_cycle].push_back(op.mnemonic);
  OracleCount out;
  uint64_t last = 0;
  const uint64_t w = cfg.vliw_width;
  const uint64_t max_qwait = (1u << 20) - 1;
  for (const auto& [cycle, names] : by_cycle) {
    const uint64_t gap = cycle - last;
    last = cycle;
    const uint64_t k = cfg.somq ? std::set<std::string>(names.begin(), names.end()).size() : names.size();
    const uint64_t waits = std::max<uint64_t>(1, cdiv(gap, max_qwait));
    if (cfg.scheme == TimingScheme::Ts1) {
      out.qwaits += waits;
      out.bundles += cdiv(k, w);
    } else if (cfg.scheme == TimingScheme::Ts2) {
      if (gap <= 7) {
        out.bundles += cdiv(k + 1, w);
      } else {
        out.qwaits += waits;
        out.bundles += cdiv(k, w);
      }
    } else {
      if (gap >= (1u << cfg.pi_width)) out.qwaits += waits;
      out.bundles += cdiv(k, w);
    }
  }
  return out;
}

const std::vector<std::string> kSingles = {"X", "Y", "X90", "Y90", "Xm90", "Ym90", "I", "MEASZ"};

ScheduledCircuit random_circuit(uint64_t seed, int points = 30) {
  std::mt19937_64 rng(seed);
  ScheduledCircuit c;
  c.name = "random";
  c.topology = ChipTopology::surface7();
  uint64_t t = rng() % 3;
  for (int p = 0; p < points; ++p) {
    std::vector<bool> busy(7, false);
    const int n = 1 + static_cast<int>(rng() % 7);
    for (int i = 0; i < n; ++i) {
      if (rng() % 4 == 0) {
        const QubitPair e = c.topology.edges[rng() % c.topology.num_edges()];
        if (busy[e.source] || busy[e.target]) continue;
        busy[e.source] = busy[e.target] = true;
        c.ops.push_back({t, "CZ", {e.source, e.target}});
      } else {
        const uint32_t q = rng() % 7;
        if (busy[q]) continue;
        busy[q] = true;
        // Few distinct names so SOMQ has something to merge.
        c.ops.push_back({t, kSingles[rng() % (rng() % 2 ? 2 : kSingles.size())], {q}});
      }
    }
    const uint64_t r = rng() % 10;
    t += r < 6 ? 1 + rng() % 3 : r < 9 ? 4 + rng() % 12 : 16 + rng() % 40;
  }
  return c;
}

ScheduledCircuit small_benchmark(BenchmarkKind kind, uint64_t seed) {
  BenchmarkParams p;
  p.cliffords = 200;
  p.layers = 300;
  p.gates = 600;
  return generate_benchmark(kind, p, seed);
}

const BenchmarkKind kKinds[] = {BenchmarkKind::RbLike, BenchmarkKind::ParallelLike, BenchmarkKind::SequentialLike};

}  // namespace

TEST_SUITE("dse") {
  TEST_CASE("a single operation under config 1, w=1 costs a QWAIT and a bundle") {
    ScheduledCircuit c;
    c.topology = ChipTopology::surface7();
    c.ops = {{0, "X", {0}}};
    const DseReport r = count_instructions(c, numbered_config(1, 1));
    CHECK(r.total_instructions == 2);
    CHECK(r.qwait_instructions == 1);
    CHECK(r.bundle_instructions == 1);
    CHECK(r.effective_ops_per_bundle == 1.0);
  }

  TEST_CASE("numbered configs and the sweep grid") {
    CHECK(numbered_config(9, 2) == DseConfig{9, TimingScheme::Ts3, 3, true, 2});
    CHECK(numbered_config(4, 1) == DseConfig{4, TimingScheme::Ts3, 2, false, 1});
    const auto cells = default_sweep_configs();
    CHECK(cells.size() == 39);
    CHECK(std::none_of(cells.begin(), cells.end(), [](const DseConfig& c) { return c.id == 2 && c.vliw_width == 1; }));
    CHECK_THROWS_AS(validate_dse_config({2, TimingScheme::Ts2, 0, false, 1}), DseError);
    CHECK_THROWS_AS(validate_dse_config({1, TimingScheme::Ts1, 2, false, 1}), DseError);
    CHECK_THROWS_AS(validate_dse_config({0, TimingScheme::Ts3, 1, false, 5}), DseError);
    CHECK_THROWS_AS(numbered_config(11, 1), DseError);
  }

  TEST_CASE("every cell instantiates to a valid configuration") {
    for (const auto& cell : default_sweep_configs()) {
      for (const auto& topo : {ChipTopology::surface7(), ChipTopology::grid(2, 4)}) {
        const InstantiationConfig inst = dse_instantiation(topo, cell);
        CAPTURE(inst.name);
        CHECK(validate_config(inst).empty());
        CHECK(inst.num_sregs >= cell.vliw_width);
      }
    }
    CHECK(ts2_slot_wait_limit() == 7);
  }

  TEST_CASE("circuit validation") {
    ScheduledCircuit c;
    c.topology = ChipTopology::surface7();
    c.ops = {{1, "X", {0}}, {0, "Y", {1}}};
    CHECK_THROWS_AS(validate_circuit(c), DseError);
    c.ops = {{0, "CZ", {0, 1}}};
    CHECK_THROWS_AS(validate_circuit(c), DseError);
    c.ops = {{0, "X", {0}}, {0, "Y", {0}}};
    CHECK_THROWS_AS(validate_circuit(c), DseError);
    c.ops = {{0, "T", {0}}};
    CHECK_THROWS_AS(validate_circuit(c), DseError);
    c.ops = {{0, "X", {9}}};
    CHECK_THROWS_AS(validate_circuit(c), DseError);
    c.ops = {{0, "CZ", {2, 0}}, {0, "X", {1}}, {3, "MEASZ", {0}}};
    CHECK_NOTHROW(validate_circuit(c));
  }

  TEST_CASE("counts agree with the direct counting oracle") {
    for (uint64_t seed = 0; seed < 60; ++seed) {
      const ScheduledCircuit c = random_circuit(seed);
      for (const auto& cell : default_sweep_configs()) {
        const DseReport r = count_instructions(c, cell);
        const OracleCount o = oracle_count(c, cell);
        REQUIRE(r.qwait_instructions == o.qwaits);
        REQUIRE(r.bundle_instructions == o.bundles);
        REQUIRE(r.total_instructions == o.qwaits + o.bundles);
      }
    }
  }

  TEST_CASE("two-qubit RB-like instance shrinks from w=1 to w=4 under config 1") {
    BenchmarkParams p;
    p.num_qubits = 2;
    p.cliffords = 27;  // about 100 primitive gates
    const ScheduledCircuit c = generate_benchmark(BenchmarkKind::RbLike, p, 4);
    CHECK(c.ops.size() > 80);
    const uint64_t w1 = count_instructions(c, numbered_config(1, 1)).total_instructions;
    const uint64_t w4 = count_instructions(c, numbered_config(1, 4)).total_instructions;
    CHECK(w4 < w1);
    CHECK(w1 == oracle_count(c, numbered_config(1, 1)).qwaits + oracle_count(c, numbered_config(1, 1)).bundles);
  }

  TEST_CASE("Clifford table averages 1.875 primitives") {
    const auto& table = clifford_decompositions();
    std::size_t total = 0;
    for (const auto& seq : table) total += seq.size();
    CHECK(total == 45);
    // Every entry is a product of x/y rotations only.
    for (const auto& seq : table) {
      for (const auto& g : seq) CHECK(std::find(kSingles.begin(), kSingles.end(), g) != kSingles.end());
    }
    // The 24 products are pairwise distinct up to global phase.
    const InstantiationConfig cfg = InstantiationConfig::qumav2_default();
    std::vector<Matrix2> products;
    for (const auto& seq : table) {
      Matrix2 m = {1.0, 0.0, 0.0, 1.0};
      for (const auto& g : seq) m = multiply(gate_matrix(cfg.find_op(g)->semantics), m);
      products.push_back(m);
    }
    for (std::size_t i = 0; i < products.size(); ++i) {
      for (std::size_t j = i + 1; j < products.size(); ++j) {
        // |tr(A^dagger B)| = 2 iff A and B agree up to phase.
        Complex tr = 0.0;
        for (int k = 0; k < 4; ++k) tr += std::conj(products[i][k]) * products[j][k];
        CHECK(std::abs(std::abs(tr) - 2.0) > 1e-6);
      }
    }
  }

  TEST_CASE("rb_like streams hold about 7680 primitives per qubit") {
    for (uint64_t seed : {1u, 2u, 3u}) {
      const ScheduledCircuit c = generate_benchmark(BenchmarkKind::RbLike, {}, seed);
      std::vector<uint64_t> per_qubit(c.num_qubits(), 0);
      for (const auto& op : c.ops) ++per_qubit[op.qubits[0]];
      for (uint64_t n : per_qubit) CHECK(std::abs(static_cast<double>(n) - 7680.0) <= 0.05 * 7680.0);
    }
  }

  TEST_CASE("parallel_like without two-qubit gates merges every layer") {
    BenchmarkParams p;
    p.two_qubit_fraction = 0.0;
    p.layers = 200;
    const ScheduledCircuit c = generate_benchmark(BenchmarkKind::ParallelLike, p, 9);
    CHECK(two_qubit_fraction(c) == 0.0);
    const DseReport r = count_instructions(c, numbered_config(7, 1));
    CHECK(r.bundle_instructions == 201);  // 200 layers plus the measurement point
    const double f = two_qubit_fraction(generate_benchmark(BenchmarkKind::ParallelLike, {}, 9));
    CHECK(f > 0.0);
    CHECK(f < 0.01);
  }

  TEST_CASE("sequential_like hits the requested two-qubit fraction") {
    for (uint64_t seed : {1u, 5u, 8u}) {
      const ScheduledCircuit c = generate_benchmark(BenchmarkKind::SequentialLike, {}, seed);
      CHECK(c.num_qubits() == 8);
      CHECK(std::abs(two_qubit_fraction(c) - 0.39) <= 0.02);
      CHECK_NOTHROW(validate_circuit(c));
    }
  }

  TEST_CASE("monotone in w, SOMQ dominance and config 2 against config 1") {
    std::vector<ScheduledCircuit> circuits;
    for (auto kind : kKinds) circuits.push_back(small_benchmark(kind, 3));
    for (uint64_t seed = 100; seed < 130; ++seed) circuits.push_back(random_circuit(seed));
    for (const auto& c : circuits) {
      auto total = [&](int id, uint32_t w) { return count_instructions(c, numbered_config(id, w)).total_instructions; };
      for (int id = 1; id <= 10; ++id) {
        for (uint32_t w = id == 2 ? 3 : 2; w <= 4; ++w) CHECK(total(id, w) <= total(id, w - 1));
      }
      for (int id = 3; id <= 6; ++id) {
        for (uint32_t w = 1; w <= 4; ++w) CHECK(total(id + 4, w) <= total(id, w));
      }
      for (uint32_t w = 2; w <= 4; ++w) CHECK(total(2, w) <= total(1, w));
    }
  }

  TEST_CASE("sweep is deterministic and normalized to config 1, w=1") {
    const std::vector<ScheduledCircuit> circuits = {small_benchmark(BenchmarkKind::SequentialLike, 2)};
    const auto a = sweep(default_sweep_configs(), circuits);
    const auto b = sweep(default_sweep_configs(), circuits);
    REQUIRE(a.size() == 39);
    std::ostringstream sa, sb;
    write_sweep_csv(sa, a);
    write_sweep_csv(sb, b);
    const std::string csv = sa.str();
    CHECK(csv == sb.str());
    CHECK(a.front().config == numbered_config(1, 1));
    CHECK(a.front().normalized == 1.0);
    CHECK(csv.rfind("benchmark,config_id,w,w_pi,scheme,somq,total,qwaits,bundles,eff_ops_per_bundle,normalized\n",
                         0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 40);
  }

  TEST_CASE("LRU accounting adds exactly the setup words") {
    const ScheduledCircuit c = small_benchmark(BenchmarkKind::SequentialLike, 6);
    for (const auto& cell : default_sweep_configs()) {
      const DseReport plain = count_instructions(c, cell);
      const DseReport lru = count_instructions(c, cell, {SetupAccounting::Lru, 16});
      CHECK(lru.setup_instructions == plain.setup_instructions);
      CHECK(lru.total_instructions == plain.total_instructions + plain.setup_instructions);
      CHECK(lru.r_req >= plain.r_req);
    }
  }

  TEST_CASE("R_req of a back-to-back stream") {
    ScheduledCircuit c;
    c.topology = ChipTopology::surface7();
    for (uint64_t t = 0; t < 64; ++t) {
      for (uint32_t q = 0; q < 3; ++q) c.ops.push_back({t, "X90", {q}});
    }
    // Config 1, w=1: four words every cycle.
    CHECK(count_instructions(c, numbered_config(1, 1)).r_req == 4.0);
    // Config 7, w=1: one merged slot, PI carries the interval.
    CHECK(count_instructions(c, numbered_config(7, 1)).r_req == 1.0);
  }

  TEST_CASE("materialized programs assemble to the counted word count") {
    std::vector<ScheduledCircuit> circuits;
    for (auto kind : kKinds) circuits.push_back(small_benchmark(kind, 11));
    for (uint64_t seed = 200; seed < 220; ++seed) circuits.push_back(random_circuit(seed));
    for (const auto& c : circuits) {
      for (const auto& cell : default_sweep_configs()) {
        const DseReport r = count_instructions(c, cell, {SetupAccounting::Lru, 16});
        const Assembled a = assemble(materialize(c, cell), dse_instantiation(c.topology, cell));
        REQUIRE(a.words.size() == r.total_instructions);
        REQUIRE(r.total_instructions == r.qwait_instructions + r.bundle_instructions + r.setup_instructions);
      }
    }
  }

  TEST_CASE("materialized programs replay the schedule in the simulator") {
    for (uint64_t seed = 300; seed < 310; ++seed) {
      const ScheduledCircuit c = random_circuit(seed, 15);
      std::multiset<std::tuple<int64_t, uint32_t, std::string>> expected;
      for (const auto& op : c.ops) expected.emplace(op.start_cycle, op.qubits[0], op.mnemonic);
      for (const auto& cell : default_sweep_configs()) {
        InstantiationConfig inst = dse_instantiation(c.topology, cell);
        inst.issue_rate = 64;
        const Assembled a = assemble(materialize(c, cell), inst);
        MockBackend backend;
        const SimResult r = simulate(inst, decode(a.words, inst).instructions(), backend);
        REQUIRE(r.reason == HaltReason::Completed);
        std::multiset<std::tuple<int64_t, uint32_t, std::string>> got;
        for (const auto& t : r.triggers) {
          if (t.role != OpSel::Tgt) got.emplace(t.timestamp, t.qubit, t.mnemonic);
        }
        REQUIRE(got == expected);
      }
    }
  }

  TEST_CASE("benchmark names parse") {
    CHECK(parse_benchmark_kind("rb") == BenchmarkKind::RbLike);
    CHECK(parse_benchmark_kind("parallel_like") == BenchmarkKind::ParallelLike);
    CHECK(parse_benchmark_kind("sequential") == BenchmarkKind::SequentialLike);
    CHECK_THROWS_AS(parse_benchmark_kind("grover"), DseError);
  }
}
