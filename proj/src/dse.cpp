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

#include "eqasm/dse.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

namespace eqasm {

std::string_view to_string(TimingScheme scheme) {
  switch (scheme) {
    case TimingScheme::Ts1: return "ts1";
    case TimingScheme::Ts2: return "ts2";
    case TimingScheme::Ts3: return "ts3";
  }
  return "?";
}

std::string_view to_string(SetupAccounting accounting) {
  return accounting == SetupAccounting::Lru ? "lru" : "uncounted";
}

std::string_view to_string(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::RbLike: return "rb_like";
    case BenchmarkKind::ParallelLike: return "parallel_like";
    case BenchmarkKind::SequentialLike: return "sequential_like";
  }
  return "?";
}

BenchmarkKind parse_benchmark_kind(std::string_view name) {
  if (name == "rb" || name == "rb_like") return BenchmarkKind::RbLike;
  if (name == "parallel" || name == "parallel_like") return BenchmarkKind::ParallelLike;
  if (name == "sequential" || name == "sequential_like") return BenchmarkKind::SequentialLike;
  throw DseError(DseErrorKind::IllegalConfig, "unknown benchmark '" + std::string(name) + "'");
}

DseConfig numbered_config(int id, uint32_t vliw_width) {
  DseConfig c;
  c.id = id;
  c.vliw_width = vliw_width;
  if (id == 1) {
    c.scheme = TimingScheme::Ts1;
  } else if (id == 2) {
    c.scheme = TimingScheme::Ts2;
  } else if (id >= 3 && id <= 10) {
    c.scheme = TimingScheme::Ts3;
    c.pi_width = static_cast<uint32_t>((id - 3) % 4 + 1);
    c.somq = id >= 7;
  } else {
    throw DseError(DseErrorKind::IllegalConfig, "config id must be within 1..10");
  }
  return c;
}

std::vector<DseConfig> default_sweep_configs() {
  std::vector<DseConfig> out;
  for (int id = 1; id <= 10; ++id) {
    for (uint32_t w = 1; w <= 4; ++w) {
      if (id == 2 && w < 2) continue;
      out.push_back(numbered_config(id, w));
    }
  }
  return out;
}

void validate_dse_config(const DseConfig& c) {
  auto bad = [](const std::string& m) { throw DseError(DseErrorKind::IllegalConfig, m); };
  if (c.vliw_width < 1 || c.vliw_width > 4) bad("VLIW width must be within 1..4");
  if (c.pi_width > 4) bad("PI width must be within 0..4");
  if (c.scheme == TimingScheme::Ts1 && c.pi_width != 0) bad("ts1 has no PI field");
  if (c.scheme == TimingScheme::Ts2) {
    if (c.pi_width != 0) bad("ts2 has no PI field");
    if (c.vliw_width < 2) bad("ts2 needs a VLIW width of at least 2");
  }
  if (c.scheme == TimingScheme::Ts3 && c.pi_width == 0) bad("ts3 needs a PI field");
}

// ---------------------------------------------------------------------------
// Operation table and instantiation

namespace {

// Slot order inside a timing point follows this table.
constexpr std::array<std::string_view, 9> kGateNames = {"X", "Y", "X90", "Y90", "Xm90", "Ym90", "I", "MEASZ", "CZ"};
constexpr std::array<std::string_view, 6> kRotations = {"X", "Y", "X90", "Y90", "Xm90", "Ym90"};
constexpr uint32_t kNumQOps = kGateNames.size() + 2;  // plus QNOP and the wait slot
constexpr uint32_t kMaxRegWidth = 5;

std::optional<uint32_t> gate_rank(std::string_view mnemonic) {
  for (uint32_t i = 0; i < kGateNames.size(); ++i) {
    if (kGateNames[i] == mnemonic) return i;
  }
  return std::nullopt;
}

bool is_pair_gate(std::string_view mnemonic) { return mnemonic == "CZ"; }

uint32_t duration_of(std::string_view mnemonic) {
  if (mnemonic == "MEASZ") return 15;
  if (mnemonic == "CZ") return 2;
  return 1;
}

uint32_t opcode_width() { return static_cast<uint32_t>(std::bit_width(kNumQOps - 1)); }

uint32_t reg_width(uint32_t w, uint32_t pi_width) {
  const int32_t bits = static_cast<int32_t>((31 - pi_width) / w) - static_cast<int32_t>(opcode_width());
  return static_cast<uint32_t>(std::clamp<int32_t>(bits, 0, kMaxRegWidth));
}

}  // namespace

uint32_t ts2_slot_wait_limit() {
  uint32_t limit = UINT32_MAX;
  for (uint32_t w = 2; w <= 4; ++w) limit = std::min(limit, (1u << reg_width(w, 0)) - 1);
  return limit;
}

InstantiationConfig dse_instantiation(const ChipTopology& topology, const DseConfig& config) {
  validate_dse_config(config);
  const InstantiationConfig base = InstantiationConfig::qumav2_default();
  InstantiationConfig c;
  c.name = "dse-c" + std::to_string(config.id) + "-w" + std::to_string(config.vliw_width);
  c.topology = topology;
  c.vliw_width = config.vliw_width;
  c.pi_width = config.pi_width;
  c.qubit_mask_width = topology.num_qubits;
  c.pair_mask_width = topology.num_edges();
  c.q_opcode_width = opcode_width();
  c.target_reg_width = reg_width(config.vliw_width, config.pi_width);
  if ((1u << c.target_reg_width) < config.vliw_width) {
    throw DseError(DseErrorKind::IllegalConfig, "target registers cannot cover one bundle");
  }
  c.num_sregs = c.num_tregs = 1u << c.target_reg_width;
  c.opcodes = base.opcodes;

  c.quantum_ops.push_back(*base.find_op("QNOP"));
  uint32_t code = 1;
  for (std::string_view name : kGateNames) {
    QOpDef def = *base.find_op(name);
    def.q_opcode = code++;
    c.quantum_ops.push_back(def);
  }
  QOpDef wait;
  wait.mnemonic = "QWAIT";
  wait.q_opcode = code;
  wait.kind = QOpKind::Wait;
  wait.duration = 0;
  c.quantum_ops.push_back(wait);
  return c;
}

void validate_circuit(const ScheduledCircuit& circuit) {
  auto bad = [](const std::string& m) { throw DseError(DseErrorKind::IllegalCircuit, m); };
  uint64_t cycle = 0;
  std::set<uint32_t> busy;
  for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
    const ScheduledOp& op = circuit.ops[i];
    const std::string where = "op " + std::to_string(i) + " (" + op.mnemonic + ")";
    if (op.start_cycle < cycle) bad(where + ": start cycles must be non-decreasing");
    if (op.start_cycle != cycle) busy.clear();
    cycle = op.start_cycle;
    if (!gate_rank(op.mnemonic)) bad(where + ": unsupported operation");
    const std::size_t arity = is_pair_gate(op.mnemonic) ? 2 : 1;
    if (op.qubits.size() != arity) bad(where + ": expected " + std::to_string(arity) + " qubit operand(s)");
    for (uint32_t q : op.qubits) {
      if (q >= circuit.num_qubits()) bad(where + ": qubit " + std::to_string(q) + " out of range");
      if (!busy.insert(q).second) bad(where + ": qubit " + std::to_string(q) + " used twice in one cycle");
    }
    if (arity == 2 && !circuit.topology.edge_address({op.qubits[0], op.qubits[1]})) {
      bad(where + ": not an allowed qubit pair");
    }
  }
}

// ---------------------------------------------------------------------------
// Planning

namespace {

struct Slot {
  uint32_t rank = 0;  // position in kGateNames; wait slots sort first
  bool wait = false;
  bool pair = false;
  uint64_t mask = 0;      // qubit mask, or pair mask for two-qubit slots
  uint64_t interval = 0;  // wait slots only
};

struct Point {
  uint64_t cycle = 0;
  uint64_t delta = 0;
  std::vector<Slot> slots;  // without the wait slot
};

std::vector<Point> points_of(const ScheduledCircuit& circuit, bool somq) {
  std::vector<Point> points;
  uint64_t previous = 0;
  for (std::size_t i = 0; i < circuit.ops.size();) {
    Point p;
    p.cycle = circuit.ops[i].start_cycle;
    p.delta = p.cycle - previous;
    previous = p.cycle;
    std::map<uint32_t, Slot> merged;
    for (; i < circuit.ops.size() && circuit.ops[i].start_cycle == p.cycle; ++i) {
      const ScheduledOp& op = circuit.ops[i];
      Slot s;
      s.rank = *gate_rank(op.mnemonic);
      s.pair = is_pair_gate(op.mnemonic);
      s.mask = s.pair ? uint64_t{1} << *circuit.topology.edge_address({op.qubits[0], op.qubits[1]})
                      : uint64_t{1} << op.qubits[0];
      if (somq) {
        merged[s.rank].rank = s.rank;
        merged[s.rank].pair = s.pair;
        merged[s.rank].mask |= s.mask;
      } else {
        p.slots.push_back(s);
      }
    }
    if (somq) {
      for (const auto& [rank, s] : merged) p.slots.push_back(s);
    } else {
      std::stable_sort(p.slots.begin(), p.slots.end(), [](const Slot& a, const Slot& b) {
        return a.rank != b.rank ? a.rank < b.rank : std::countr_zero(a.mask) < std::countr_zero(b.mask);
      });
    }
    points.push_back(std::move(p));
  }
  return points;
}

struct IntervalPlan {
  std::vector<uint64_t> qwaits;
  uint64_t pi = 0;
  std::optional<uint64_t> wait_slot;
};

std::vector<uint64_t> qwait_chunks(uint64_t delta, uint64_t max_qwait) {
  std::vector<uint64_t> out;
  do {
    const uint64_t chunk = std::min(delta, max_qwait);
    out.push_back(chunk);
    delta -= chunk;
  } while (delta > 0);
  return out;
}

IntervalPlan plan_interval(uint64_t delta, const DseConfig& config, uint64_t max_qwait) {
  IntervalPlan plan;
  switch (config.scheme) {
    case TimingScheme::Ts1:
      plan.qwaits = qwait_chunks(delta, max_qwait);
      break;
    case TimingScheme::Ts2:
      if (delta <= ts2_slot_wait_limit()) {
        plan.wait_slot = delta;
      } else {
        plan.qwaits = qwait_chunks(delta, max_qwait);
      }
      break;
    case TimingScheme::Ts3:
      if (delta <= (1u << config.pi_width) - 1) {
        plan.pi = delta;
      } else {
        plan.qwaits = qwait_chunks(delta, max_qwait);
      }
      break;
  }
  return plan;
}

/// Target registers with least-recently-used replacement.
class RegisterCache {
 public:
  explicit RegisterCache(uint32_t size) : mask_(size, 0), last_use_(size, 0), loaded_(size, false) {}

  /// Register holding `mask`; loads it if absent. `pinned` registers are not evicted.
  std::pair<uint32_t, bool> acquire(uint64_t mask, const std::vector<uint32_t>& pinned) {
    ++tick_;
    for (uint32_t r = 0; r < mask_.size(); ++r) {
      if (loaded_[r] && mask_[r] == mask) {
        last_use_[r] = tick_;
        return {r, false};
      }
    }
    std::optional<uint32_t> victim;
    for (uint32_t r = 0; r < mask_.size(); ++r) {
      if (std::find(pinned.begin(), pinned.end(), r) != pinned.end()) continue;
      if (!loaded_[r]) {
        victim = r;
        break;
      }
      if (!victim || last_use_[r] < last_use_[*victim]) victim = r;
    }
    const uint32_t r = *victim;  // capacity >= VLIW width, checked at instantiation
    mask_[r] = mask;
    last_use_[r] = tick_;
    loaded_[r] = true;
    return {r, true};
  }

 private:
  std::vector<uint64_t> mask_;
  std::vector<uint64_t> last_use_;
  std::vector<bool> loaded_;
  uint64_t tick_ = 0;
};

struct SetupOp {
  bool pair = false;
  uint32_t reg = 0;
  uint64_t mask = 0;
};

struct Word {
  std::vector<SetupOp> setup;
  uint64_t pi = 0;
  std::vector<std::pair<Slot, uint32_t>> slots;  // slot and its register
};

struct PointPlan {
  uint64_t cycle = 0;
  IntervalPlan interval;
  std::vector<Word> words;
};

std::vector<PointPlan> plan_program(const ScheduledCircuit& circuit, const DseConfig& config,
                                    const InstantiationConfig& inst) {
  RegisterCache sregs(inst.num_sregs), tregs(inst.num_tregs);
  std::vector<PointPlan> plan;
  const uint32_t w = config.vliw_width;
  for (const Point& point : points_of(circuit, config.somq)) {
    PointPlan pp;
    pp.cycle = point.cycle;
    pp.interval = plan_interval(point.delta, config, inst.max_qwait());
    std::vector<Slot> slots;
    if (pp.interval.wait_slot) {
      Slot s;
      s.wait = true;
      s.interval = *pp.interval.wait_slot;
      slots.push_back(s);
    }
    slots.insert(slots.end(), point.slots.begin(), point.slots.end());
    for (std::size_t k = 0; k < slots.size(); k += w) {
      Word word;
      word.pi = k == 0 ? pp.interval.pi : 0;
      std::vector<uint32_t> pinned_s, pinned_t;
      for (std::size_t i = k; i < std::min(slots.size(), k + w); ++i) {
        const Slot& s = slots[i];
        uint32_t reg = 0;
        if (!s.wait) {
          auto& pinned = s.pair ? pinned_t : pinned_s;
          const auto [r, loaded] = (s.pair ? tregs : sregs).acquire(s.mask, pinned);
          pinned.push_back(r);
          if (loaded) word.setup.push_back({s.pair, r, s.mask});
          reg = r;
        }
        word.slots.emplace_back(s, reg);
      }
      pp.words.push_back(std::move(word));
    }
    plan.push_back(std::move(pp));
  }
  return plan;
}

uint64_t ceil_div(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

}  // namespace

DseReport count_instructions(const ScheduledCircuit& circuit, const DseConfig& config, const CountOptions& options) {
  validate_dse_config(config);
  validate_circuit(circuit);
  const InstantiationConfig inst = dse_instantiation(circuit.topology, config);
  DseReport r;

  std::vector<std::pair<uint64_t, uint64_t>> words_at;  // (cycle, words issued for that point)
  for (const Point& point : points_of(circuit, config.somq)) {
    const IntervalPlan interval = plan_interval(point.delta, config, inst.max_qwait());
    const uint64_t k = point.slots.size();
    const uint64_t bundles = ceil_div(k + (interval.wait_slot ? 1 : 0), config.vliw_width);
    r.qwait_instructions += interval.qwaits.size();
    r.bundle_instructions += bundles;
    r.effective_ops += k;
    words_at.emplace_back(point.cycle, interval.qwaits.size() + bundles);
  }

  const auto plan = plan_program(circuit, config, inst);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    uint64_t setup = 0;
    for (const Word& word : plan[i].words) setup += word.setup.size();
    r.setup_instructions += setup;
    if (options.accounting == SetupAccounting::Lru) words_at[i].second += setup;
  }

  r.total_instructions = r.qwait_instructions + r.bundle_instructions;
  if (options.accounting == SetupAccounting::Lru) r.total_instructions += r.setup_instructions;
  r.effective_ops_per_bundle =
      r.bundle_instructions ? static_cast<double>(r.effective_ops) / static_cast<double>(r.bundle_instructions) : 0.0;

  const uint64_t window = std::max<uint32_t>(options.r_req_window, 1);
  uint64_t best = 0, sum = 0;
  for (std::size_t lo = 0, hi = 0; hi < words_at.size(); ++hi) {
    sum += words_at[hi].second;
    while (words_at[hi].first - words_at[lo].first >= window) sum -= words_at[lo++].second;
    best = std::max(best, sum);
  }
  r.r_req = static_cast<double>(best) / static_cast<double>(window);
  return r;
}

std::string materialize(const ScheduledCircuit& circuit, const DseConfig& config) {
  validate_dse_config(config);
  validate_circuit(circuit);
  const InstantiationConfig inst = dse_instantiation(circuit.topology, config);
  std::ostringstream os;
  os << "# " << circuit.name << " under config " << config.id << ", w=" << config.vliw_width << "\n";
  for (const PointPlan& point : plan_program(circuit, config, inst)) {
    for (uint64_t q : point.interval.qwaits) os << "QWAIT " << q << "\n";
    for (const Word& word : point.words) {
      for (const SetupOp& s : word.setup) {
        if (s.pair) {
          os << "SMIT T" << s.reg << ", {";
          bool first = true;
          for (const QubitPair& p : mask_to_pair_list(circuit.topology, s.mask)) {
            os << (first ? "" : ", ") << "(" << p.source << ", " << p.target << ")";
            first = false;
          }
        } else {
          os << "SMIS S" << s.reg << ", {";
          bool first = true;
          for (uint32_t q = 0; q < circuit.num_qubits(); ++q) {
            if (!((s.mask >> q) & 1)) continue;
            os << (first ? "" : ", ") << q;
            first = false;
          }
        }
        os << "}\n";
      }
      os << word.pi << ", ";
      for (std::size_t i = 0; i < word.slots.size(); ++i) {
        const auto& [slot, reg] = word.slots[i];
        if (i) os << " | ";
        if (slot.wait) {
          os << "QWAIT " << slot.interval;
        } else {
          os << kGateNames[slot.rank] << (slot.pair ? " T" : " S") << reg;
        }
      }
      os << "\n";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Benchmarks

const std::array<std::vector<std::string>, 24>& clifford_decompositions() {
  static const std::array<std::vector<std::string>, 24> table = {{
      // Paulis
      {"I"},
      {"X"},
      {"Y"},
      {"Y", "X"},
      // 2pi/3 rotations
      {"X90", "Y90"},
      {"X90", "Ym90"},
      {"Xm90", "Y90"},
      {"Xm90", "Ym90"},
      {"Y90", "X90"},
      {"Y90", "Xm90"},
      {"Ym90", "X90"},
      {"Ym90", "Xm90"},
      // pi/2 rotations
      {"X90"},
      {"Xm90"},
      {"Y90"},
      {"Ym90"},
      {"Xm90", "Y90", "X90"},
      {"Xm90", "Ym90", "X90"},
      // Hadamard-like
      {"X", "Y90"},
      {"X", "Ym90"},
      {"Y", "X90"},
      {"Y", "Xm90"},
      {"X90", "Y90", "X90"},
      {"Xm90", "Y90", "Xm90"},
  }};
  return table;
}

double two_qubit_fraction(const ScheduledCircuit& circuit) {
  uint64_t gates = 0, pairs = 0;
  for (const auto& op : circuit.ops) {
    if (op.mnemonic == "MEASZ") continue;
    ++gates;
    pairs += op.qubits.size() == 2;
  }
  return gates ? static_cast<double>(pairs) / static_cast<double>(gates) : 0.0;
}

namespace {

ChipTopology topology_for(uint32_t n, bool prefer_grid) {
  if (n < 2) throw DseError(DseErrorKind::IllegalCircuit, "benchmarks need at least two qubits");
  if (n == 7 && !prefer_grid) return ChipTopology::surface7();
  if (n == 8) return ChipTopology::grid(2, 4);
  return ChipTopology::grid(1, n);
}

/// Links in one orientation: the first half of the edge list.
std::vector<QubitPair> forward_edges(const ChipTopology& t) {
  return {t.edges.begin(), t.edges.begin() + t.num_edges() / 2};
}

void sort_by_start(std::vector<ScheduledOp>& ops) {
  std::stable_sort(ops.begin(), ops.end(), [](const ScheduledOp& a, const ScheduledOp& b) {
    return a.start_cycle != b.start_cycle ? a.start_cycle < b.start_cycle : a.qubits[0] < b.qubits[0];
  });
}

void measure_all(ScheduledCircuit& c, uint64_t cycle) {
  for (uint32_t q = 0; q < c.num_qubits(); ++q) c.ops.push_back({cycle, "MEASZ", {q}});
}

ScheduledCircuit rb_like(const BenchmarkParams& p, std::mt19937_64& rng) {
  ScheduledCircuit c;
  c.name = "rb_like";
  c.topology = topology_for(p.num_qubits ? p.num_qubits : 7, false);
  const auto& table = clifford_decompositions();
  std::uniform_int_distribution<int> pick(0, 23);
  for (uint32_t q = 0; q < c.num_qubits(); ++q) {
    uint64_t t = 0;
    for (uint32_t k = 0; k < p.cliffords; ++k) {
      for (const std::string& g : table[pick(rng)]) c.ops.push_back({t++, g, {q}});
    }
  }
  sort_by_start(c.ops);
  return c;
}

ScheduledCircuit parallel_like(const BenchmarkParams& p, std::mt19937_64& rng) {
  ScheduledCircuit c;
  c.name = "parallel_like";
  c.topology = topology_for(p.num_qubits ? p.num_qubits : 7, false);
  const double f = p.two_qubit_fraction < 0 ? 0.008 : p.two_qubit_fraction;
  const uint32_t n = c.num_qubits();
  // One CZ per layer with probability pz gives a fraction pz / (n - pz).
  const double pz = std::min(1.0, f * n / (1.0 + f));
  const auto edges = forward_edges(c.topology);
  std::bernoulli_distribution with_cz(pz);
  std::uniform_int_distribution<std::size_t> pick_gate(0, kRotations.size() - 1), pick_edge(0, edges.size() - 1);
  uint64_t t = 0;
  for (uint32_t layer = 0; layer < p.layers; ++layer) {
    const std::string gate(kRotations[pick_gate(rng)]);
    std::optional<QubitPair> cz;
    if (with_cz(rng)) cz = edges[pick_edge(rng)];
    for (uint32_t q = 0; q < n; ++q) {
      if (cz && (q == cz->source || q == cz->target)) continue;
      c.ops.push_back({t, gate, {q}});
    }
    if (cz) c.ops.push_back({t, "CZ", {cz->source, cz->target}});
    t += cz ? duration_of("CZ") : 1;
  }
  measure_all(c, t);
  sort_by_start(c.ops);
  return c;
}

ScheduledCircuit sequential_like(const BenchmarkParams& p, std::mt19937_64& rng) {
  ScheduledCircuit c;
  c.name = "sequential_like";
  c.topology = topology_for(p.num_qubits ? p.num_qubits : 8, true);
  const double f = p.two_qubit_fraction < 0 ? 0.39 : p.two_qubit_fraction;
  const uint32_t n = c.num_qubits();
  const auto edges = forward_edges(c.topology);

  std::vector<bool> is_pair(p.gates, false);
  const auto pairs = static_cast<std::size_t>(std::llround(f * p.gates));
  std::fill(is_pair.begin(), is_pair.begin() + static_cast<std::ptrdiff_t>(std::min(pairs, is_pair.size())), true);
  std::shuffle(is_pair.begin(), is_pair.end(), rng);

  std::bernoulli_distribution local(p.locality);
  std::uniform_int_distribution<uint32_t> any_qubit(0, n - 1);
  std::uniform_int_distribution<std::size_t> pick_gate(0, kRotations.size() - 1);
  std::vector<uint64_t> ready(n, 0);
  std::vector<uint32_t> previous;
  for (bool pair : is_pair) {
    const uint32_t anchor =
        !previous.empty() && local(rng) ? previous[std::uniform_int_distribution<std::size_t>(0, previous.size() - 1)(rng)]
                                        : any_qubit(rng);
    ScheduledOp op;
    if (pair) {
      std::vector<QubitPair> incident;
      for (const QubitPair& e : edges) {
        if (e.source == anchor || e.target == anchor) incident.push_back(e);
      }
      const QubitPair e = incident[std::uniform_int_distribution<std::size_t>(0, incident.size() - 1)(rng)];
      op.mnemonic = "CZ";
      op.qubits = {e.source, e.target};
    } else {
      op.mnemonic = std::string(kRotations[pick_gate(rng)]);
      op.qubits = {anchor};
    }
    uint64_t start = 0;
    for (uint32_t q : op.qubits) start = std::max(start, ready[q]);
    for (uint32_t q : op.qubits) ready[q] = start + duration_of(op.mnemonic);
    op.start_cycle = start;
    previous = op.qubits;
    c.ops.push_back(std::move(op));
  }
  measure_all(c, *std::max_element(ready.begin(), ready.end()));
  sort_by_start(c.ops);
  return c;
}

}  // namespace

ScheduledCircuit generate_benchmark(BenchmarkKind kind, const BenchmarkParams& params, uint64_t seed) {
  std::mt19937_64 rng(seed);
  switch (kind) {
    case BenchmarkKind::RbLike: return rb_like(params, rng);
    case BenchmarkKind::ParallelLike: return parallel_like(params, rng);
    case BenchmarkKind::SequentialLike: return sequential_like(params, rng);
  }
  throw DseError(DseErrorKind::IllegalConfig, "unknown benchmark kind");
}

// ---------------------------------------------------------------------------
// Sweep

std::vector<SweepRow> sweep(const std::vector<DseConfig>& configs, const std::vector<ScheduledCircuit>& circuits,
                            const CountOptions& options) {
  for (const auto& c : configs) validate_dse_config(c);
  std::vector<std::future<DseReport>> baselines;
  std::vector<std::future<DseReport>> cells;
  for (const auto& circuit : circuits) {
    baselines.push_back(std::async(std::launch::async, [&circuit, &options] {
      return count_instructions(circuit, numbered_config(1, 1), options);
    }));
    for (const auto& config : configs) {
      cells.push_back(std::async(std::launch::async, [&circuit, &config, &options] {
        return count_instructions(circuit, config, options);
      }));
    }
  }
  std::vector<SweepRow> rows;
  std::size_t cell = 0;
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    const uint64_t base = baselines[i].get().total_instructions;
    for (const auto& config : configs) {
      SweepRow row{circuits[i].name, config, cells[cell++].get(), 0.0};
      row.normalized = base ? static_cast<double>(row.report.total_instructions) / static_cast<double>(base) : 0.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "benchmark,config_id,w,w_pi,scheme,somq,total,qwaits,bundles,eff_ops_per_bundle,normalized\n";
  char buf[64];
  for (const auto& r : rows) {
    os << r.benchmark << ',' << r.config.id << ',' << r.config.vliw_width << ',' << r.config.pi_width << ','
       << to_string(r.config.scheme) << ',' << (r.config.somq ? 1 : 0) << ',' << r.report.total_instructions << ','
       << r.report.qwait_instructions << ',' << r.report.bundle_instructions << ',';
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", r.report.effective_ops_per_bundle, r.normalized);
    os << buf << '\n';
  }
}

}  // namespace eqasm
