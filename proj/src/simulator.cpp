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

#include "eqasm/simulator.hpp"

#include <algorithm>
#include <sstream>

#include "eqasm/text.hpp"

namespace eqasm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr uint32_t kQwaitrMask = 0xFFFFF;

std::string qubit_name(uint32_t q) { return "q" + std::to_string(q); }

std::string role_suffix(OpSel role) {
  switch (role) {
    case OpSel::Src: return " src";
    case OpSel::Tgt: return " tgt";
    default: return "";
  }
}

}  // namespace

ArchState::ArchState(const InstantiationConfig& config)
    : gpr(config.num_gprs, 0),
      s_regs(config.num_sregs, 0),
      t_regs(config.num_tregs, 0),
      q(config.topology.num_qubits, 0),
      c(config.topology.num_qubits, 0),
      exec_flags(config.topology.num_qubits, exec_flags_from_history({})),
      history(config.topology.num_qubits),
      memory(config.data_mem_size, 0) {}

std::array<bool, kNumExecFlags> exec_flags_from_history(const std::vector<int>& history) {
  std::array<bool, kNumExecFlags> f{true, false, false, false};
  const std::size_t n = history.size();
  if (n >= 1) {
    f[1] = history[n - 1] == 1;
    f[2] = history[n - 1] == 0;
  }
  if (n >= 2) f[3] = history[n - 1] == history[n - 2];
  return f;
}

bool execute_register_op(const Instruction& instruction, std::vector<uint32_t>& gpr, ComparisonFlags& flags) {
  return std::visit(
      Overloaded{
          [&](const insn::Cmp& i) {
            flags = ComparisonFlags::compare(gpr[i.rs], gpr[i.rt]);
            return true;
          },
          [&](const insn::Fbr& i) {
            gpr[i.rd] = flags.get(i.flag) ? 1u : 0u;
            return true;
          },
          [&](const insn::Ldi& i) {
            gpr[i.rd] = static_cast<uint32_t>(i.imm);
            return true;
          },
          [&](const insn::Ldui& i) {
            gpr[i.rd] = (static_cast<uint32_t>(i.imm & 0x7FFF) << 17) | (gpr[i.rs] & 0x1FFFF);
            return true;
          },
          [&](const insn::Logic& i) {
            const uint32_t a = gpr[i.rs], b = gpr[i.rt];
            gpr[i.rd] = i.op == insn::LogicOp::And ? (a & b) : i.op == insn::LogicOp::Or ? (a | b) : (a ^ b);
            return true;
          },
          [&](const insn::Not& i) {
            gpr[i.rd] = ~gpr[i.rt];
            return true;
          },
          [&](const insn::Arith& i) {
            gpr[i.rd] = i.op == insn::ArithOp::Add ? gpr[i.rs] + gpr[i.rt] : gpr[i.rs] - gpr[i.rt];
            return true;
          },
          [](const auto&) { return false; },
      },
      instruction);
}

std::string_view to_string(SimErrorKind kind) {
  switch (kind) {
    case SimErrorKind::TimingViolation: return "TimingViolation";
    case SimErrorKind::LaneConflict: return "LaneConflict";
    case SimErrorKind::BundleConflict: return "BundleConflict";
    case SimErrorKind::ConflictingPairSelection: return "ConflictingPairSelection";
    case SimErrorKind::UnknownQOpcode: return "UnknownQOpcode";
    case SimErrorKind::PCOutOfRange: return "PCOutOfRange";
    case SimErrorKind::MisalignedAccess: return "MisalignedAccess";
    case SimErrorKind::MemoryOutOfRange: return "MemoryOutOfRange";
    case SimErrorKind::BackendError: return "BackendError";
  }
  return "?";
}

std::string_view to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::Completed: return "completed";
    case HaltReason::Error: return "error";
    case HaltReason::CycleLimit: return "cycle_limit";
  }
  return "?";
}

std::string format_trace_event(const TraceEvent& e) {
  auto field = [](const std::string& s) { return s.empty() ? std::string("-") : s; };
  return std::to_string(e.cycle) + "\t" + field(e.domain) + "\t" + field(e.kind) + "\t" + field(e.target) + "\t" +
         field(e.detail) + "\t" + field(e.status);
}

void write_trace(std::ostream& os, const std::vector<TraceEvent>& trace) {
  for (const auto& e : trace) os << format_trace_event(e) << "\n";
}

std::optional<int> ResultScript::next(uint32_t qubit) {
  auto it = queues.find(qubit);
  if (it == queues.end() || it->second.empty()) return std::nullopt;
  const int bit = it->second.front();
  it->second.pop_front();
  return bit;
}

ResultScript ResultScript::parse(std::string_view text) {
  ResultScript script;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    auto bad = [&](const std::string& why) {
      return std::invalid_argument("script line " + std::to_string(line_no) + ": " + why);
    };
    if (head.size() < 2 || (head[0] != 'Q' && head[0] != 'q')) throw bad("expected 'Q<i>:'");
    std::string index = head.substr(1);
    if (!index.empty() && index.back() == ':') {
      index.pop_back();
    } else {
      std::string colon;
      if (!(ls >> colon) || colon != ":") throw bad("expected ':' after qubit");
    }
    uint32_t qubit = 0;
    try {
      std::size_t used = 0;
      qubit = static_cast<uint32_t>(std::stoul(index, &used));
      if (used != index.size()) throw bad("bad qubit index '" + index + "'");
    } catch (const std::logic_error&) {
      throw bad("bad qubit index '" + index + "'");
    }
    std::string bit;
    auto& queue = script.queues[qubit];
    while (ls >> bit) {
      if (bit != "0" && bit != "1") throw bad("result must be 0 or 1, got '" + bit + "'");
      queue.push_back(bit == "1" ? 1 : 0);
    }
  }
  return script;
}

Simulator::Simulator(const InstantiationConfig& config, std::vector<Instruction> program, QuantumBackend& backend,
                     SimOptions options)
    : config_(config),
      program_(std::move(program)),
      backend_(backend),
      options_(std::move(options)),
      state_(config) {
  backend_.reset(config.topology.num_qubits);
}

void Simulator::emit(std::string domain, std::string kind, std::string target, std::string detail,
                     std::string status) {
  result_.trace.push_back({cycle_, std::move(domain), std::move(kind), std::move(target), std::move(detail),
                           std::move(status)});
}

void Simulator::halt(HaltReason reason) {
  halted_ = true;
  result_.reason = reason;
  result_.cycles = reason == HaltReason::Error ? cycle_ + 1 : cycle_;
  if (reason != HaltReason::Completed) emit("classical", "halt", "pc=" + std::to_string(state_.pc), std::string(to_string(reason)));
}

void Simulator::fail(SimErrorKind kind, std::string message, std::optional<uint32_t> qubit,
                     std::optional<int64_t> timestamp) {
  emit("quantum", "error", qubit ? qubit_name(*qubit) : "pc=" + std::to_string(state_.pc),
       std::string(to_string(kind)) + ": " + message);
  result_.error = SimError{kind, std::move(message), state_.pc, qubit, timestamp};
  // Whatever is still waiting in the queues never reaches the device.
  auto drain = [&](const TimePoint& point) {
    for (const auto& [q, entry] : point.ops) {
      emit("quantum", "drained", qubit_name(q),
           "t=" + std::to_string(point.timestamp) + " " + entry.def->mnemonic + role_suffix(entry.role));
    }
  };
  for (const auto& point : queue_) drain(point);
  drain(buffer_);
  queue_.clear();
  buffer_ = {};
  halt(HaltReason::Error);
}

void Simulator::write_back() {
  while (!pending_.empty() && pending_.front().due <= timer()) {
    const PendingResult r = pending_.front();
    pending_.pop_front();
    state_.q[r.qubit] = static_cast<uint8_t>(r.result);
    --state_.c[r.qubit];
    auto& h = state_.history[r.qubit];
    h.push_back(r.result);
    if (h.size() > 2) h.erase(h.begin());
    state_.exec_flags[r.qubit] = exec_flags_from_history(h);
    emit("quantum", "meas_result", qubit_name(r.qubit), std::to_string(r.result),
         state_.c[r.qubit] == 0 ? "valid" : "pending");
  }
}

void Simulator::flush_buffer() {
  if (buffer_.ops.empty()) return;
  queue_.push_back(std::move(buffer_));
  buffer_ = {};
}

void Simulator::reserve_bundle(const insn::Bundle& bundle) {
  int64_t interval = bundle.pi;
  for (const auto& op : bundle.ops) {
    if (op.kind == QOpKind::Wait) interval += op.operand;
  }
  if (timestamps_.advance(interval)) flush_buffer();
  const int64_t ts = timestamps_.last_point();
  if (ts < timer()) {
    fail(SimErrorKind::TimingViolation,
         "bundle reserved for timing point " + std::to_string(ts) + " after the timer reached " +
             std::to_string(timer()),
         std::nullopt, ts);
    return;
  }

  std::map<uint32_t, MicroOpEntry> word;
  for (const auto& op : bundle.ops) {
    const QOpDef* def = config_.find_op(op.mnemonic);
    if (!def) {
      fail(SimErrorKind::UnknownQOpcode, "operation " + op.mnemonic + " is not in the control store");
      return;
    }
    const DecodedQOp decoded = microcode_decode(config_, def->q_opcode);
    if (decoded.micro_ops.empty()) continue;
    const bool two = def->kind == QOpKind::TwoQubit;
    const uint64_t mask = two ? state_.t_regs[op.operand] : state_.s_regs[op.operand];
    std::vector<OpSel> sel;
    try {
      sel = resolve_opsel(config_.topology, mask, def->kind);
    } catch (const OpSelConflict& e) {
      fail(SimErrorKind::ConflictingPairSelection, e.what(), e.qubit(), ts);
      return;
    }
    std::vector<uint32_t> partner(config_.topology.num_qubits, 0);
    if (two) {
      for (const QubitPair& p : mask_to_pair_list(config_.topology, mask)) {
        partner[p.source] = p.target;
        partner[p.target] = p.source;
      }
    }
    for (uint32_t q = 0; q < sel.size(); ++q) {
      if (sel[q] == OpSel::None) continue;
      if (word.contains(q)) {
        fail(SimErrorKind::LaneConflict,
             "two VLIW lanes drive qubit " + std::to_string(q) + " at timing point " + std::to_string(ts), q, ts);
        return;
      }
      word[q] = MicroOpEntry{def, sel[q], partner[q]};
    }
  }
  for (const auto& [q, entry] : word) {
    const bool queued = !queue_.empty() && queue_.back().timestamp == ts && queue_.back().ops.contains(q);
    if (buffer_.ops.contains(q) || queued) {
      fail(SimErrorKind::BundleConflict,
           "qubit " + std::to_string(q) + " already has an operation at timing point " + std::to_string(ts), q, ts);
      return;
    }
  }
  if (buffer_.ops.empty()) buffer_.timestamp = ts;
  for (const auto& [q, entry] : word) {
    buffer_.ops[q] = entry;
    if (entry.def->kind == QOpKind::Measure) ++state_.c[q];
  }
}

Simulator::Issue Simulator::issue_one() {
  if (state_.pc >= program_.size()) return Issue::Done;
  const Instruction& instruction = program_[state_.pc];
  const uint32_t pc = state_.pc;
  uint32_t next_pc = pc + 1;

  auto stall = [&](const std::string& why) {
    if (!stalled_) emit("classical", "stall", "pc=" + std::to_string(pc), why);
    stalled_ = true;
    return Issue::Stalled;
  };
  const bool timing = std::holds_alternative<insn::Qwait>(instruction) ||
                      std::holds_alternative<insn::Qwaitr>(instruction) ||
                      std::holds_alternative<insn::Bundle>(instruction);
  if (timing) {
    if (occupancy() >= config_.queue_depth) return stall("event queue full");
    if (!origin_) origin_ = static_cast<int64_t>(cycle_) + options_.start_offset;
  }
  if (const auto* fmr = std::get_if<insn::Fmr>(&instruction)) {
    if (fmr->qubit < state_.c.size() && state_.c[fmr->qubit] > 0) {
      return stall("Q" + std::to_string(fmr->qubit) + " invalid, " + std::to_string(state_.c[fmr->qubit]) +
                   " measurement(s) pending");
    }
  }

  std::string note;
  std::visit(
      Overloaded{
          [&](const insn::Fmr& i) {
            state_.gpr[i.rd] = i.qubit < state_.q.size() ? state_.q[i.qubit] : 0;
            note = "R" + std::to_string(i.rd) + "=" + std::to_string(state_.gpr[i.rd]);
          },
          [&](const insn::Qwait& i) {
            if (timestamps_.advance(i.imm)) flush_buffer();
            note = "t=" + std::to_string(timestamps_.last_point());
          },
          [&](const insn::Qwaitr& i) {
            if (timestamps_.advance(state_.gpr[i.rs] & kQwaitrMask)) flush_buffer();
            note = "t=" + std::to_string(timestamps_.last_point());
          },
          [&](const insn::Bundle& b) {
            reserve_bundle(b);
            note = "t=" + std::to_string(timestamps_.last_point());
          },
          [&](const insn::Smis& i) { state_.s_regs[i.sd] = qubit_list_to_mask(i.qubits); },
          [&](const insn::Smit& i) { state_.t_regs[i.td] = pair_list_to_mask(config_.topology, i.pairs); },
          [&](const insn::Br& i) {
            if (!state_.cmp_flags.get(i.flag)) return;
            const int64_t target = static_cast<int64_t>(pc) + i.offset;
            if (target < 0 || target > static_cast<int64_t>(program_.size())) {
              fail(SimErrorKind::PCOutOfRange, "branch target " + std::to_string(target) + " outside the program");
              return;
            }
            next_pc = static_cast<uint32_t>(target);
            note = "taken";
          },
          [&](const insn::Ld& i) {
            const uint32_t addr = state_.gpr[i.rt] + static_cast<uint32_t>(i.imm);
            if (addr % 4) {
              fail(SimErrorKind::MisalignedAccess, "load from unaligned address " + std::to_string(addr));
            } else if (std::size_t{addr} + 4 > state_.memory.size()) {
              fail(SimErrorKind::MemoryOutOfRange, "load from address " + std::to_string(addr));
            } else {
              uint32_t v = 0;
              for (int k = 0; k < 4; ++k) v |= static_cast<uint32_t>(state_.memory[addr + k]) << (8 * k);
              state_.gpr[i.rd] = v;
            }
          },
          [&](const insn::St& i) {
            const uint32_t addr = state_.gpr[i.rt] + static_cast<uint32_t>(i.imm);
            if (addr % 4) {
              fail(SimErrorKind::MisalignedAccess, "store to unaligned address " + std::to_string(addr));
            } else if (std::size_t{addr} + 4 > state_.memory.size()) {
              fail(SimErrorKind::MemoryOutOfRange, "store to address " + std::to_string(addr));
            } else {
              for (int k = 0; k < 4; ++k) state_.memory[addr + k] = static_cast<uint8_t>(state_.gpr[i.rs] >> (8 * k));
            }
          },
          [&](const auto&) { execute_register_op(instruction, state_.gpr, state_.cmp_flags); },
      },
      instruction);
  if (halted_) return Issue::Done;
  stalled_ = false;
  emit("classical", "issue", "pc=" + std::to_string(pc), format_instruction(instruction), note);
  state_.pc = next_pc;
  return Issue::Retired;
}

void Simulator::trigger_point(TimePoint& point) {
  for (const auto& [q, entry] : point.ops) {
    const QOpDef& def = *entry.def;
    const std::string detail = "t=" + std::to_string(point.timestamp) + " " + def.mnemonic + role_suffix(entry.role);
    TriggerRecord rec{point.timestamp, cycle_, q, def.mnemonic, entry.role, true};
    try {
      switch (def.kind) {
        case QOpKind::Single:
          rec.released = state_.exec_flags[q][def.flag_select % kNumExecFlags];
          if (rec.released) backend_.apply(def, q);
          break;
        case QOpKind::Measure: {
          const MeasureResult m = backend_.measure(q, options_.script.next(q));
          PendingResult p{point.timestamp + def.duration, q, m.bit};
          auto pos = std::upper_bound(pending_.begin(), pending_.end(), p.due,
                                      [](int64_t due, const PendingResult& r) { return due < r.due; });
          pending_.insert(pos, p);
          result_.measurements.push_back({q, point.timestamp, m.bit, m.p1});
          break;
        }
        case QOpKind::TwoQubit:
          if (entry.role == OpSel::Src) backend_.apply_pair(def, q, entry.partner);
          break;
        case QOpKind::Qnop:
        case QOpKind::Wait: break;
      }
    } catch (const std::exception& e) {
      fail(SimErrorKind::BackendError, e.what(), q, point.timestamp);
      return;
    }
    result_.triggers.push_back(rec);
    emit("quantum", "trigger", qubit_name(q), detail, rec.released ? "released" : "canceled");
  }
}

bool Simulator::step() {
  if (halted_) return false;
  if (state_.pc >= program_.size() && buffer_.ops.empty() && queue_.empty() && pending_.empty()) {
    halt(HaltReason::Completed);
    return false;
  }
  if (cycle_ >= options_.max_cycles) {
    halt(HaltReason::CycleLimit);
    return false;
  }
  if (origin_) write_back();
  for (uint32_t k = 0; k < std::max<uint32_t>(config_.issue_rate, 1); ++k) {
    if (issue_one() != Issue::Retired || halted_) break;
  }
  if (!halted_ && origin_) {
    if (!buffer_.ops.empty() && buffer_.timestamp <= timer()) flush_buffer();
    while (!halted_ && !queue_.empty() && queue_.front().timestamp <= timer()) {
      TimePoint point = std::move(queue_.front());
      queue_.pop_front();
      trigger_point(point);
    }
  }
  if (halted_) return false;
  ++cycle_;
  return true;
}

SimResult Simulator::run() {
  while (step()) {
  }
  return result_;
}

SimResult simulate(const InstantiationConfig& config, const std::vector<Instruction>& program,
                   QuantumBackend& backend, SimOptions options) {
  Simulator sim(config, program, backend, std::move(options));
  return sim.run();
}

}  // namespace eqasm
