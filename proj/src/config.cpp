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

#include "eqasm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "eqasm/text.hpp"
#include "json.hpp"

namespace eqasm {

using nlohmann::json;

std::string_view to_string(QOpKind kind) {
  switch (kind) {
    case QOpKind::Single: return "single";
    case QOpKind::TwoQubit: return "two_qubit";
    case QOpKind::Measure: return "measure";
    case QOpKind::Qnop: return "qnop";
    case QOpKind::Wait: return "wait";
  }
  return "?";
}

std::string_view to_string(ConfigErrorKind kind) {
  switch (kind) {
    case ConfigErrorKind::MissingReverseEdge: return "MissingReverseEdge";
    case ConfigErrorKind::DanglingQubit: return "DanglingQubit";
    case ConfigErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ConfigErrorKind::BitBudgetExceeded: return "BitBudgetExceeded";
    case ConfigErrorKind::DuplicateOpcode: return "DuplicateOpcode";
    case ConfigErrorKind::MaskWidthMismatch: return "MaskWidthMismatch";
    case ConfigErrorKind::InvalidOpDef: return "InvalidOpDef";
  }
  return "?";
}

const QOpDef* InstantiationConfig::find_op(std::string_view mnemonic) const {
  for (const auto& op : quantum_ops) {
    if (iequals(op.mnemonic, mnemonic)) return &op;
  }
  return nullptr;
}

const QOpDef* InstantiationConfig::find_op_by_opcode(uint32_t q_opcode) const {
  for (const auto& op : quantum_ops) {
    if (op.q_opcode == q_opcode) return &op;
  }
  return nullptr;
}

namespace {

QOpDef rotation_op(std::string mnemonic, uint32_t opcode, std::array<double, 3> axis, double angle_deg,
                   uint32_t codeword, uint32_t flag_select = 0) {
  QOpDef op;
  op.mnemonic = std::move(mnemonic);
  op.q_opcode = opcode;
  op.kind = QOpKind::Single;
  op.duration = 1;
  op.flag_select = flag_select;
  op.semantics = {GateSemantics::Type::Rotation, axis, angle_deg};
  op.codewords = {codeword};
  return op;
}

}  // namespace

InstantiationConfig InstantiationConfig::qumav2_default() {
  InstantiationConfig c;
  c.topology = ChipTopology::surface7();
  c.opcodes = {
      {"CMP", 0x01},   {"BR", 0x02},     {"FBR", 0x03},  {"LDI", 0x04},  {"LDUI", 0x05}, {"LD", 0x06},
      {"ST", 0x07},    {"FMR", 0x08},    {"AND", 0x09},  {"OR", 0x0A},   {"XOR", 0x0B},  {"NOT", 0x0C},
      {"ADD", 0x0D},   {"SUB", 0x0E},    {"QWAIT", 0x20}, {"QWAITR", 0x21}, {"SMIS", 0x22}, {"SMIT", 0x23},
  };
  constexpr std::array<double, 3> kX{1, 0, 0};
  constexpr std::array<double, 3> kY{0, 1, 0};
  constexpr std::array<double, 3> kZ{0, 0, 1};
  const double h = 1.0 / std::sqrt(2.0);

  QOpDef qnop;
  qnop.mnemonic = "QNOP";
  qnop.q_opcode = 0;
  qnop.kind = QOpKind::Qnop;
  qnop.duration = 0;
  c.quantum_ops.push_back(qnop);

  c.quantum_ops.push_back(rotation_op("X", 0x01, kX, 180, 1));
  c.quantum_ops.push_back(rotation_op("Y", 0x02, kY, 180, 2));
  c.quantum_ops.push_back(rotation_op("X90", 0x03, kX, 90, 3));
  c.quantum_ops.push_back(rotation_op("Y90", 0x04, kY, 90, 4));
  c.quantum_ops.push_back(rotation_op("Xm90", 0x05, kX, -90, 5));
  c.quantum_ops.push_back(rotation_op("Ym90", 0x06, kY, -90, 6));
  c.quantum_ops.push_back(rotation_op("I", 0x07, kX, 0, 7));
  c.quantum_ops.push_back(rotation_op("H", 0x08, {h, 0, h}, 180, 8));
  c.quantum_ops.push_back(rotation_op("Z", 0x09, kZ, 180, 9));
  // Executes iff the last finished measurement of the qubit returned 1.
  c.quantum_ops.push_back(rotation_op("C_X", 0x0A, kX, 180, 1, 1));

  QOpDef meas;
  meas.mnemonic = "MEASZ";
  meas.q_opcode = 0x10;
  meas.kind = QOpKind::Measure;
  meas.duration = 15;
  meas.semantics.type = GateSemantics::Type::MeasZ;
  meas.codewords = {16};
  c.quantum_ops.push_back(meas);

  QOpDef cz;
  cz.mnemonic = "CZ";
  cz.q_opcode = 0x80;
  cz.kind = QOpKind::TwoQubit;
  cz.duration = 2;
  cz.semantics.type = GateSemantics::Type::Cz;
  cz.codewords = {32, 33};
  c.quantum_ops.push_back(cz);

  QOpDef cnot = cz;
  cnot.mnemonic = "CNOT";
  cnot.q_opcode = 0x81;
  cnot.semantics.type = GateSemantics::Type::Cnot;
  cnot.codewords = {34, 35};
  c.quantum_ops.push_back(cnot);
  return c;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<ConfigError> validate_config(const InstantiationConfig& c) {
  std::vector<ConfigError> errors;
  auto add = [&](ConfigErrorKind k, std::string msg) { errors.push_back({k, std::move(msg)}); };

  for (const auto& te : validate_topology(c.topology)) {
    ConfigErrorKind k = ConfigErrorKind::DanglingQubit;
    if (te.kind == TopologyErrorKind::MissingReverseEdge) k = ConfigErrorKind::MissingReverseEdge;
    if (te.kind == TopologyErrorKind::DuplicateEdge) k = ConfigErrorKind::DuplicateEdge;
    add(k, te.message);
  }

  if (c.qubit_mask_width != c.topology.num_qubits) {
    add(ConfigErrorKind::MaskWidthMismatch, "qubit_mask_width " + std::to_string(c.qubit_mask_width) +
                                                " != number of qubits " + std::to_string(c.topology.num_qubits));
  }
  if (c.pair_mask_width != c.topology.num_edges()) {
    add(ConfigErrorKind::MaskWidthMismatch, "pair_mask_width " + std::to_string(c.pair_mask_width) +
                                                " != number of allowed pairs " +
                                                std::to_string(c.topology.num_edges()));
  }

  // Single format: 1 format bit, 6 opcode bits, 5-bit register field, rest immediate.
  constexpr uint32_t kSingleImmBits = 31 - 6 - 5;
  if (c.vliw_width == 0) add(ConfigErrorKind::BitBudgetExceeded, "vliw_width must be at least 1");
  const uint64_t bundle_bits = 1 + uint64_t{c.vliw_width} * (c.q_opcode_width + c.target_reg_width) + c.pi_width;
  if (bundle_bits > 32) {
    add(ConfigErrorKind::BitBudgetExceeded,
        "bundle format needs " + std::to_string(bundle_bits) + " bits (1 + w*(q_opcode+reg) + PI) > 32");
  }
  if (c.target_reg_width > 5) {
    add(ConfigErrorKind::BitBudgetExceeded, "target_reg_width must be <= 5");
  }
  if (c.qubit_mask_width > kSingleImmBits) {
    add(ConfigErrorKind::BitBudgetExceeded, "qubit mask does not fit the SMIS immediate field");
  }
  if (c.pair_mask_width > kSingleImmBits) {
    add(ConfigErrorKind::BitBudgetExceeded, "pair mask does not fit the SMIT immediate field");
  }
  if (c.qwait_imm_width == 0 || c.qwait_imm_width > kSingleImmBits) {
    add(ConfigErrorKind::BitBudgetExceeded, "qwait_imm_width must be within 1..20");
  }
  if (c.num_gprs == 0 || c.num_gprs > 32) add(ConfigErrorKind::BitBudgetExceeded, "num_gprs must be within 1..32");
  if (c.num_sregs == 0 || c.num_sregs > (1u << c.target_reg_width) || c.num_tregs == 0 ||
      c.num_tregs > (1u << c.target_reg_width)) {
    add(ConfigErrorKind::BitBudgetExceeded, "target register count exceeds the register address field");
  }
  if (c.issue_rate == 0) add(ConfigErrorKind::InvalidOpDef, "issue_rate must be at least 1");
  if (c.queue_depth == 0) add(ConfigErrorKind::InvalidOpDef, "queue_depth must be at least 1");
  if (c.cycle_time_ns == 0) add(ConfigErrorKind::InvalidOpDef, "cycle_time_ns must be positive");

  // Classical opcode table.
  static const char* kRequired[] = {"CMP", "BR",  "FBR", "LDI", "LDUI", "LD",    "ST",     "FMR",  "AND",
                                    "OR",  "XOR", "NOT", "ADD", "SUB",  "QWAIT", "QWAITR", "SMIS", "SMIT"};
  for (const char* m : kRequired) {
    if (!c.opcodes.contains(m)) add(ConfigErrorKind::InvalidOpDef, std::string("no opcode for ") + m);
  }
  std::map<uint32_t, std::string> by_code;
  for (const auto& [mnemonic, code] : c.opcodes) {
    if (code == 0 || code >= 64) {
      add(ConfigErrorKind::InvalidOpDef, mnemonic + ": opcode must be within 1..63");
    }
    auto [it, fresh] = by_code.emplace(code, mnemonic);
    if (!fresh) {
      add(ConfigErrorKind::DuplicateOpcode, mnemonic + " and " + it->second + " share opcode " + std::to_string(code));
    }
  }

  // Quantum operation table.
  std::map<uint32_t, std::string> by_qcode;
  std::set<std::string> names;
  bool has_qnop = false;
  for (const auto& op : c.quantum_ops) {
    auto [it, fresh] = by_qcode.emplace(op.q_opcode, op.mnemonic);
    if (!fresh) {
      add(ConfigErrorKind::DuplicateOpcode,
          op.mnemonic + " and " + it->second + " share q_opcode " + std::to_string(op.q_opcode));
    }
    if (!names.insert(to_upper(op.mnemonic)).second) {
      add(ConfigErrorKind::DuplicateOpcode, "mnemonic " + op.mnemonic + " defined twice");
    }
    if (c.q_opcode_width < 32 && op.q_opcode >= (1u << c.q_opcode_width)) {
      add(ConfigErrorKind::BitBudgetExceeded, op.mnemonic + ": q_opcode does not fit q_opcode_width");
    }
    if (op.kind == QOpKind::Qnop) {
      has_qnop = true;
      if (op.q_opcode != 0) add(ConfigErrorKind::InvalidOpDef, "QNOP must use q_opcode 0");
    } else if (op.q_opcode == 0) {
      add(ConfigErrorKind::InvalidOpDef, op.mnemonic + ": q_opcode 0 is reserved for QNOP");
    }
    if (op.flag_select > 3) add(ConfigErrorKind::InvalidOpDef, op.mnemonic + ": flag_select must be within 0..3");
    using T = GateSemantics::Type;
    switch (op.kind) {
      case QOpKind::Single:
        if (op.semantics.type != T::Rotation) {
          add(ConfigErrorKind::InvalidOpDef, op.mnemonic + ": single-qubit ops need rotation semantics");
        }
        if (op.codewords.size() != 1) add(ConfigErrorKind::InvalidOpDef, op.mnemonic + ": needs one codeword");
        break;
      case QOpKind::TwoQubit:
        if (op.semantics.type != T::Cz && op.semantics.type != T::Cnot) {
          add(ConfigErrorKind::InvalidOpDef, op.mnemonic + ": two-qubit ops must be CZ or CNOT");
        }
        if (op.codewords.size() != 2) add(ConfigErrorKind::InvalidOpDef, op.mnemonic + ": needs two codewords");
        if (op.flag_select != 0) {
          add(ConfigErrorKind::InvalidOpDef, op.mnemonic + ": two-qubit ops execute unconditionally");
        }
        break;
      case QOpKind::Measure:
        if (op.flag_select != 0) {
          add(ConfigErrorKind::InvalidOpDef, op.mnemonic + ": measurements must use the default flag");
        }
        if (op.duration == 0) add(ConfigErrorKind::InvalidOpDef, op.mnemonic + ": measurement duration must be > 0");
        if (op.codewords.size() != 1) add(ConfigErrorKind::InvalidOpDef, op.mnemonic + ": needs one codeword");
        break;
      case QOpKind::Qnop:
      case QOpKind::Wait:
        break;
    }
    if (op.semantics.type == T::Rotation) {
      const auto& a = op.semantics.axis;
      const double norm = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
      if (std::abs(norm - 1.0) > 1e-9) add(ConfigErrorKind::InvalidOpDef, op.mnemonic + ": axis is not a unit vector");
    }
  }
  if (!has_qnop) add(ConfigErrorKind::InvalidOpDef, "no QNOP operation defined");
  return errors;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

QOpKind kind_from_string(const std::string& s) {
  if (s == "single") return QOpKind::Single;
  if (s == "two_qubit") return QOpKind::TwoQubit;
  if (s == "measure") return QOpKind::Measure;
  if (s == "qnop") return QOpKind::Qnop;
  if (s == "wait") return QOpKind::Wait;
  throw ConfigLoadError("unknown operation kind '" + s + "'");
}

std::string_view semantics_name(GateSemantics::Type t) {
  switch (t) {
    case GateSemantics::Type::Rotation: return "rotation";
    case GateSemantics::Type::Cz: return "cz";
    case GateSemantics::Type::Cnot: return "cnot";
    case GateSemantics::Type::MeasZ: return "measz";
    case GateSemantics::Type::None: return "none";
  }
  return "none";
}

GateSemantics::Type semantics_from_string(const std::string& s) {
  if (s == "rotation") return GateSemantics::Type::Rotation;
  if (s == "cz") return GateSemantics::Type::Cz;
  if (s == "cnot") return GateSemantics::Type::Cnot;
  if (s == "measz") return GateSemantics::Type::MeasZ;
  if (s == "none") return GateSemantics::Type::None;
  throw ConfigLoadError("unknown semantics '" + s + "'");
}

json to_json(const InstantiationConfig& c) {
  json j;
  j["name"] = c.name;
  json edges = json::array();
  for (const auto& e : c.topology.edges) edges.push_back({e.source, e.target});
  j["topology"] = {{"num_qubits", c.topology.num_qubits}, {"edges", edges}};
  j["vliw_width"] = c.vliw_width;
  j["pi_width"] = c.pi_width;
  j["qubit_mask_width"] = c.qubit_mask_width;
  j["pair_mask_width"] = c.pair_mask_width;
  j["num_gprs"] = c.num_gprs;
  j["num_sregs"] = c.num_sregs;
  j["num_tregs"] = c.num_tregs;
  j["target_reg_width"] = c.target_reg_width;
  j["qwait_imm_width"] = c.qwait_imm_width;
  j["q_opcode_width"] = c.q_opcode_width;
  j["cycle_time_ns"] = c.cycle_time_ns;
  j["data_mem_size"] = c.data_mem_size;
  j["queue_depth"] = c.queue_depth;
  j["issue_rate"] = c.issue_rate;
  j["opcodes"] = c.opcodes;
  json ops = json::array();
  for (const auto& op : c.quantum_ops) {
    json o;
    o["mnemonic"] = op.mnemonic;
    o["q_opcode"] = op.q_opcode;
    o["kind"] = std::string(to_string(op.kind));
    o["duration"] = op.duration;
    o["flag_select"] = op.flag_select;
    o["codewords"] = op.codewords;
    json sem;
    sem["type"] = std::string(semantics_name(op.semantics.type));
    if (op.semantics.type == GateSemantics::Type::Rotation) {
      sem["axis"] = op.semantics.axis;
      sem["angle_deg"] = op.semantics.angle_deg;
    }
    o["semantics"] = sem;
    ops.push_back(o);
  }
  j["quantum_ops"] = ops;
  return j;
}

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

InstantiationConfig from_json(const json& j) {
  InstantiationConfig c;
  c.opcodes = InstantiationConfig::qumav2_default().opcodes;
  read_opt(j, "name", c.name);
  const json& topo = j.at("topology");
  c.topology.num_qubits = topo.at("num_qubits").get<uint32_t>();
  for (const auto& e : topo.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw ConfigLoadError("topology edges must be [source, target] pairs");
    c.topology.edges.push_back({e[0].get<uint32_t>(), e[1].get<uint32_t>()});
  }
  c.qubit_mask_width = c.topology.num_qubits;
  c.pair_mask_width = c.topology.num_edges();
  read_opt(j, "vliw_width", c.vliw_width);
  read_opt(j, "pi_width", c.pi_width);
  read_opt(j, "qubit_mask_width", c.qubit_mask_width);
  read_opt(j, "pair_mask_width", c.pair_mask_width);
  read_opt(j, "num_gprs", c.num_gprs);
  read_opt(j, "num_sregs", c.num_sregs);
  read_opt(j, "num_tregs", c.num_tregs);
  read_opt(j, "target_reg_width", c.target_reg_width);
  read_opt(j, "qwait_imm_width", c.qwait_imm_width);
  read_opt(j, "q_opcode_width", c.q_opcode_width);
  read_opt(j, "cycle_time_ns", c.cycle_time_ns);
  read_opt(j, "data_mem_size", c.data_mem_size);
  read_opt(j, "queue_depth", c.queue_depth);
  read_opt(j, "issue_rate", c.issue_rate);
  if (j.contains("opcodes")) c.opcodes = j.at("opcodes").get<std::map<std::string, uint32_t>>();
  for (const auto& o : j.at("quantum_ops")) {
    QOpDef op;
    op.mnemonic = o.at("mnemonic").get<std::string>();
    op.q_opcode = o.at("q_opcode").get<uint32_t>();
    op.kind = kind_from_string(o.at("kind").get<std::string>());
    read_opt(o, "duration", op.duration);
    read_opt(o, "flag_select", op.flag_select);
    read_opt(o, "codewords", op.codewords);
    if (o.contains("semantics")) {
      const json& s = o.at("semantics");
      op.semantics.type = semantics_from_string(s.at("type").get<std::string>());
      read_opt(s, "axis", op.semantics.axis);
      read_opt(s, "angle_deg", op.semantics.angle_deg);
    }
    c.quantum_ops.push_back(op);
  }
  return c;
}

}  // namespace

InstantiationConfig config_from_json_text(std::string_view text) {
  try {
    return from_json(json::parse(text.begin(), text.end()));
  } catch (const json::exception& e) {
    throw ConfigLoadError(std::string("invalid configuration: ") + e.what());
  }
}

std::string config_to_json_text(const InstantiationConfig& config, int indent) {
  return to_json(config).dump(indent) + (indent >= 0 ? "\n" : "");
}

InstantiationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigLoadError("cannot open configuration file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

uint32_t config_hash(const InstantiationConfig& config) {
  const std::string canonical = to_json(config).dump();
  uint32_t h = 2166136261u;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 16777619u;
  }
  return h;
}

}  // namespace eqasm
