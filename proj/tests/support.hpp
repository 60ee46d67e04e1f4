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

// Helpers shared by the unit and acceptance tests.

#ifndef EQASM_TESTS_SUPPORT_HPP_
#define EQASM_TESTS_SUPPORT_HPP_

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eqasm/assembler.hpp"
#include "eqasm/simulator.hpp"

namespace eqasm::testing {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string program_text(const std::string& name) { return read_text(std::string(EQASM_TEST_PROGRAMS) + "/" + name); }

/// Assembles, encodes and decodes, so simulations always run what the binary holds.
inline std::vector<Instruction> build(std::string_view text, const InstantiationConfig& config) {
  const Assembled a = assemble(text, config);
  return decode(a.words, config).instructions();
}

inline SimResult run_text(std::string_view text, const InstantiationConfig& config, QuantumBackend& backend,
                          SimOptions options = {}) {
  return simulate(config, build(text, config), backend, std::move(options));
}

/// Released triggers of one mnemonic, as (timestamp, qubit).
inline std::vector<std::pair<int64_t, uint32_t>> triggers_of(const SimResult& r, std::string_view mnemonic) {
  std::vector<std::pair<int64_t, uint32_t>> out;
  for (const auto& t : r.triggers) {
    if (t.mnemonic == mnemonic && t.released) out.emplace_back(t.timestamp, t.qubit);
  }
  return out;
}

}  // namespace eqasm::testing

#endif  // EQASM_TESTS_SUPPORT_HPP_
