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

#ifndef EQASM_BACKEND_HPP_
#define EQASM_BACKEND_HPP_

#include <cstdint>
#include <memory>
#include <optional>

#include "eqasm/config.hpp"
#include "eqasm/quantum_state.hpp"

namespace eqasm {

struct MeasureResult {
  int bit = 0;
  double p1 = 0.0;  // probability of 1 just before the measurement
};

/// Receives released device operations from the timing controller.
class QuantumBackend {
 public:
  virtual ~QuantumBackend() = default;

  virtual void reset(uint32_t num_qubits) = 0;
  virtual void apply(const QOpDef& op, uint32_t qubit) = 0;
  virtual void apply_pair(const QOpDef& op, uint32_t source, uint32_t target) = 0;
  virtual MeasureResult measure(uint32_t qubit, std::optional<int> forced) = 0;

  /// Underlying state, if the backend keeps one.
  virtual const QuantumState* state() const { return nullptr; }
};

class StateVectorBackend : public QuantumBackend {
 public:
  explicit StateVectorBackend(uint64_t seed = 0) : seed_(seed) {}

  void reset(uint32_t num_qubits) override;
  void apply(const QOpDef& op, uint32_t qubit) override;
  void apply_pair(const QOpDef& op, uint32_t source, uint32_t target) override;
  MeasureResult measure(uint32_t qubit, std::optional<int> forced) override;
  const QuantumState* state() const override { return state_ ? &*state_ : nullptr; }

 private:
  uint64_t seed_;
  std::optional<QuantumState> state_;
};

/// Ignores gates; a measurement returns the forced (scripted) bit, else 0.
class MockBackend : public QuantumBackend {
 public:
  void reset(uint32_t) override {}
  void apply(const QOpDef&, uint32_t) override {}
  void apply_pair(const QOpDef&, uint32_t, uint32_t) override {}
  MeasureResult measure(uint32_t, std::optional<int> forced) override {
    const int bit = forced.value_or(0);
    return {bit, static_cast<double>(bit)};
  }
};

}  // namespace eqasm

#endif  // EQASM_BACKEND_HPP_
