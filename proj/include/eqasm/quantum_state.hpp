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

#ifndef EQASM_QUANTUM_STATE_HPP_
#define EQASM_QUANTUM_STATE_HPP_

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "eqasm/config.hpp"

namespace eqasm {

using Complex = std::complex<double>;
/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Matrix2 = std::array<Complex, 4>;

/// exp(-i angle/2 axis.sigma); `axis` must be a unit vector.
Matrix2 rotation_matrix(const std::array<double, 3>& axis, double angle_rad);
/// Matrix of a rotation gate. Throws std::invalid_argument for other semantics.
Matrix2 gate_matrix(const GateSemantics& semantics);
Matrix2 multiply(const Matrix2& a, const Matrix2& b);
bool is_unitary(const Matrix2& m, double tol = 1e-9);

enum class QuantumErrorKind { QubitOutOfRange, SameQubit, ZeroProbabilityForcedOutcome, TooManyQubits };

class QuantumError : public std::runtime_error {
 public:
  QuantumError(QuantumErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  QuantumErrorKind kind() const { return kind_; }

 private:
  QuantumErrorKind kind_;
};

/// Dense state vector. Qubit q is bit q of the basis-state index.
class QuantumState {
 public:
  static constexpr uint32_t kDefaultMaxQubits = 20;

  explicit QuantumState(uint32_t num_qubits, uint64_t seed = 0, uint32_t max_qubits = kDefaultMaxQubits);

  uint32_t num_qubits() const { return n_; }
  const std::vector<Complex>& amplitudes() const { return amp_; }
  void set_amplitudes(std::vector<Complex> amplitudes);

  void apply_single(uint32_t qubit, const Matrix2& u);
  /// Symmetric in its operands.
  void apply_cz(uint32_t a, uint32_t b);
  void apply_cnot(uint32_t control, uint32_t target);

  double probability_one(uint32_t qubit) const;
  /// Projective Z measurement. A forced outcome post-selects; forcing an
  /// outcome of probability zero throws ZeroProbabilityForcedOutcome.
  int measure(uint32_t qubit, std::optional<int> forced = std::nullopt);

  double norm() const;

  /// One line per amplitude: "index real imag".
  void dump(std::ostream& os) const;

 private:
  void check(uint32_t qubit) const;

  uint32_t n_;
  std::vector<Complex> amp_;
  std::mt19937_64 rng_;
};

/// |<a|b>|^2, insensitive to global phase.
double fidelity(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace eqasm

#endif  // EQASM_QUANTUM_STATE_HPP_
