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

#include "eqasm/quantum_state.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <string>

namespace eqasm {

Matrix2 rotation_matrix(const std::array<double, 3>& axis, double angle_rad) {
  const double c = std::cos(angle_rad / 2);
  const double s = std::sin(angle_rad / 2);
  const auto [nx, ny, nz] = axis;
  return {Complex(c, -s * nz), Complex(-s * ny, -s * nx), Complex(s * ny, -s * nx), Complex(c, s * nz)};
}

Matrix2 gate_matrix(const GateSemantics& semantics) {
  if (semantics.type != GateSemantics::Type::Rotation) {
    throw std::invalid_argument("gate_matrix: not a single-qubit rotation");
  }
  return rotation_matrix(semantics.axis, semantics.angle_deg * std::numbers::pi / 180.0);
}

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

bool is_unitary(const Matrix2& m, double tol) {
  // m^dagger m == I
  const Complex d00 = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
  const Complex d01 = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
  const Complex d11 = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
  return std::abs(d00 - 1.0) < tol && std::abs(d01) < tol && std::abs(d11 - 1.0) < tol;
}

QuantumState::QuantumState(uint32_t num_qubits, uint64_t seed, uint32_t max_qubits) : n_(num_qubits), rng_(seed) {
  if (num_qubits > max_qubits) {
    throw QuantumError(QuantumErrorKind::TooManyQubits,
                       std::to_string(num_qubits) + " qubits exceed the cap of " + std::to_string(max_qubits));
  }
  amp_.assign(std::size_t{1} << n_, Complex(0.0, 0.0));
  amp_[0] = 1.0;
}

void QuantumState::set_amplitudes(std::vector<Complex> amplitudes) {
  if (amplitudes.size() != amp_.size()) throw std::invalid_argument("set_amplitudes: dimension mismatch");
  amp_ = std::move(amplitudes);
}

void QuantumState::check(uint32_t qubit) const {
  if (qubit >= n_) {
    throw QuantumError(QuantumErrorKind::QubitOutOfRange,
                       "qubit " + std::to_string(qubit) + " out of range for " + std::to_string(n_) + " qubits");
  }
}

void QuantumState::apply_single(uint32_t qubit, const Matrix2& u) {
  check(qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (i & bit) continue;
    const Complex a0 = amp_[i];
    const Complex a1 = amp_[i | bit];
    amp_[i] = u[0] * a0 + u[1] * a1;
    amp_[i | bit] = u[2] * a0 + u[3] * a1;
  }
}

void QuantumState::apply_cz(uint32_t a, uint32_t b) {
  check(a);
  check(b);
  if (a == b) throw QuantumError(QuantumErrorKind::SameQubit, "CZ needs two distinct qubits");
  const std::size_t both = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if ((i & both) == both) amp_[i] = -amp_[i];
  }
}

void QuantumState::apply_cnot(uint32_t control, uint32_t target) {
  check(control);
  check(target);
  if (control == target) throw QuantumError(QuantumErrorKind::SameQubit, "CNOT needs two distinct qubits");
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(amp_[i], amp_[i | tbit]);
  }
}

double QuantumState::probability_one(uint32_t qubit) const {
  check(qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  double p = 0.0;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (i & bit) p += std::norm(amp_[i]);
  }
  return p;
}

int QuantumState::measure(uint32_t qubit, std::optional<int> forced) {
  const double p1 = probability_one(qubit);
  int outcome;
  if (forced) {
    outcome = *forced ? 1 : 0;
    const double p = outcome ? p1 : 1.0 - p1;
    if (p <= 1e-12) {
      throw QuantumError(QuantumErrorKind::ZeroProbabilityForcedOutcome,
                         "forced outcome " + std::to_string(outcome) + " on qubit " + std::to_string(qubit) +
                             " has zero probability");
    }
  } else {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    outcome = u < p1 ? 1 : 0;
  }
  const double keep = outcome ? p1 : 1.0 - p1;
  const double scale = 1.0 / std::sqrt(keep);
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    const bool one = (i & bit) != 0;
    amp_[i] = one == (outcome == 1) ? amp_[i] * scale : Complex(0.0, 0.0);
  }
  return outcome;
}

double QuantumState::norm() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return s;
}

void QuantumState::dump(std::ostream& os) const {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17);
  for (std::size_t i = 0; i < amp_.size(); ++i) os << i << " " << amp_[i].real() << " " << amp_[i].imag() << "\n";
  os.flags(flags);
  os.precision(prec);
}

double fidelity(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("fidelity: dimension mismatch");
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(a[i]) * b[i];
  return std::norm(overlap);
}

}  // namespace eqasm
