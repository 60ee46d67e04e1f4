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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "eqasm/backend.hpp"
#include "eqasm/quantum_state.hpp"

using namespace eqasm;

namespace {

constexpr double kTol = 1e-9;
constexpr double kPi = std::numbers::pi;

const Matrix2 kX = rotation_matrix({1, 0, 0}, kPi);
const Matrix2 kX90 = rotation_matrix({1, 0, 0}, kPi / 2);
const Matrix2 kY90 = rotation_matrix({0, 1, 0}, kPi / 2);
const Matrix2 kH = multiply(kX, kY90);  // Y90 first, then X

std::vector<Complex> basis(uint32_t n, std::size_t index) {
  std::vector<Complex> v(std::size_t{1} << n, 0.0);
  v[index] = 1.0;
  return v;
}

}  // namespace

TEST_SUITE("quantum") {
  TEST_CASE("rotation matrices are unitary and compose") {
    const InstantiationConfig c = InstantiationConfig::qumav2_default();
    for (const auto& op : c.quantum_ops) {
      if (op.semantics.type == GateSemantics::Type::Rotation) CHECK(is_unitary(gate_matrix(op.semantics)));
    }
    const Matrix2 four = multiply(multiply(kX90, kX90), multiply(kX90, kX90));
    // Identity up to global phase.
    CHECK(std::abs(std::abs(four[0]) - 1.0) < kTol);
    CHECK(std::abs(four[1]) < kTol);
    CHECK(std::abs(four[0] - four[3]) < kTol);
  }

  TEST_CASE("X on |0> gives |1>") {
    QuantumState s(1);
    s.apply_single(0, kX);
    CHECK(fidelity(s.amplitudes(), basis(1, 1)) == doctest::Approx(1.0).epsilon(kTol));
  }

  TEST_CASE("X90 twice gives |1> up to phase") {
    QuantumState s(1);
    s.apply_single(0, kX90);
    s.apply_single(0, kX90);
    CHECK(fidelity(s.amplitudes(), basis(1, 1)) == doctest::Approx(1.0).epsilon(kTol));
  }

  TEST_CASE("Y90 then measurement is balanced over seeded shots") {
    int ones = 0;
    constexpr int kShots = 10000;
    for (int shot = 0; shot < kShots; ++shot) {
      QuantumState s(1, 1000 + shot);
      s.apply_single(0, kY90);
      ones += s.measure(0);
    }
    // Binomial(10^4, 0.5): sigma = 50, so +-2% is four sigma.
    CHECK(std::abs(ones / double(kShots) - 0.5) <= 0.02);
  }

  TEST_CASE("CZ phases only |11> and is symmetric") {
    QuantumState s(2);
    s.apply_single(0, kX);
    s.apply_single(1, kX);
    const auto before = s.amplitudes();
    s.apply_cz(0, 1);
    CHECK(std::abs(s.amplitudes()[3] + before[3]) < kTol);

    QuantumState zero(2);
    zero.apply_cz(1, 0);
    CHECK(std::abs(zero.amplitudes()[0] - 1.0) < kTol);

    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    std::vector<Complex> v(4);
    double n = 0;
    for (auto& a : v) {
      a = {g(rng), g(rng)};
      n += std::norm(a);
    }
    for (auto& a : v) a /= std::sqrt(n);
    QuantumState a(2), b(2);
    a.set_amplitudes(v);
    b.set_amplitudes(v);
    a.apply_cz(0, 1);
    b.apply_cz(1, 0);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(a.amplitudes()[i] - b.amplitudes()[i]) < kTol);
  }

  TEST_CASE("H conjugated CZ equals CNOT on all basis states") {
    for (std::size_t in = 0; in < 4; ++in) {
      QuantumState viaCz(2), viaCnot(2);
      viaCz.set_amplitudes(basis(2, in));
      viaCnot.set_amplitudes(basis(2, in));
      viaCz.apply_single(1, kH);
      viaCz.apply_cz(0, 1);
      viaCz.apply_single(1, kH);
      viaCnot.apply_cnot(0, 1);
      // 4x4 oracle: CNOT with control 0 maps index i to i ^ 2 when bit 0 is set.
      const std::size_t expected = (in & 1) ? (in ^ 2) : in;
      CHECK(fidelity(viaCz.amplitudes(), basis(2, expected)) == doctest::Approx(1.0).epsilon(kTol));
      CHECK(fidelity(viaCnot.amplitudes(), basis(2, expected)) == doctest::Approx(1.0).epsilon(kTol));
    }
  }

  TEST_CASE("measurement of |1> always returns 1") {
    for (uint64_t seed = 0; seed < 100; ++seed) {
      QuantumState s(1, seed);
      s.apply_single(0, kX);
      CHECK(s.measure(0) == 1);
    }
  }

  TEST_CASE("forced outcome post-selects") {
    QuantumState s(1);
    s.apply_single(0, kX90);
    CHECK(s.measure(0, 1) == 1);
    CHECK(fidelity(s.amplitudes(), basis(1, 1)) == doctest::Approx(1.0).epsilon(kTol));
    CHECK(std::abs(s.norm() - 1.0) < kTol);
  }

  TEST_CASE("forcing an impossible outcome fails") {
    QuantumState s(1);
    try {
      s.measure(0, 1);
      FAIL("expected an error");
    } catch (const QuantumError& e) {
      CHECK(e.kind() == QuantumErrorKind::ZeroProbabilityForcedOutcome);
    }
  }

  TEST_CASE("range and operand errors") {
    QuantumState s(2);
    auto kind_of = [](auto&& f) {
      try {
        f();
      } catch (const QuantumError& e) {
        return e.kind();
      }
      return QuantumErrorKind::TooManyQubits;
    };
    CHECK(kind_of([&] { s.apply_single(2, kX); }) == QuantumErrorKind::QubitOutOfRange);
    CHECK(kind_of([&] { s.apply_cz(1, 1); }) == QuantumErrorKind::SameQubit);
    CHECK(kind_of([&] { s.apply_cz(0, 5); }) == QuantumErrorKind::QubitOutOfRange);
    CHECK(kind_of([&] { s.measure(3); }) == QuantumErrorKind::QubitOutOfRange);
    CHECK_THROWS_AS(QuantumState(30), QuantumError);
  }

  TEST_CASE("norm is preserved across random circuits") {
    const InstantiationConfig c = InstantiationConfig::qumav2_default();
    std::mt19937_64 rng(3);
    QuantumState s(7, 9);
    for (int step = 0; step < 500; ++step) {
      const auto& op = c.quantum_ops[rng() % c.quantum_ops.size()];
      const uint32_t q = rng() % 7;
      if (op.semantics.type == GateSemantics::Type::Rotation) s.apply_single(q, gate_matrix(op.semantics));
      if (op.semantics.type == GateSemantics::Type::Cz) s.apply_cz(q, (q + 1) % 7);
      if (op.semantics.type == GateSemantics::Type::Cnot) s.apply_cnot(q, (q + 3) % 7);
      if (op.semantics.type == GateSemantics::Type::MeasZ) s.measure(q);
      REQUIRE(std::abs(s.norm() - 1.0) < kTol);
    }
  }

  TEST_CASE("identical seeds give identical states") {
    auto run = [](uint64_t seed) {
      QuantumState s(3, seed);
      for (uint32_t q = 0; q < 3; ++q) s.apply_single(q, kY90);
      for (uint32_t q = 0; q < 3; ++q) s.measure(q);
      return s.amplitudes();
    };
    CHECK(run(17) == run(17));
  }

  TEST_CASE("dump writes index real imag per amplitude") {
    QuantumState s(1);
    std::ostringstream os;
    s.dump(os);
    CHECK(os.str() == "0 1 0\n1 0 0\n");
  }

  TEST_CASE("mock backend echoes forced outcomes") {
    MockBackend m;
    CHECK(m.measure(0, 1).bit == 1);
    CHECK(m.measure(0, std::nullopt).bit == 0);
  }
}
