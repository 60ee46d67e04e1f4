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

#ifndef EQASM_TOPOLOGY_HPP_
#define EQASM_TOPOLOGY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqasm {

/// A directed allowed qubit pair. (a, b) and (b, a) are distinct pairs.
struct QubitPair {
  uint32_t source = 0;
  uint32_t target = 0;

  friend bool operator==(const QubitPair&, const QubitPair&) = default;
  friend auto operator<=>(const QubitPair&, const QubitPair&) = default;
};

/// Qubits and allowed qubit pairs of a chip. The position of an edge in
/// `edges` is its pair address, which is also its bit in a pair mask.
struct ChipTopology {
  uint32_t num_qubits = 0;
  std::vector<QubitPair> edges;

  std::optional<uint32_t> edge_address(QubitPair pair) const;
  uint32_t num_edges() const { return static_cast<uint32_t>(edges.size()); }

  /// The seven-qubit surface-code chip: edges 0..7 in one orientation and
  /// edge k+8 the reverse of edge k. Edge 0 is (2 -> 0).
  static ChipTopology surface7();

  /// Rows x cols square lattice with both orientations of every link.
  static ChipTopology grid(uint32_t rows, uint32_t cols);

  friend bool operator==(const ChipTopology&, const ChipTopology&) = default;
};

enum class TopologyErrorKind { MissingReverseEdge, DanglingQubit, DuplicateEdge };

struct TopologyError {
  TopologyErrorKind kind;
  std::string message;
};

/// Returns every violated invariant; empty means the topology is valid.
std::vector<TopologyError> validate_topology(const ChipTopology& topology);

class NotAnAllowedPair : public std::invalid_argument {
 public:
  explicit NotAnAllowedPair(QubitPair pair);
  QubitPair pair() const { return pair_; }

 private:
  QubitPair pair_;
};

/// Bit e of the result is set iff edge e is in `pairs`.
/// Throws NotAnAllowedPair if a pair is not an edge of the topology.
uint64_t pair_list_to_mask(const ChipTopology& topology, std::span<const QubitPair> pairs);

/// Inverse of pair_list_to_mask; pairs come back ordered by edge address.
/// Bits at or above num_edges() are ignored.
std::vector<QubitPair> mask_to_pair_list(const ChipTopology& topology, uint64_t mask);

uint64_t qubit_list_to_mask(std::span<const uint32_t> qubits);
std::vector<uint32_t> mask_to_qubit_list(uint64_t mask);

}  // namespace eqasm

#endif  // EQASM_TOPOLOGY_HPP_
