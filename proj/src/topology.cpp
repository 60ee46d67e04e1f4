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

#include "eqasm/topology.hpp"

#include <algorithm>
#include <set>

namespace eqasm {

std::optional<uint32_t> ChipTopology::edge_address(QubitPair pair) const {
  for (uint32_t e = 0; e < edges.size(); ++e) {
    if (edges[e] == pair) return e;
  }
  return std::nullopt;
}

ChipTopology ChipTopology::surface7() {
  ChipTopology t;
  t.num_qubits = 7;
  const QubitPair forward[8] = {{2, 0}, {0, 3}, {3, 1}, {1, 4}, {2, 5}, {5, 3}, {3, 6}, {6, 4}};
  for (const auto& p : forward) t.edges.push_back(p);
  for (const auto& p : forward) t.edges.push_back({p.target, p.source});
  return t;
}

ChipTopology ChipTopology::grid(uint32_t rows, uint32_t cols) {
  ChipTopology t;
  t.num_qubits = rows * cols;
  std::vector<QubitPair> links;
  for (uint32_t r = 0; r < rows; ++r) {
    for (uint32_t c = 0; c < cols; ++c) {
      const uint32_t q = r * cols + c;
      if (c + 1 < cols) links.push_back({q, q + 1});
      if (r + 1 < rows) links.push_back({q, q + cols});
    }
  }
  t.edges = links;
  for (const auto& p : links) t.edges.push_back({p.target, p.source});
  return t;
}

std::vector<TopologyError> validate_topology(const ChipTopology& topology) {
  std::vector<TopologyError> errors;
  std::set<QubitPair> seen;
  for (uint32_t e = 0; e < topology.edges.size(); ++e) {
    const QubitPair p = topology.edges[e];
    const std::string where = "edge " + std::to_string(e) + " (" + std::to_string(p.source) + " -> " +
                              std::to_string(p.target) + ")";
    if (p.source >= topology.num_qubits || p.target >= topology.num_qubits) {
      errors.push_back({TopologyErrorKind::DanglingQubit,
                        where + " references a qubit outside 0.." + std::to_string(topology.num_qubits) + "-1"});
      continue;
    }
    if (p.source == p.target) {
      errors.push_back({TopologyErrorKind::DanglingQubit, where + " connects a qubit to itself"});
      continue;
    }
    if (!seen.insert(p).second) {
      errors.push_back({TopologyErrorKind::DuplicateEdge, where + " appears more than once"});
    }
  }
  for (uint32_t e = 0; e < topology.edges.size(); ++e) {
    const QubitPair p = topology.edges[e];
    if (p.source >= topology.num_qubits || p.target >= topology.num_qubits) continue;
    if (!seen.contains(QubitPair{p.target, p.source})) {
      errors.push_back({TopologyErrorKind::MissingReverseEdge,
                        "edge " + std::to_string(e) + " (" + std::to_string(p.source) + " -> " +
                            std::to_string(p.target) + ") has no reverse edge"});
    }
  }
  return errors;
}

NotAnAllowedPair::NotAnAllowedPair(QubitPair pair)
    : std::invalid_argument("(" + std::to_string(pair.source) + ", " + std::to_string(pair.target) +
                            ") is not an allowed qubit pair"),
      pair_(pair) {}

uint64_t pair_list_to_mask(const ChipTopology& topology, std::span<const QubitPair> pairs) {
  uint64_t mask = 0;
  for (const QubitPair& p : pairs) {
    const auto e = topology.edge_address(p);
    if (!e) throw NotAnAllowedPair(p);
    mask |= uint64_t{1} << *e;
  }
  return mask;
}

std::vector<QubitPair> mask_to_pair_list(const ChipTopology& topology, uint64_t mask) {
  std::vector<QubitPair> pairs;
  const uint32_t n = std::min<uint32_t>(topology.num_edges(), 64);
  for (uint32_t e = 0; e < n; ++e) {
    if (mask >> e & 1) pairs.push_back(topology.edges[e]);
  }
  return pairs;
}

uint64_t qubit_list_to_mask(std::span<const uint32_t> qubits) {
  uint64_t mask = 0;
  for (uint32_t q : qubits) {
    if (q < 64) mask |= uint64_t{1} << q;
  }
  return mask;
}

std::vector<uint32_t> mask_to_qubit_list(uint64_t mask) {
  std::vector<uint32_t> qubits;
  for (uint32_t q = 0; q < 64; ++q) {
    if (mask >> q & 1) qubits.push_back(q);
  }
  return qubits;
}

}  // namespace eqasm
