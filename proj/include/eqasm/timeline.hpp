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

#ifndef EQASM_TIMELINE_HPP_
#define EQASM_TIMELINE_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "eqasm/config.hpp"
#include "eqasm/instruction.hpp"
#include "eqasm/microcode.hpp"

namespace eqasm {

/// Reserve-phase timeline. Timing points are counted in cycles from the
/// timeline origin; the first point is 0.
class TimestampManager {
 public:
  int64_t last_point() const { return last_point_; }

  /// QWAIT, QWAITR and bundle PI all advance the timeline by an interval.
  /// Returns true if a new timing point was generated (interval > 0).
  bool advance(int64_t interval) {
    last_point_ += interval;
    return interval > 0;
  }

 private:
  int64_t last_point_ = 0;
};

struct TimedOperation {
  int64_t timestamp = 0;
  uint32_t qubit = 0;
  std::string mnemonic;
  OpSel role = OpSel::None;

  friend bool operator==(const TimedOperation&, const TimedOperation&) = default;
  friend auto operator<=>(const TimedOperation&, const TimedOperation&) = default;
};

/// Evaluates a program as straight-line code (branches are not taken, FMR
/// reads 0) and returns the micro-operations it reserves, sorted. Register
/// arithmetic feeding QWAITR is evaluated.
std::vector<TimedOperation> timeline_of(const Program& program, const InstantiationConfig& config);

}  // namespace eqasm

#endif  // EQASM_TIMELINE_HPP_
