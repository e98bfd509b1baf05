// Copyright 2026 The hhlprep Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hhlprep {

enum class GateKind {
  hadamard,
  controlled_unitary,
  qft,
  iqft,
  controlled_rotation,
  tree_rotation,
  measurement,
};

std::string_view gate_name(GateKind kind);
/// Throws FormatError for an unknown name.
GateKind parse_gate_name(std::string_view name);

/// One circuit-level event.
///
/// `width` is the number of qubits the event spans (the clock width for QFTs
/// and controlled rotations, 1 for single-qubit gates). `power` is the
/// propagator exponent of a controlled ladder rung and 1 otherwise.
struct TraceEvent {
  GateKind kind;
  std::string reg;
  unsigned width = 1;
  std::uint64_t power = 1;

  bool operator==(const TraceEvent&) const = default;
};

class CircuitTrace {
 public:
  void record(GateKind kind, std::string reg, unsigned width = 1, std::uint64_t power = 1) {
    events_.push_back({kind, std::move(reg), width, power});
  }
  const std::vector<TraceEvent>& events() const { return events_; }
  void clear() { events_.clear(); }

 private:
  std::vector<TraceEvent> events_;
};

}  // namespace hhlprep
