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
#include <span>

#include "hhlprep/amplitude.hpp"
#include "hhlprep/statevector.hpp"
#include "hhlprep/trace.hpp"

namespace hhlprep {

/// How a controlled propagator rung is charged.
enum class QueryAccounting {
  power,  // U^{2^r} costs 2^r oracle queries
  unit,   // every controlled rung costs one query
};

/// Gate and oracle-query counts of a recorded circuit.
///
/// QFTs are charged r(r+1)/2 gates for width r (Hadamards plus controlled
/// phases, swaps free). A controlled rotation over an n_c-qubit clock is
/// charged ceil(n_c^{4/3}) operations.
struct CostReport {
  std::uint64_t hadamards = 0;
  std::uint64_t controlled_ladder_applications = 0;
  std::uint64_t oracle_queries = 0;       // power accounting
  std::uint64_t oracle_queries_unit = 0;  // unit accounting
  std::uint64_t qft_gates = 0;
  std::uint64_t controlled_rotations = 0;
  std::uint64_t rotation_ops_charged = 0;
  std::uint64_t tree_rotations = 0;
  std::uint64_t measurements = 0;

  std::uint64_t total_charged(QueryAccounting accounting = QueryAccounting::power) const;

  bool operator==(const CostReport&) const = default;
};

/// ceil(n^{4/3}) in exact integer arithmetic.
std::uint64_t rotation_cost(unsigned clock_width);

/// Throws FormatError on events that cannot come from a valid circuit.
CostReport gate_census(std::span<const TraceEvent> events);
inline CostReport gate_census(const CircuitTrace& trace) { return gate_census(trace.events()); }

struct BaselineResult {
  StateVector state;
  CostReport census;
  CircuitTrace trace;
};

/// Exact amplitude encoding with a binary tree of 2^n_b - 1 uniformly
/// controlled two-level rotations, most significant qubit first.
BaselineResult baseline_encode(const AmplitudeVector& b);

}  // namespace hhlprep
