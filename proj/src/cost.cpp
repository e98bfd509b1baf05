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

#include "hhlprep/cost.hpp"

#include <array>
#include <cmath>
#include <string>

namespace hhlprep {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 7> kGateNames{{
    {GateKind::hadamard, "h"},
    {GateKind::controlled_unitary, "controlled_u"},
    {GateKind::qft, "qft"},
    {GateKind::iqft, "iqft"},
    {GateKind::controlled_rotation, "controlled_rotation"},
    {GateKind::tree_rotation, "tree_rotation"},
    {GateKind::measurement, "measure"},
}};

}  // namespace

std::string_view gate_name(GateKind kind) {
  for (const auto& [k, name] : kGateNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

GateKind parse_gate_name(std::string_view name) {
  for (const auto& [k, n] : kGateNames) {
    if (n == name) return k;
  }
  throw FormatError("unknown gate name '" + std::string(name) + "' in trace");
}

std::uint64_t CostReport::total_charged(QueryAccounting accounting) const {
  const std::uint64_t queries =
      accounting == QueryAccounting::power ? oracle_queries : oracle_queries_unit;
  return hadamards + queries + qft_gates + rotation_ops_charged + tree_rotations;
}

std::uint64_t rotation_cost(unsigned clock_width) {
  // Smallest m with m^3 >= n^4.
  const std::uint64_t n = clock_width;
  const std::uint64_t target = n * n * n * n;
  auto m = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(target)));
  while (m > 0 && (m - 1) * (m - 1) * (m - 1) >= target) --m;
  while (m * m * m < target) ++m;
  return m;
}

CostReport gate_census(std::span<const TraceEvent> events) {
  CostReport r;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const TraceEvent& e = events[i];
    const auto bad = [&](const std::string& why) {
      return FormatError("trace event " + std::to_string(i) + " (" +
                         std::string(gate_name(e.kind)) + "): " + why);
    };
    if (e.width == 0) throw bad("zero width");
    if (e.power == 0) throw bad("zero power");
    switch (e.kind) {
      case GateKind::hadamard:
        if (e.width != 1 || e.power != 1) throw bad("single-qubit gate with width/power");
        ++r.hadamards;
        break;
      case GateKind::controlled_unitary:
        if ((e.power & (e.power - 1)) != 0) throw bad("ladder power is not a power of two");
        ++r.controlled_ladder_applications;
        r.oracle_queries += e.power;
        ++r.oracle_queries_unit;
        break;
      case GateKind::qft:
      case GateKind::iqft:
        r.qft_gates += std::uint64_t{e.width} * (e.width + 1) / 2;
        break;
      case GateKind::controlled_rotation:
        ++r.controlled_rotations;
        r.rotation_ops_charged += rotation_cost(e.width);
        break;
      case GateKind::tree_rotation:
        ++r.tree_rotations;
        break;
      case GateKind::measurement:
        ++r.measurements;
        break;
    }
  }
  return r;
}

BaselineResult baseline_encode(const AmplitudeVector& b) {
  const unsigned n = b.n_b();
  const std::size_t dim = b.size();
  BaselineResult result{StateVector(n), {}, {}};

  // Subtree norms: node (level, prefix) covers indices [prefix * w, (prefix + 1) * w)
  // with w = 2^(n - level).
  const auto subtree_norm = [&](unsigned level, std::size_t prefix) {
    const std::size_t w = dim >> level;
    double s = 0.0;
    for (std::size_t i = prefix * w; i < (prefix + 1) * w; ++i) s += std::norm(b[i]);
    return std::sqrt(s);
  };

  for (unsigned level = 0; level < n; ++level) {
    const unsigned target = n - 1 - level;
    const std::uint64_t control_mask = ((std::uint64_t{1} << n) - 1) &
                                       ~((std::uint64_t{1} << (target + 1)) - 1);
    const bool leaf = level + 1 == n;
    for (std::size_t prefix = 0; prefix < (std::size_t{1} << level); ++prefix) {
      Gate2x2 gate;
      if (!leaf) {
        const double left = subtree_norm(level + 1, 2 * prefix);
        const double right = subtree_norm(level + 1, 2 * prefix + 1);
        gate = Gate2x2::ry(2.0 * std::atan2(right, left));
      } else {
        // Two-level SU(2) rotation carrying both moduli and both phases:
        // |0> -> e^{i p0} cos|0> + e^{i p1} sin|1>.
        const Amplitude a0 = b[2 * prefix];
        const Amplitude a1 = b[2 * prefix + 1];
        const double half = std::atan2(std::abs(a1), std::abs(a0));
        const double p0 = std::abs(a0) > 0.0 ? std::arg(a0) : 0.0;
        const double p1 = std::abs(a1) > 0.0 ? std::arg(a1) : 0.0;
        const double c = std::cos(half);
        const double s = std::sin(half);
        gate = {std::polar(c, p0), -std::polar(s, -p1), std::polar(s, p1), std::polar(c, -p0)};
      }
      apply_multi_controlled_1q(result.state, gate, target, control_mask,
                                static_cast<std::uint64_t>(prefix) << (target + 1));
      result.trace.record(GateKind::tree_rotation, "target", level + 1);
    }
  }
  result.census = gate_census(result.trace);
  return result;
}

}  // namespace hhlprep
