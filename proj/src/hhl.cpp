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

#include "hhlprep/hhl.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hhlprep {

namespace {

constexpr double kRegisterZeroTolerance = 1e-12;
// Clock values below this weight are treated as unoccupied by the domain check.
constexpr double kOccupiedWeight = 1e-20;
constexpr double kDomainSlack = 1e-12;

void check_clock_zero(const StateVector& state) {
  const auto pops = clock_populations(state);
  const double residual = 1.0 - pops[0];
  if (std::abs(residual) > kRegisterZeroTolerance) {
    throw PreconditionError("qpe needs the clock register in |0...0>; weight elsewhere is " +
                            std::to_string(residual));
  }
}

}  // namespace

ClockValue::ClockValue(std::uint64_t raw, unsigned n_c) : raw_(raw), n_c_(n_c) {
  if (n_c < 1 || n_c > 62) throw ValidationError("clock width out of range");
  if (raw >= (std::uint64_t{1} << n_c)) throw IndexError("clock value exceeds register width");
}

ClockValue ClockValue::from_signed(std::int64_t value, unsigned n_c) {
  if (n_c < 1 || n_c > 62) throw ValidationError("clock width out of range");
  const std::int64_t half = std::int64_t{1} << (n_c - 1);
  if (value < -half || value >= half) {
    throw IndexError("signed clock value " + std::to_string(value) + " outside [" +
                     std::to_string(-half) + ", " + std::to_string(half) + ")");
  }
  const std::uint64_t mask = (std::uint64_t{1} << n_c) - 1;
  return ClockValue(static_cast<std::uint64_t>(value) & mask, n_c);
}

std::int64_t ClockValue::as_signed() const {
  const std::uint64_t half = std::uint64_t{1} << (n_c_ - 1);
  return raw_ < half ? static_cast<std::int64_t>(raw_)
                     : static_cast<std::int64_t>(raw_) - (std::int64_t{1} << n_c_);
}

std::vector<double> clock_populations(const StateVector& state) {
  const auto& layout = state.registers();
  const std::size_t d = layout.system_dim();
  const std::size_t m = layout.clock_dim();
  std::vector<double> pops(m, 0.0);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) pops[(i / d) % m] += std::norm(amps[i]);
  return pops;
}

void apply_clock_hadamards(StateVector& state, CircuitTrace* trace) {
  const auto layout = state.registers();
  const Gate2x2 h = Gate2x2::hadamard();
  for (unsigned r = 0; r < layout.n_c; ++r) {
    apply_1q(state, h, layout.clock_qubit(r));
    if (trace) trace->record(GateKind::hadamard, "clock");
  }
}

void apply_controlled_ladder(StateVector& state, const ActionFactory& factory, bool inverse,
                             CircuitTrace* trace) {
  const auto layout = state.registers();
  // The rungs commute; the forward ladder runs r = n_c-1 .. 0 and the inverse
  // ladder mirrors it.
  for (unsigned i = 0; i < layout.n_c; ++i) {
    const unsigned r = inverse ? i : layout.n_c - 1 - i;
    const std::uint64_t power = std::uint64_t{1} << r;
    apply_controlled_register_unitary(state, layout.clock_qubit(r), factory(power, inverse));
    if (trace) trace->record(GateKind::controlled_unitary, "system", 1, power);
  }
}

void qpe(StateVector& state, const ActionFactory& factory, CircuitTrace* trace,
         QftMethod method) {
  check_clock_zero(state);
  apply_clock_hadamards(state, trace);
  apply_controlled_ladder(state, factory, false, trace);
  qft_register(state, QftDirection::inverse, method);
  if (trace) trace->record(GateKind::iqft, "clock", state.registers().n_c);
}

void iqpe(StateVector& state, const ActionFactory& factory, CircuitTrace* trace,
          QftMethod method) {
  qft_register(state, QftDirection::forward, method);
  if (trace) trace->record(GateKind::qft, "clock", state.registers().n_c);
  apply_controlled_ladder(state, factory, true, trace);
  apply_clock_hadamards(state, trace);
}

double rotation_amplitude(const RotationSpec& spec, std::int64_t lambda) {
  const double l = static_cast<double>(lambda);
  if (spec.mode == RotationMode::multiply) return spec.C * l;
  return lambda == 0 ? 0.0 : spec.C / l;
}

void controlled_rotation(StateVector& state, const RotationSpec& spec, CircuitTrace* trace) {
  const auto layout = state.registers();
  const unsigned ancilla = layout.ancilla_qubit();
  const double excited = state.weight(ancilla, 1);
  if (excited > kRegisterZeroTolerance) {
    throw PreconditionError("controlled rotation needs the ancilla in |0>; |1> weight is " +
                            std::to_string(excited));
  }
  const std::size_t d = layout.system_dim();
  const std::size_t m = layout.clock_dim();
  const auto pops = clock_populations(state);

  std::vector<double> value(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::int64_t lambda = ClockValue(k, layout.n_c).as_signed();
    double v = rotation_amplitude(spec, lambda);
    if (std::abs(v) > 1.0 + kDomainSlack && pops[k] > kOccupiedWeight &&
        spec.policy == DomainPolicy::reject) {
      throw RotationDomainError("rotation amplitude " + std::to_string(v) + " at clock value " +
                                std::to_string(lambda) + " (weight " +
                                std::to_string(pops[k]) + ") is outside [-1, 1]");
    }
    value[k] = std::clamp(v, -1.0, 1.0);
  }

  auto amps = state.amplitudes();
  const std::size_t upper = d * m;
  for (std::size_t k = 0; k < m; ++k) {
    const double v = value[k];
    const double c = std::sqrt(std::max(0.0, 1.0 - v * v));
    for (std::size_t s = 0; s < d; ++s) {
      const std::size_t i0 = s + d * k;
      const Amplitude a0 = amps[i0];
      const Amplitude a1 = amps[i0 + upper];
      amps[i0] = c * a0 - v * a1;
      amps[i0 + upper] = v * a0 + c * a1;
    }
  }
  if (trace) trace->record(GateKind::controlled_rotation, "ancilla", layout.n_c);
}

}  // namespace hhlprep
