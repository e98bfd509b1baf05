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
#include <functional>
#include <span>

#include "hhlprep/statevector.hpp"
#include "hhlprep/trace.hpp"

namespace hhlprep {

/// Raw clock register value and its two's-complement reading.
class ClockValue {
 public:
  ClockValue(std::uint64_t raw, unsigned n_c);
  static ClockValue from_signed(std::int64_t value, unsigned n_c);

  std::uint64_t raw() const { return raw_; }
  std::int64_t as_signed() const;
  unsigned width() const { return n_c_; }

 private:
  std::uint64_t raw_;
  unsigned n_c_;
};

/// U^power (or U^-power when `inverse`) on the system register.
using ActionFactory = std::function<RegisterUnitaryAction(std::uint64_t power, bool inverse)>;

/// H on each clock qubit.
void apply_clock_hadamards(StateVector& state, CircuitTrace* trace = nullptr);

/// Controlled U^{+-2^r} with clock qubit r as control, for every r.
void apply_controlled_ladder(StateVector& state, const ActionFactory& factory, bool inverse,
                             CircuitTrace* trace = nullptr);

/// H on every clock qubit, the controlled U^{2^r} ladder with clock qubit r as
/// control, then the inverse QFT. Requires the clock register in |0...0>.
void qpe(StateVector& state, const ActionFactory& factory, CircuitTrace* trace = nullptr,
         QftMethod method = QftMethod::decomposed);

/// Operator inverse of qpe: QFT, the ladder with U^{-2^r}, then H on every clock qubit.
void iqpe(StateVector& state, const ActionFactory& factory, CircuitTrace* trace = nullptr,
          QftMethod method = QftMethod::decomposed);

enum class RotationMode {
  multiply,  // ancilla |1> amplitude C * lambda
  invert,    // ancilla |1> amplitude C / lambda
};

/// What to do with clock values whose rotation amplitude falls outside [-1, 1].
enum class DomainPolicy {
  reject,    // RotationDomainError if such a value carries amplitude
  saturate,  // clamp the amplitude to +-1
};

struct RotationSpec {
  RotationMode mode = RotationMode::multiply;
  double C = 1.0;
  DomainPolicy policy = DomainPolicy::reject;
};

/// Ancilla |1> amplitude for signed clock value `lambda`, before domain handling.
/// Invert mode at lambda = 0 gives 0 (the ancilla is left in |0>).
double rotation_amplitude(const RotationSpec& spec, std::int64_t lambda);

/// Rotates the ancilla, conditioned on each clock basis value k read as a
/// signed integer, to sqrt(1 - v^2)|0> + v|1> with v = rotation_amplitude(k).
/// Requires the ancilla in |0>.
void controlled_rotation(StateVector& state, const RotationSpec& spec,
                         CircuitTrace* trace = nullptr);

/// Probability weight of every clock value (summed over all other qubits).
std::vector<double> clock_populations(const StateVector& state);

}  // namespace hhlprep
