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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hhlprep/errors.hpp"

namespace hhlprep {

using Amplitude = std::complex<double>;

inline constexpr unsigned kDefaultQubitCap = 26;

/// Qubit partition of the preparation / solver circuits.
///
/// Bit order, from least to most significant bit of an amplitude index:
///
///   [ target qubits (n_b) | flag (0 or 1) | clock qubits (n_c) | ancilla ]
///
/// Target qubit 0 is the LSB of the target index j and clock qubit 0 is the
/// LSB of the clock value k, so an amplitude index decomposes as
///   index = j + D * (k + 2^n_c * a),  D = 2^(n_b + has_flag),
/// with the flag bit (when present) being bit n_b of the system index.
struct RegisterLayout {
  unsigned n_b = 1;
  bool has_flag = false;
  unsigned n_c = 1;

  unsigned total() const { return n_b + (has_flag ? 1u : 0u) + n_c + 1u; }
  unsigned system_qubits() const { return n_b + (has_flag ? 1u : 0u); }
  std::size_t target_dim() const { return std::size_t{1} << n_b; }
  std::size_t system_dim() const { return std::size_t{1} << system_qubits(); }
  std::size_t clock_dim() const { return std::size_t{1} << n_c; }

  unsigned flag_qubit() const;
  unsigned clock_qubit(unsigned r) const { return system_qubits() + r; }
  unsigned ancilla_qubit() const { return system_qubits() + n_c; }

  std::size_t index(std::size_t system, std::size_t clock, unsigned ancilla) const {
    return system + system_dim() * (clock + clock_dim() * ancilla);
  }

  /// Throws ValidationError for n_b or n_c of zero and CapacityError above the cap.
  void validate(unsigned cap = kDefaultQubitCap) const;

  bool operator==(const RegisterLayout&) const = default;
};

/// Dense 2x2 single-qubit operator, row-major.
struct Gate2x2 {
  Amplitude u00, u01, u10, u11;

  bool is_unitary(double tol = 1e-12) const;
  Gate2x2 adjoint() const;

  static Gate2x2 hadamard();
  static Gate2x2 pauli_x();
  /// Real rotation mapping |0> to cos(theta/2)|0> + sin(theta/2)|1>.
  static Gate2x2 ry(double theta);
  static Gate2x2 phase(double angle);
};

/// Dense statevector over `num_qubits` qubits.
///
/// A state built from a RegisterLayout carries it and can be used with the
/// register-level operations below; a bare state only supports qubit-level
/// gates.
class StateVector {
 public:
  explicit StateVector(unsigned num_qubits, unsigned cap = kDefaultQubitCap);
  explicit StateVector(const RegisterLayout& layout, unsigned cap = kDefaultQubitCap);

  static StateVector from_amplitudes(const RegisterLayout& layout, std::vector<Amplitude> amps);
  static StateVector from_amplitudes(unsigned num_qubits, std::vector<Amplitude> amps);

  unsigned num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::optional<RegisterLayout>& layout() const { return layout_; }
  /// The layout; throws PreconditionError on a bare state.
  const RegisterLayout& registers() const;

  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<Amplitude> amplitudes() { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }
  Amplitude& operator[](std::size_t i) { return amps_[i]; }

  double norm() const;
  /// Probability weight of basis states whose `qubit` reads `value`.
  double weight(unsigned qubit, unsigned value) const;

  void check_qubit(unsigned qubit) const;

 private:
  unsigned num_qubits_;
  std::optional<RegisterLayout> layout_;
  std::vector<Amplitude> amps_;
};

/// |0...0>_b |0...0>_c |0>_a for the given layout.
StateVector init_zero_state(const RegisterLayout& layout, unsigned cap = kDefaultQubitCap);

void apply_1q(StateVector& state, const Gate2x2& gate, unsigned qubit);

/// Applies `gate` to `target` on the basis states where every qubit in
/// `control_mask` matches the corresponding bit of `control_value`.
void apply_multi_controlled_1q(StateVector& state, const Gate2x2& gate, unsigned target,
                               std::uint64_t control_mask, std::uint64_t control_value);

void apply_controlled_phase(StateVector& state, unsigned control, unsigned target, double angle);

void swap_qubits(StateVector& state, unsigned a, unsigned b);

/// A unitary acting on the system register (target qubits plus the flag).
///
/// Under the layout bit order the system register is the contiguous block of
/// the lowest D = 2^system_qubits amplitudes for each value of the remaining
/// qubits, so the kernel receives one contiguous slice of length D at a time.
class RegisterUnitaryAction {
 public:
  using Kernel = std::function<void(std::span<Amplitude>)>;

  RegisterUnitaryAction(std::size_t dim, Kernel kernel, std::string label);

  std::size_t dim() const { return dim_; }
  const std::string& label() const { return label_; }
  void apply(std::span<Amplitude> slice) const { kernel_(slice); }

 private:
  std::size_t dim_;
  Kernel kernel_;
  std::string label_;
};

/// Applies `action` `repeat` times to every system slice whose `control` bit is 1.
void apply_controlled_register_unitary(StateVector& state, unsigned control,
                                       const RegisterUnitaryAction& action,
                                       std::uint64_t repeat = 1);

/// Applies `action` unconditionally to every system slice.
void apply_register_unitary(StateVector& state, const RegisterUnitaryAction& action);

enum class QftDirection { forward, inverse };

/// `decomposed` runs the textbook H + controlled-phase + swap network;
/// `dense` multiplies each clock slice by the explicit 2^n_c x 2^n_c matrix.
enum class QftMethod { decomposed, dense };

/// Forward QFT on the clock register: |k> -> 2^{-n_c/2} sum_y e^{+2 pi i y k / 2^n_c} |y>.
/// The inverse is its conjugate transpose.
void qft_register(StateVector& state, QftDirection direction,
                  QftMethod method = QftMethod::decomposed);

/// Projects `qubit` onto `outcome`, renormalizes, and returns the outcome probability.
/// Throws ImpossibleOutcomeError when that probability is below 1e-15.
double measure_postselect(StateVector& state, unsigned qubit, unsigned outcome);

struct MeasurementSample {
  unsigned outcome;
  double probability;
};

/// Samples a computational-basis measurement of `qubit` and collapses the state.
template <class UniformSource>
MeasurementSample measure_sample(StateVector& state, unsigned qubit, UniformSource&& uniform) {
  const double p1 = state.weight(qubit, 1);
  const unsigned outcome = uniform() < p1 ? 1u : 0u;
  const double p = measure_postselect(state, qubit, outcome);
  return {outcome, p};
}

/// |<a|b>| for unit vectors of equal dimension.
double fidelity(std::span<const Amplitude> a, std::span<const Amplitude> b);
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace hhlprep
