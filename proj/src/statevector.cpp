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

#include "hhlprep/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace hhlprep {

namespace {

constexpr double kImpossibleProbability = 1e-15;
constexpr double kUnitNormTolerance = 1e-9;

void check_cap(unsigned num_qubits, unsigned cap) {
  if (num_qubits > cap) {
    throw CapacityError("state needs " + std::to_string(num_qubits) +
                        " qubits, simulator cap is " + std::to_string(cap));
  }
}

double squared_norm(std::span<const Amplitude> v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return s;
}

}  // namespace

unsigned RegisterLayout::flag_qubit() const {
  if (!has_flag) throw IndexError("layout has no flag qubit");
  return n_b;
}

void RegisterLayout::validate(unsigned cap) const {
  if (n_b < 1) throw ValidationError("layout needs at least one target qubit");
  if (n_c < 1) throw ValidationError("layout needs at least one clock qubit");
  check_cap(total(), cap);
}

bool Gate2x2::is_unitary(double tol) const {
  // Columns orthonormal.
  const double c0 = std::norm(u00) + std::norm(u10);
  const double c1 = std::norm(u01) + std::norm(u11);
  const Amplitude cross = std::conj(u00) * u01 + std::conj(u10) * u11;
  return std::abs(c0 - 1.0) <= tol && std::abs(c1 - 1.0) <= tol && std::abs(cross) <= tol;
}

Gate2x2 Gate2x2::adjoint() const {
  return {std::conj(u00), std::conj(u10), std::conj(u01), std::conj(u11)};
}

Gate2x2 Gate2x2::hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {s, s, s, -s};
}

Gate2x2 Gate2x2::pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }

Gate2x2 Gate2x2::ry(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {c, -s, s, c};
}

Gate2x2 Gate2x2::phase(double angle) { return {1.0, 0.0, 0.0, std::polar(1.0, angle)}; }

StateVector::StateVector(unsigned num_qubits, unsigned cap) : num_qubits_(num_qubits) {
  check_cap(num_qubits, cap);
  amps_.assign(std::size_t{1} << num_qubits, Amplitude{});
  amps_[0] = 1.0;
}

StateVector::StateVector(const RegisterLayout& layout, unsigned cap)
    : num_qubits_(layout.total()), layout_(layout) {
  layout.validate(cap);
  amps_.assign(std::size_t{1} << num_qubits_, Amplitude{});
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(const RegisterLayout& layout,
                                         std::vector<Amplitude> amps) {
  StateVector s(layout, std::max(layout.total(), kDefaultQubitCap));
  if (amps.size() != s.dim()) throw ShapeError("amplitude count does not match layout");
  s.amps_ = std::move(amps);
  return s;
}

StateVector StateVector::from_amplitudes(unsigned num_qubits, std::vector<Amplitude> amps) {
  StateVector s(num_qubits, std::max(num_qubits, kDefaultQubitCap));
  if (amps.size() != s.dim()) throw ShapeError("amplitude count does not match qubit count");
  s.amps_ = std::move(amps);
  return s;
}

const RegisterLayout& StateVector::registers() const {
  if (!layout_) throw PreconditionError("operation needs a register layout");
  return *layout_;
}

double StateVector::norm() const { return std::sqrt(squared_norm(amps_)); }

double StateVector::weight(unsigned qubit, unsigned value) const {
  check_qubit(qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  double w = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (((i & bit) != 0) == (value != 0)) w += std::norm(amps_[i]);
  }
  return w;
}

void StateVector::check_qubit(unsigned qubit) const {
  if (qubit >= num_qubits_) {
    throw IndexError("qubit " + std::to_string(qubit) + " out of range for " +
                     std::to_string(num_qubits_) + "-qubit state");
  }
}

StateVector init_zero_state(const RegisterLayout& layout, unsigned cap) {
  return StateVector(layout, cap);
}

void apply_1q(StateVector& state, const Gate2x2& gate, unsigned qubit) {
  apply_multi_controlled_1q(state, gate, qubit, 0, 0);
}

void apply_multi_controlled_1q(StateVector& state, const Gate2x2& gate, unsigned target,
                               std::uint64_t control_mask, std::uint64_t control_value) {
  state.check_qubit(target);
  if (!gate.is_unitary()) throw ValidationError("gate is not unitary");
  const std::size_t bit = std::size_t{1} << target;
  if (control_mask & bit) throw OverlapError("target qubit is also a control");
  if (state.num_qubits() < 64 && (control_mask >> state.num_qubits()) != 0) {
    throw IndexError("control mask refers to qubits outside the state");
  }
  control_value &= control_mask;
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & bit) continue;
    if ((i & control_mask) != control_value) continue;
    const Amplitude a0 = amps[i];
    const Amplitude a1 = amps[i | bit];
    amps[i] = gate.u00 * a0 + gate.u01 * a1;
    amps[i | bit] = gate.u10 * a0 + gate.u11 * a1;
  }
}

void apply_controlled_phase(StateVector& state, unsigned control, unsigned target, double angle) {
  state.check_qubit(control);
  state.check_qubit(target);
  if (control == target) throw OverlapError("controlled phase needs two distinct qubits");
  const std::size_t mask = (std::size_t{1} << control) | (std::size_t{1} << target);
  const Amplitude factor = std::polar(1.0, angle);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & mask) == mask) amps[i] *= factor;
  }
}

void swap_qubits(StateVector& state, unsigned a, unsigned b) {
  state.check_qubit(a);
  state.check_qubit(b);
  if (a == b) return;
  const std::size_t ba = std::size_t{1} << a;
  const std::size_t bb = std::size_t{1} << b;
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & ba) && !(i & bb)) std::swap(amps[i], amps[(i & ~ba) | bb]);
  }
}

RegisterUnitaryAction::RegisterUnitaryAction(std::size_t dim, Kernel kernel, std::string label)
    : dim_(dim), kernel_(std::move(kernel)), label_(std::move(label)) {
  if (dim_ == 0 || (dim_ & (dim_ - 1)) != 0) {
    throw ValidationError("register action dimension must be a power of two");
  }
}

namespace {

void check_action_fits(const StateVector& state, const RegisterUnitaryAction& action) {
  const auto& layout = state.registers();
  if (action.dim() != layout.system_dim()) {
    throw ShapeError("action '" + action.label() + "' acts on dimension " +
                     std::to_string(action.dim()) + ", system register has " +
                     std::to_string(layout.system_dim()));
  }
}

}  // namespace

void apply_controlled_register_unitary(StateVector& state, unsigned control,
                                       const RegisterUnitaryAction& action,
                                       std::uint64_t repeat) {
  check_action_fits(state, action);
  state.check_qubit(control);
  const auto& layout = state.registers();
  if (control < layout.system_qubits()) {
    throw OverlapError("control qubit " + std::to_string(control) +
                       " lies inside the system register");
  }
  const std::size_t d = action.dim();
  const std::size_t bit = std::size_t{1} << control;
  auto amps = state.amplitudes();
  for (std::size_t base = 0; base < amps.size(); base += d) {
    if (!(base & bit)) continue;
    auto slice = amps.subspan(base, d);
    for (std::uint64_t r = 0; r < repeat; ++r) action.apply(slice);
  }
}

void apply_register_unitary(StateVector& state, const RegisterUnitaryAction& action) {
  check_action_fits(state, action);
  const std::size_t d = action.dim();
  auto amps = state.amplitudes();
  for (std::size_t base = 0; base < amps.size(); base += d) action.apply(amps.subspan(base, d));
}

namespace {

void qft_decomposed(StateVector& state, const RegisterLayout& layout, QftDirection direction) {
  const unsigned n = layout.n_c;
  const auto q = [&](unsigned r) { return layout.clock_qubit(r); };
  const Gate2x2 h = Gate2x2::hadamard();
  if (direction == QftDirection::forward) {
    for (unsigned i = n; i-- > 0;) {
      apply_1q(state, h, q(i));
      for (unsigned j = i; j-- > 0;) {
        apply_controlled_phase(state, q(j), q(i), std::numbers::pi / double(1ULL << (i - j)));
      }
    }
    for (unsigned i = 0; i < n / 2; ++i) swap_qubits(state, q(i), q(n - 1 - i));
  } else {
    for (unsigned i = 0; i < n / 2; ++i) swap_qubits(state, q(i), q(n - 1 - i));
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < i; ++j) {
        apply_controlled_phase(state, q(j), q(i), -std::numbers::pi / double(1ULL << (i - j)));
      }
      apply_1q(state, h, q(i));
    }
  }
}

void qft_dense(StateVector& state, const RegisterLayout& layout, QftDirection direction) {
  const std::size_t m = layout.clock_dim();
  const std::size_t stride = layout.system_dim();
  const double sign = direction == QftDirection::forward ? 1.0 : -1.0;
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  // Reduce y*k modulo m before forming the angle so every entry is exact to
  // one rounding.
  std::vector<Amplitude> roots(m);
  for (std::size_t r = 0; r < m; ++r) {
    roots[r] = std::polar(scale, sign * 2.0 * std::numbers::pi * double(r) / double(m));
  }
  auto amps = state.amplitudes();
  std::vector<Amplitude> in(m), out(m);
  const std::size_t block = stride * m;
  for (std::size_t outer = 0; outer < amps.size(); outer += block) {
    for (std::size_t s = 0; s < stride; ++s) {
      for (std::size_t k = 0; k < m; ++k) in[k] = amps[outer + s + stride * k];
      for (std::size_t y = 0; y < m; ++y) {
        Amplitude acc{};
        for (std::size_t k = 0; k < m; ++k) acc += roots[(y * k) & (m - 1)] * in[k];
        out[y] = acc;
      }
      for (std::size_t y = 0; y < m; ++y) amps[outer + s + stride * y] = out[y];
    }
  }
}

}  // namespace

void qft_register(StateVector& state, QftDirection direction, QftMethod method) {
  const auto& layout = state.registers();
  if (method == QftMethod::dense) {
    qft_dense(state, layout, direction);
  } else {
    qft_decomposed(state, layout, direction);
  }
}

double measure_postselect(StateVector& state, unsigned qubit, unsigned outcome) {
  if (outcome > 1) throw ValidationError("measurement outcome must be 0 or 1");
  const double p = state.weight(qubit, outcome);
  if (p < kImpossibleProbability) {
    throw ImpossibleOutcomeError("outcome " + std::to_string(outcome) + " on qubit " +
                                 std::to_string(qubit) + " has probability " +
                                 std::to_string(p));
  }
  const std::size_t bit = std::size_t{1} << qubit;
  const double scale = 1.0 / std::sqrt(p);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (((i & bit) != 0) == (outcome != 0)) {
      amps[i] *= scale;
    } else {
      amps[i] = 0.0;
    }
  }
  return p;
}

double fidelity(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  if (a.size() != b.size()) {
    throw ShapeError("fidelity of vectors with dimensions " + std::to_string(a.size()) +
                     " and " + std::to_string(b.size()));
  }
  if (std::abs(std::sqrt(squared_norm(a)) - 1.0) > kUnitNormTolerance ||
      std::abs(std::sqrt(squared_norm(b)) - 1.0) > kUnitNormTolerance) {
    throw ValidationError("fidelity needs unit-norm vectors");
  }
  Amplitude overlap{};
  for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(a[i]) * b[i];
  return std::min(1.0, std::abs(overlap));
}

double fidelity(const StateVector& a, const StateVector& b) {
  return fidelity(a.amplitudes(), b.amplitudes());
}

}  // namespace hhlprep
