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

#include "hhlprep/prep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "hhlprep/random.hpp"
#include "hhlprep/spectral.hpp"

namespace hhlprep {

namespace {

constexpr double kIntegerTolerance = 1e-9;
constexpr double kDomainSlack = 1e-12;

using Observer = std::function<void(const char* label, const StateVector& state)>;

double clock_scale(unsigned n_c) { return static_cast<double>(std::uint64_t{1} << n_c); }

double default_t(const AmplitudeVector& b, unsigned n_c) {
  const double m = clock_scale(n_c);
  return 2.0 * std::numbers::pi * (m / 2.0 - 1.0) / (m * b.max_modulus());
}

ActionFactory make_factory(const AmplitudeVector& b, const PrepParams& params, bool embedded) {
  const std::uint64_t cap = std::uint64_t{1} << (params.n_c - 1);
  if (embedded) {
    EmbeddedPropagator prop = build_embedding(b, params.t);
    prop.max_power = cap;
    return [prop](std::uint64_t power, bool inverse) {
      return embedded_phase_action(prop, power, inverse);
    };
  }
  DiagonalPropagator prop{b, params.t, cap};
  return [prop](std::uint64_t power, bool inverse) {
    return diagonal_phase_action(prop, power, inverse);
  };
}

/// Holds everything one preparation needs and runs the circuit in two halves
/// around the ancilla measurement.
class PrepCircuit {
 public:
  PrepCircuit(const AmplitudeVector& b, const PrepParams& params)
      : b_(b),
        params_(params),
        layout_(prep_layout(b, params.n_c)),
        factory_(make_factory(b, params, layout_.has_flag)),
        rotation_{RotationMode::multiply, params.C,
                  is_exactly_representable(b, params.t, params.n_c) ? DomainPolicy::reject
                                                                    : DomainPolicy::saturate} {}

  const RegisterLayout& layout() const { return layout_; }
  DomainPolicy policy() const { return rotation_.policy; }
  double max_drift() const { return max_drift_; }

  /// Psi0 through Psi5.
  StateVector run_to_rotation(CircuitTrace& trace, const Observer& observe) {
    StateVector state = init_zero_state(layout_);
    emit(observe, "psi0", state);

    const Gate2x2 h = Gate2x2::hadamard();
    for (unsigned q = 0; q < layout_.n_b; ++q) {
      apply_1q(state, h, q);
      trace.record(GateKind::hadamard, "target");
    }
    track(state);
    emit(observe, "psi1", state);

    apply_clock_hadamards(state, &trace);
    track(state);
    emit(observe, "psi2", state);

    apply_controlled_ladder(state, factory_, false, &trace);
    track(state);
    emit(observe, "psi3", state);

    qft_register(state, QftDirection::inverse, params_.qft_method);
    trace.record(GateKind::iqft, "clock", layout_.n_c);
    track(state);
    emit(observe, "psi4", state);

    controlled_rotation(state, rotation_, &trace);
    track(state);
    emit(observe, "psi5", state);
    return state;
  }

  /// Psi7 through Psi9, starting from the post-selected Psi6.
  void finish(StateVector& state, CircuitTrace& trace, const Observer& observe) {
    emit(observe, "psi6", state);
    qft_register(state, QftDirection::forward, params_.qft_method);
    trace.record(GateKind::qft, "clock", layout_.n_c);
    track(state);
    emit(observe, "psi7", state);

    apply_controlled_ladder(state, factory_, true, &trace);
    track(state);
    emit(observe, "psi8", state);

    apply_clock_hadamards(state, &trace);
    track(state);
    emit(observe, "psi9", state);
  }

 private:
  static void emit(const Observer& observe, const char* label, const StateVector& state) {
    if (observe) observe(label, state);
  }

  void track(const StateVector& state) {
    max_drift_ = std::max(max_drift_, std::abs(state.norm() - 1.0));
  }

  const AmplitudeVector& b_;
  PrepParams params_;
  RegisterLayout layout_;
  ActionFactory factory_;
  RotationSpec rotation_;
  double max_drift_ = 0.0;
};

void fill_final_report(const AmplitudeVector& b, const StateVector& state, PrepReport& report) {
  const auto& layout = state.registers();
  const std::size_t n = layout.target_dim();
  const std::size_t offset = layout.has_flag ? n : 0;
  Amplitude overlap{};
  double slice_weight = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Amplitude a = state[layout.index(offset + j, 0, 1)];
    overlap += std::conj(b[j]) * a;
    slice_weight += std::norm(a);
  }
  report.joint_fidelity = std::min(1.0, std::abs(overlap));
  report.fidelity =
      slice_weight > 0.0 ? std::min(1.0, std::abs(overlap) / std::sqrt(slice_weight)) : 0.0;
  report.clock_residual = std::max(0.0, 1.0 - clock_populations(state)[0]);
  report.flag_weight = layout.has_flag ? state.weight(layout.flag_qubit(), 1) : 1.0;
}

}  // namespace

RegisterLayout prep_layout(const AmplitudeVector& b, unsigned n_c) {
  return RegisterLayout{b.n_b(), b.has_complex_entry(), n_c};
}

std::vector<double> scaled_eigenvalues(const AmplitudeVector& b, double t, unsigned n_c) {
  const double scale = clock_scale(n_c) * t / (2.0 * std::numbers::pi);
  const bool embedded = b.has_complex_entry();
  std::vector<double> lambda(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    lambda[j] = scale * (embedded ? std::abs(b[j]) : b[j].real());
  }
  return lambda;
}

bool is_exactly_representable(const AmplitudeVector& b, double t, unsigned n_c) {
  const double half = clock_scale(n_c) / 2.0;
  const bool embedded = b.has_complex_entry();
  for (double l : scaled_eigenvalues(b, t, n_c)) {
    const double r = std::round(l);
    if (std::abs(l - r) > kIntegerTolerance) return false;
    if (r < -half || r >= half) return false;
    if (embedded && -r < -half) return false;
  }
  return true;
}

PrepParams choose_parameters(const AmplitudeVector& b, unsigned n_c, std::optional<double> t,
                             std::optional<double> C) {
  if (n_c < 2) throw ValidationError("choose_parameters needs n_c >= 2");
  PrepParams p;
  p.n_c = n_c;
  p.t = t.value_or(default_t(b, n_c));
  if (!(p.t > 0.0) || !std::isfinite(p.t)) throw ValidationError("evolution time must be > 0");
  if (C) {
    p.C = *C;
  } else {
    double max_lambda = 0.0;
    for (double l : scaled_eigenvalues(b, p.t, n_c)) max_lambda = std::max(max_lambda, std::abs(l));
    p.C = 1.0 / max_lambda;
  }
  return p;
}

void validate_params(const AmplitudeVector& b, const PrepParams& params) {
  if (!(params.t > 0.0) || !std::isfinite(params.t)) {
    throw ValidationError("evolution time must be > 0");
  }
  if (!(params.C > 0.0) || !std::isfinite(params.C)) {
    throw ValidationError("rotation constant must be > 0");
  }
  if (params.max_attempts < 1) throw ValidationError("max_attempts must be >= 1");
  prep_layout(b, params.n_c).validate();

  const double half = clock_scale(params.n_c) / 2.0;
  const bool embedded = b.has_complex_entry();
  for (double l : scaled_eigenvalues(b, params.t, params.n_c)) {
    // Values above 2^{n_c-1} - 1 share a bin with -2^{n_c-1}; on the embedding
    // path the negative branch -|lambda| must fit as well.
    const bool high = l > half - 1.0 + kIntegerTolerance;
    const bool low = l < -half - kIntegerTolerance || (embedded && -l < -half - kIntegerTolerance);
    if (low || high) {
      throw AliasingError("scaled eigenvalue " + std::to_string(l) +
                              " falls outside the signed clock range",
                          default_t(b, params.n_c));
    }
    if (std::abs(params.C * l) > 1.0 + kDomainSlack) {
      throw RotationDomainError("|C * lambda| = " + std::to_string(std::abs(params.C * l)) +
                                " exceeds 1");
    }
  }
}

double success_probability_analytic(const AmplitudeVector& b, const PrepParams& params) {
  double sum = 0.0;
  for (double l : scaled_eigenvalues(b, params.t, params.n_c)) sum += l * l;
  return params.C * params.C * sum / static_cast<double>(b.size());
}

std::vector<Amplitude> prepared_target(const StateVector& state) {
  const auto& layout = state.registers();
  const std::size_t n = layout.target_dim();
  const std::size_t offset = layout.has_flag ? n : 0;
  std::vector<Amplitude> out(n);
  double w = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = state[layout.index(offset + j, 0, 1)];
    w += std::norm(out[j]);
  }
  if (!(w > 0.0)) throw ImpossibleOutcomeError("prepared slice carries no amplitude");
  for (auto& a : out) a /= std::sqrt(w);
  return out;
}

PrepResult prepare_state(const AmplitudeVector& b, const PrepParams& params) {
  validate_params(b, params);
  PrepCircuit circuit(b, params);
  PrepReport report;
  report.embedded = circuit.layout().has_flag;
  report.exact_representable = is_exactly_representable(b, params.t, params.n_c);
  report.rotation_policy = circuit.policy();
  report.success_prob_analytic = success_probability_analytic(b, params);

  const unsigned ancilla = circuit.layout().ancilla_qubit();
  std::optional<StateVector> state;
  if (params.mode == PostselectMode::exact) {
    state = circuit.run_to_rotation(report.trace, {});
    report.success_prob_circuit = state->weight(ancilla, 1);
    measure_postselect(*state, ancilla, 1);
    report.trace.record(GateKind::measurement, "ancilla");
  } else {
    Rng rng(params.seed);
    for (std::uint64_t attempt = 1;; ++attempt) {
      report.trace.clear();
      StateVector candidate = circuit.run_to_rotation(report.trace, {});
      report.success_prob_circuit = candidate.weight(ancilla, 1);
      const auto sample = measure_sample(candidate, ancilla, [&] { return rng.uniform(); });
      report.trace.record(GateKind::measurement, "ancilla");
      if (sample.outcome == 1) {
        report.attempts = attempt;
        state = std::move(candidate);
        break;
      }
      ++report.failures;
      if (attempt >= params.max_attempts) {
        throw AttemptsExhaustedError("post-selection failed " + std::to_string(report.failures) +
                                         " times",
                                     report.failures);
      }
    }
    report.success_prob_observed = 1.0 / static_cast<double>(report.attempts);
  }

  circuit.finish(*state, report.trace, {});
  report.max_norm_drift = circuit.max_drift();
  fill_final_report(b, *state, report);
  report.census = gate_census(report.trace);
  return {std::move(*state), std::move(report)};
}

std::vector<StepState> trace_steps(const AmplitudeVector& b, const PrepParams& params) {
  validate_params(b, params);
  PrepCircuit circuit(b, params);
  std::vector<StepState> steps;
  const Observer observe = [&](const char* label, const StateVector& s) {
    steps.push_back({label, s});
  };
  CircuitTrace trace;
  StateVector state = circuit.run_to_rotation(trace, observe);
  measure_postselect(state, circuit.layout().ancilla_qubit(), 1);
  circuit.finish(state, trace, observe);
  return steps;
}

std::vector<StepState> closed_form_steps(const AmplitudeVector& b, const PrepParams& params) {
  if (b.has_complex_entry()) {
    throw PreconditionError("closed-form states are written for real b");
  }
  if (!is_exactly_representable(b, params.t, params.n_c)) {
    throw PreconditionError("closed-form states need exactly representable eigenvalues");
  }
  const RegisterLayout layout = prep_layout(b, params.n_c);
  const std::size_t n = layout.target_dim();
  const std::size_t m = layout.clock_dim();
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double sqrt_m = std::sqrt(static_cast<double>(m));
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<std::int64_t> lambda(n);
  std::vector<std::size_t> clock(n);
  double lambda_norm_sq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double scaled = static_cast<double>(m) * b[j].real() * params.t / two_pi;
    lambda[j] = static_cast<std::int64_t>(std::llround(scaled));
    clock[j] = static_cast<std::size_t>(
        (lambda[j] % static_cast<std::int64_t>(m) + static_cast<std::int64_t>(m)) %
        static_cast<std::int64_t>(m));
    lambda_norm_sq += double(lambda[j]) * double(lambda[j]);
  }
  const double lambda_norm = std::sqrt(lambda_norm_sq);

  std::vector<StepState> steps;
  const auto blank = [&] {
    return std::vector<Amplitude>(std::size_t{1} << layout.total(), Amplitude{});
  };
  const auto push = [&](const char* label, std::vector<Amplitude> amps) {
    steps.push_back({label, StateVector::from_amplitudes(layout, std::move(amps))});
  };

  // psi0 = |0>_b |0>_c |0>_a
  auto a = blank();
  a[0] = 1.0;
  push("psi0", a);

  // psi1 = |h> |0>_c |0>_a
  a = blank();
  for (std::size_t j = 0; j < n; ++j) a[layout.index(j, 0, 0)] = 1.0 / sqrt_n;
  push("psi1", a);

  // psi2 = |h> (2^{-n_c/2} sum_k |k>) |0>_a
  a = blank();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < m; ++k) a[layout.index(j, k, 0)] = 1.0 / (sqrt_n * sqrt_m);
  push("psi2", a);

  // psi3 = sum_j |j>/sqrt(N) (sum_k e^{2 pi i phi_j k}|k>/sqrt(M)) |0>_a, phi_j = b_j t / 2 pi
  a = blank();
  for (std::size_t j = 0; j < n; ++j) {
    const double phi = b[j].real() * params.t / two_pi;
    for (std::size_t k = 0; k < m; ++k) {
      a[layout.index(j, k, 0)] = std::polar(1.0 / (sqrt_n * sqrt_m), two_pi * phi * double(k));
    }
  }
  push("psi3", a);

  // psi4 = sum_j |j>/sqrt(N) |lambda_j> |0>_a
  a = blank();
  for (std::size_t j = 0; j < n; ++j) a[layout.index(j, clock[j], 0)] = 1.0 / sqrt_n;
  push("psi4", a);

  // psi5: ancilla sqrt(1 - C^2 lambda^2)|0> + C lambda |1>
  a = blank();
  for (std::size_t j = 0; j < n; ++j) {
    const double v = params.C * double(lambda[j]);
    a[layout.index(j, clock[j], 0)] = std::sqrt(std::max(0.0, 1.0 - v * v)) / sqrt_n;
    a[layout.index(j, clock[j], 1)] = v / sqrt_n;
  }
  push("psi5", a);

  // psi6 = sum_j lambda_j |j>|lambda_j>|1>_a / sqrt(sum lambda^2)
  a = blank();
  for (std::size_t j = 0; j < n; ++j)
    a[layout.index(j, clock[j], 1)] = double(lambda[j]) / lambda_norm;
  push("psi6", a);

  // psi7 = sum_j lambda_j |j> (sum_y e^{2 pi i y lambda_j / M}|y>/sqrt(M)) |1>_a / norm
  a = blank();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t y = 0; y < m; ++y)
      a[layout.index(j, y, 1)] = std::polar(double(lambda[j]) / (lambda_norm * sqrt_m),
                                            two_pi * double(y) * double(lambda[j]) / double(m));
  push("psi7", a);

  // psi8: each |y> picks up e^{-i b_j t y} on top of psi7
  a = blank();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t y = 0; y < m; ++y)
      a[layout.index(j, y, 1)] =
          std::polar(double(lambda[j]) / (lambda_norm * sqrt_m),
                     -b[j].real() * params.t * double(y) +
                         two_pi * double(y) * double(lambda[j]) / double(m));
  push("psi8", a);

  // psi9 = |b> |0>_c |1>_a
  a = blank();
  for (std::size_t j = 0; j < n; ++j) a[layout.index(j, 0, 1)] = b[j];
  push("psi9", a);
  return steps;
}

SuccessTally sample_success_frequency(const AmplitudeVector& b, const PrepParams& params,
                                      std::uint64_t trials) {
  validate_params(b, params);
  PrepCircuit circuit(b, params);
  const unsigned ancilla = circuit.layout().ancilla_qubit();
  Rng rng(params.seed);
  SuccessTally tally;
  CircuitTrace scratch;
  for (std::uint64_t i = 0; i < trials; ++i) {
    scratch.clear();
    StateVector state = circuit.run_to_rotation(scratch, {});
    const auto sample = measure_sample(state, ancilla, [&] { return rng.uniform(); });
    tally.successes += sample.outcome;
    ++tally.trials;
  }
  return tally;
}

}  // namespace hhlprep
