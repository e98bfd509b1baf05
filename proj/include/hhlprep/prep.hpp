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
#include <optional>
#include <string>
#include <vector>

#include "hhlprep/amplitude.hpp"
#include "hhlprep/cost.hpp"
#include "hhlprep/hhl.hpp"
#include "hhlprep/statevector.hpp"

namespace hhlprep {

enum class PostselectMode { exact, sampled };

struct PrepParams {
  double t = 0.0;
  double C = 0.0;
  unsigned n_c = 4;
  PostselectMode mode = PostselectMode::exact;
  std::uint64_t max_attempts = 1000;
  std::uint64_t seed = 0;
  QftMethod qft_method = QftMethod::decomposed;
};

/// Default evolution time and rotation constant for `b` on an n_c-qubit clock.
///
/// t puts the largest |scaled eigenvalue| at 2^{n_c-1} - 1, the top of the
/// signed clock range; C = 1 / max |scaled eigenvalue|. A caller-supplied t is
/// kept and only C derived from it; a caller-supplied C is kept as is.
PrepParams choose_parameters(const AmplitudeVector& b, unsigned n_c,
                             std::optional<double> t = std::nullopt,
                             std::optional<double> C = std::nullopt);

/// lambda_j = 2^{n_c} b_j t / 2 pi for real b; for complex b the embedding
/// eigenvalues are +-2^{n_c} |b_j| t / 2 pi and the non-negative branch is returned.
std::vector<double> scaled_eigenvalues(const AmplitudeVector& b, double t, unsigned n_c);

/// True when every scaled eigenvalue (and its negation on the embedding path)
/// is an integer in [-2^{n_c-1}, 2^{n_c-1}) within 1e-9.
bool is_exactly_representable(const AmplitudeVector& b, double t, unsigned n_c);

/// Throws ValidationError, AliasingError or RotationDomainError.
void validate_params(const AmplitudeVector& b, const PrepParams& params);

/// C^2 sum_j lambda_j^2 / 2^{n_b}.
double success_probability_analytic(const AmplitudeVector& b, const PrepParams& params);

/// The register layout the pipeline uses for `b`; a flag qubit is added for complex b.
RegisterLayout prep_layout(const AmplitudeVector& b, unsigned n_c);

struct PrepReport {
  double fidelity = 0.0;         // |<b|b^>| on the clock-zero (and flag-one) slice
  double joint_fidelity = 0.0;   // |<b, 0_c, 1_f, 1_a | Psi9>|
  double success_prob_analytic = 0.0;
  double success_prob_circuit = 0.0;  // ancilla |1> weight just before the measurement
  std::optional<double> success_prob_observed;  // successes / attempts, sampled mode
  std::uint64_t attempts = 1;
  std::uint64_t failures = 0;
  double clock_residual = 0.0;  // weight on clock != 0 in the final state
  double flag_weight = 1.0;     // weight on flag = 1 (1 when there is no flag)
  double max_norm_drift = 0.0;  // over every unitary step
  bool embedded = false;
  bool exact_representable = false;
  DomainPolicy rotation_policy = DomainPolicy::reject;
  CostReport census;
  CircuitTrace trace;
};

struct PrepResult {
  StateVector state;
  PrepReport report;
};

/// Runs the nine-step preparation and post-selects the ancilla on |1>.
///
/// In exact mode the ancilla is projected deterministically. In sampled mode
/// each attempt runs from |0...0> and measures the ancilla with the seeded
/// generator; a |0> outcome restarts the circuit, up to max_attempts.
PrepResult prepare_state(const AmplitudeVector& b, const PrepParams& params);

/// Normalized target amplitudes of the ancilla = 1, clock = 0 (and flag = 1) slice.
std::vector<Amplitude> prepared_target(const StateVector& state);

struct StepState {
  std::string label;  // "psi0" .. "psi9"
  StateVector state;
};

/// Every intermediate state of the circuit (exact post-selection).
std::vector<StepState> trace_steps(const AmplitudeVector& b, const PrepParams& params);

/// Psi0..Psi9 evaluated directly from their closed-form expressions, without
/// running any gate. Requires real b and exactly representable eigenvalues.
std::vector<StepState> closed_form_steps(const AmplitudeVector& b, const PrepParams& params);

struct SuccessTally {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
};

/// Runs `trials` independent single attempts (each from |0...0>) and counts
/// how many measure the ancilla in |1>.
SuccessTally sample_success_frequency(const AmplitudeVector& b, const PrepParams& params,
                                      std::uint64_t trials);

}  // namespace hhlprep
