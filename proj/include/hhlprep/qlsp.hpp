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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hhlprep/amplitude.hpp"
#include "hhlprep/cost.hpp"
#include "hhlprep/prep.hpp"
#include "hhlprep/statevector.hpp"

namespace hhlprep {

/// Hermitian A (dense or diagonal) together with the right-hand side b.
class HermitianSystem {
 public:
  /// Row-major N x N matrix; throws ValidationError unless A = A^dagger within 1e-12.
  static HermitianSystem dense(std::vector<Amplitude> matrix, AmplitudeVector b);
  static HermitianSystem diagonal(std::vector<double> diagonal, AmplitudeVector b);

  std::size_t dim() const { return b_.size(); }
  bool is_diagonal() const { return diagonal_; }
  const std::vector<Amplitude>& matrix() const { return matrix_; }
  const AmplitudeVector& b() const { return b_; }

  /// Eigenvalues; for a diagonal system they follow the basis order.
  std::span<const double> eigenvalues() const { return eigenvalues_; }
  /// Column-major eigenvector matrix, column i pairs with eigenvalues()[i].
  std::span<const Amplitude> eigenvectors() const { return eigenvectors_; }
  /// |lambda|_max / |lambda|_min; infinite for singular A.
  double condition_number() const;

  HermitianSystem scaled(double factor) const;
  HermitianSystem with_rhs(AmplitudeVector b) const;

 private:
  HermitianSystem(std::vector<Amplitude> matrix, AmplitudeVector b, bool diagonal);

  std::vector<Amplitude> matrix_;
  AmplitudeVector b_;
  bool diagonal_;
  std::vector<double> eigenvalues_;
  std::vector<Amplitude> eigenvectors_;
};

/// A = Q diag(lambda) Q^dagger with a Haar-like random unitary Q and integer
/// eigenvalues of random sign drawn from {1, ..., kappa}; both 1 and kappa occur.
HermitianSystem random_hermitian(unsigned n_b, unsigned kappa, std::uint64_t seed,
                                 AmplitudeVector b);

enum class InputMode {
  injected,  // |b> written straight into the target register
  prepared,  // |b> produced by prepare_state first
};

struct SolveOptions {
  unsigned n_c = 5;
  InputMode input_mode = InputMode::injected;
  std::optional<double> t;
  std::optional<double> C;
  /// Clock width of the preparation stage; 0 uses n_c.
  unsigned prep_n_c = 0;
  /// Evolution time of the preparation stage; defaults as in choose_parameters.
  std::optional<double> prep_t;
  /// Use the dense eigenbasis propagator even for a diagonal A.
  bool force_dense = false;
  QftMethod qft_method = QftMethod::decomposed;
};

struct SolveReport {
  double fidelity = 0.0;  // |<x|x^>| against the normalized classical solution
  double success_prob = 0.0;
  double success_prob_analytic = 0.0;
  double input_fidelity = 1.0;
  double t = 0.0;
  double C = 0.0;
  double kappa = 0.0;
  double clock_residual = 0.0;
  double max_norm_drift = 0.0;
  bool exact_representable = false;
  std::optional<PrepReport> prep_report;
  CostReport census;
};

struct SolveResult {
  StateVector state;
  std::vector<Amplitude> solution;  // normalized clock-zero slice of the final state
  SolveReport report;
};

/// Default solver time: t = 2 pi s / 2^{n_c} where s is the largest power of
/// two with s |lambda|_max <= 2^{n_c-1} - 1, so integer or dyadic spectra stay exact.
double default_solve_time(std::span<const double> eigenvalues, unsigned n_c);

/// HHL with the invert-mode rotation: QPE, C / lambda rotation, ancilla
/// post-selection, inverse QPE.
SolveResult solve_qlsp(const HermitianSystem& system, const SolveOptions& options);

/// Normalized A^{-1} b by direct dense solve.
AmplitudeVector classical_solution(const HermitianSystem& system);

}  // namespace hhlprep
