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

#include "hhlprep/qlsp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hhlprep/hhl.hpp"
#include "hhlprep/random.hpp"

namespace hhlprep {

namespace {

using Matrix = Eigen::Matrix<Amplitude, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Amplitude, Eigen::Dynamic, 1>;

constexpr double kHermitianTolerance = 1e-12;
constexpr double kIntegerTolerance = 1e-9;
constexpr double kOccupiedWeight = 1e-24;

Matrix to_eigen(const std::vector<Amplitude>& row_major, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = row_major[r * n + c];
  return m;
}

double clock_scale(unsigned n_c) { return static_cast<double>(std::uint64_t{1} << n_c); }

}  // namespace

HermitianSystem::HermitianSystem(std::vector<Amplitude> matrix, AmplitudeVector b, bool diagonal)
    : matrix_(std::move(matrix)), b_(std::move(b)), diagonal_(diagonal) {
  const std::size_t n = b_.size();
  if (matrix_.size() != n * n) {
    throw ShapeError("matrix has " + std::to_string(matrix_.size()) + " entries, b needs " +
                     std::to_string(n) + "x" + std::to_string(n));
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c <= r; ++c) {
      if (std::abs(matrix_[r * n + c] - std::conj(matrix_[c * n + r])) > kHermitianTolerance) {
        throw ValidationError("matrix is not Hermitian at (" + std::to_string(r) + ", " +
                              std::to_string(c) + ")");
      }
    }
  }
  eigenvalues_.resize(n);
  eigenvectors_.assign(n * n, Amplitude{});
  if (diagonal_) {
    for (std::size_t j = 0; j < n; ++j) {
      eigenvalues_[j] = matrix_[j * n + j].real();
      eigenvectors_[j * n + j] = 1.0;
    }
    return;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(to_eigen(matrix_, n));
  if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
  for (std::size_t i = 0; i < n; ++i) {
    eigenvalues_[i] = solver.eigenvalues()(i);
    for (std::size_t r = 0; r < n; ++r) eigenvectors_[i * n + r] = solver.eigenvectors()(r, i);
  }
}

HermitianSystem HermitianSystem::dense(std::vector<Amplitude> matrix, AmplitudeVector b) {
  return HermitianSystem(std::move(matrix), std::move(b), false);
}

HermitianSystem HermitianSystem::diagonal(std::vector<double> diagonal, AmplitudeVector b) {
  const std::size_t n = diagonal.size();
  if (n != b.size()) throw ShapeError("diagonal length does not match b");
  std::vector<Amplitude> m(n * n);
  for (std::size_t j = 0; j < n; ++j) m[j * n + j] = diagonal[j];
  return HermitianSystem(std::move(m), std::move(b), true);
}

double HermitianSystem::condition_number() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double l : eigenvalues_) {
    lo = std::min(lo, std::abs(l));
    hi = std::max(hi, std::abs(l));
  }
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

HermitianSystem HermitianSystem::scaled(double factor) const {
  std::vector<Amplitude> m = matrix_;
  for (auto& a : m) a *= factor;
  return HermitianSystem(std::move(m), b_, diagonal_);
}

HermitianSystem HermitianSystem::with_rhs(AmplitudeVector b) const {
  return HermitianSystem(matrix_, std::move(b), diagonal_);
}

HermitianSystem random_hermitian(unsigned n_b, unsigned kappa, std::uint64_t seed,
                                 AmplitudeVector b) {
  const std::size_t n = std::size_t{1} << n_b;
  if (b.size() != n) throw ShapeError("b does not match the requested dimension");
  if (kappa < 1) throw ValidationError("kappa must be >= 1");
  Rng rng(seed);
  Matrix g(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) g(r, c) = Amplitude(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix the phase ambiguity of QR so Q is distributed uniformly.
  const Matrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t c = 0; c < n; ++c) {
    const Amplitude d = rmat(c, c);
    if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
  }
  Eigen::VectorXd lambda(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = i == 0 ? 1.0 : (i == 1 ? double(kappa) : double(rng.uniform_int(1, kappa)));
    lambda(i) = rng.uniform() < 0.5 ? -mag : mag;
  }
  Matrix a = q * lambda.cast<Amplitude>().asDiagonal() * q.adjoint();
  a = (a + a.adjoint()).eval() * 0.5;
  std::vector<Amplitude> row_major(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) row_major[r * n + c] = a(r, c);
  return HermitianSystem::dense(std::move(row_major), std::move(b));
}

double default_solve_time(std::span<const double> eigenvalues, unsigned n_c) {
  double max_abs = 0.0;
  for (double l : eigenvalues) max_abs = std::max(max_abs, std::abs(l));
  if (!(max_abs > 0.0)) throw SingularSystemError("all eigenvalues are zero");
  const double m = clock_scale(n_c);
  const double room = m / 2.0 - 1.0;
  if (room < 1.0) throw ValidationError("solver needs n_c >= 2");
  double s = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(room / max_abs))));
  while (s * max_abs > room) s /= 2.0;
  while (2.0 * s * max_abs <= room) s *= 2.0;
  return 2.0 * std::numbers::pi * s / m;
}

AmplitudeVector classical_solution(const HermitianSystem& system) {
  const std::size_t n = system.dim();
  const Matrix a = to_eigen(system.matrix(), n);
  Vector b(n);
  for (std::size_t j = 0; j < n; ++j) b(j) = system.b()[j];
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) throw SingularSystemError("A is singular");
  const Vector x = lu.solve(b);
  return AmplitudeVector::normalized(std::vector<Amplitude>(x.data(), x.data() + n));
}

namespace {

ActionFactory make_solver_factory(const HermitianSystem& system, double t, bool dense) {
  const std::size_t n = system.dim();
  std::vector<double> eig(system.eigenvalues().begin(), system.eigenvalues().end());
  if (!dense) {
    return [eig, t, n](std::uint64_t power, bool inverse) {
      const double scaled = (inverse ? -t : t) * static_cast<double>(power);
      std::vector<Amplitude> phases(n);
      for (std::size_t j = 0; j < n; ++j) phases[j] = std::polar(1.0, eig[j] * scaled);
      return RegisterUnitaryAction(
          n,
          [phases = std::move(phases)](std::span<Amplitude> slice) {
            for (std::size_t j = 0; j < slice.size(); ++j) slice[j] *= phases[j];
          },
          "exp(iAt) diagonal");
    };
  }
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < n; ++r) v(r, i) = system.eigenvectors()[i * n + r];
  return [v, eig, t, n](std::uint64_t power, bool inverse) {
    const double scaled = (inverse ? -t : t) * static_cast<double>(power);
    Vector phases(n);
    for (std::size_t j = 0; j < n; ++j) phases(j) = std::polar(1.0, eig[j] * scaled);
    const Matrix u = v * phases.asDiagonal() * v.adjoint();
    return RegisterUnitaryAction(
        n,
        [u](std::span<Amplitude> slice) {
          Eigen::Map<Vector> x(slice.data(), static_cast<Eigen::Index>(slice.size()));
          x = (u * x).eval();
        },
        "exp(iAt) dense");
  };
}

}  // namespace

SolveResult solve_qlsp(const HermitianSystem& system, const SolveOptions& options) {
  const std::size_t n = system.dim();
  const unsigned n_b = system.b().n_b();
  const unsigned n_c = options.n_c;
  if (n_c < 2) throw ValidationError("solver needs n_c >= 2");
  const auto eig = system.eigenvalues();

  double max_abs = 0.0;
  double min_abs = std::numeric_limits<double>::infinity();
  for (double l : eig) {
    max_abs = std::max(max_abs, std::abs(l));
    min_abs = std::min(min_abs, std::abs(l));
  }
  if (!(max_abs > 0.0) || min_abs <= 1e-12 * max_abs) throw SingularSystemError("A is singular");

  SolveReport report;
  report.kappa = system.condition_number();
  report.t = options.t.value_or(default_solve_time(eig, n_c));
  if (!(report.t > 0.0)) throw ValidationError("evolution time must be > 0");

  const double m = clock_scale(n_c);
  const double half = m / 2.0;
  std::vector<double> lambda(n);
  for (std::size_t i = 0; i < n; ++i) {
    lambda[i] = m * eig[i] * report.t / (2.0 * std::numbers::pi);
    if (lambda[i] > half - 1.0 + kIntegerTolerance || lambda[i] < -half - kIntegerTolerance) {
      const double suggested = default_solve_time(eig, n_c);
      throw AliasingError("scaled eigenvalue " + std::to_string(lambda[i]) +
                              " overflows the signed clock range; try t = " +
                              std::to_string(suggested),
                          suggested);
    }
  }

  // Input state.
  std::vector<Amplitude> input(system.b().entries().begin(), system.b().entries().end());
  if (options.input_mode == InputMode::prepared) {
    const unsigned prep_n_c = options.prep_n_c == 0 ? n_c : options.prep_n_c;
    PrepParams params = choose_parameters(system.b(), prep_n_c, options.prep_t);
    params.qft_method = options.qft_method;
    PrepResult prep = prepare_state(system.b(), params);
    input = prepared_target(prep.state);
    report.input_fidelity = fidelity(system.b().entries(), input);
    report.prep_report = std::move(prep.report);
  }

  // Eigen-coefficients of the actual input.
  std::vector<double> beta_sq(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    Amplitude c{};
    for (std::size_t r = 0; r < n; ++r) c += std::conj(system.eigenvectors()[i * n + r]) * input[r];
    beta_sq[i] = std::norm(c);
  }

  double min_occupied = std::numeric_limits<double>::infinity();
  report.exact_representable = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (beta_sq[i] <= kOccupiedWeight) continue;
    min_occupied = std::min(min_occupied, std::abs(lambda[i]));
    if (std::abs(lambda[i] - std::round(lambda[i])) > kIntegerTolerance) {
      report.exact_representable = false;
    }
  }
  if (min_occupied < 0.5) {
    throw ValidationError("an occupied eigenvalue resolves to clock value 0; increase n_c or t");
  }
  report.C = options.C.value_or(min_occupied);
  if (!(report.C > 0.0)) throw ValidationError("rotation constant must be > 0");
  for (std::size_t i = 0; i < n; ++i) {
    if (beta_sq[i] > kOccupiedWeight) {
      report.success_prob_analytic += beta_sq[i] * std::pow(report.C / lambda[i], 2);
    }
  }

  const RegisterLayout layout{n_b, false, n_c};
  StateVector state = init_zero_state(layout);
  for (std::size_t j = 0; j < n; ++j) state[layout.index(j, 0, 0)] = input[j];

  const bool dense = options.force_dense || !system.is_diagonal();
  const ActionFactory factory = make_solver_factory(system, report.t, dense);
  const RotationSpec rotation{RotationMode::invert, report.C,
                              report.exact_representable ? DomainPolicy::reject
                                                         : DomainPolicy::saturate};
  CircuitTrace trace;
  const auto track = [&] {
    report.max_norm_drift = std::max(report.max_norm_drift, std::abs(state.norm() - 1.0));
  };

  qpe(state, factory, &trace, options.qft_method);
  track();
  controlled_rotation(state, rotation, &trace);
  track();
  report.success_prob = state.weight(layout.ancilla_qubit(), 1);
  measure_postselect(state, layout.ancilla_qubit(), 1);
  trace.record(GateKind::measurement, "ancilla");
  iqpe(state, factory, &trace, options.qft_method);
  track();

  report.clock_residual = std::max(0.0, 1.0 - clock_populations(state)[0]);
  report.census = gate_census(trace);

  std::vector<Amplitude> solution = prepared_target(state);
  report.fidelity = fidelity(classical_solution(system).entries(), solution);
  return {std::move(state), std::move(solution), std::move(report)};
}

}  // namespace hhlprep
