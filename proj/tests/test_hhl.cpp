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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hhlprep/cost.hpp"
#include "hhlprep/spectral.hpp"
#include "oracle.hpp"

using namespace hhlprep;

namespace {

constexpr double kPi = std::numbers::pi;

ActionFactory diagonal_factory(const AmplitudeVector& b, double t) {
  return [b, t](std::uint64_t power, bool inverse) {
    return diagonal_phase_action({b, t}, power, inverse);
  };
}

/// Dense e^{i diag(b) t s} on the system slice.
oracle::Matrix diagonal_unitary(const AmplitudeVector& b, double t, double s) {
  oracle::Matrix u = oracle::Matrix::Zero(b.size(), b.size());
  for (std::size_t j = 0; j < b.size(); ++j) u(j, j) = std::polar(1.0, b[j].real() * t * s);
  return u;
}

oracle::Matrix dense_qpe(const RegisterLayout& layout, const AmplitudeVector& b, double t) {
  std::vector<oracle::Matrix> rung;
  for (unsigned r = 0; r < layout.n_c; ++r) {
    rung.push_back(diagonal_unitary(b, t, double(std::uint64_t{1} << r)));
  }
  return oracle::qpe_full(layout, rung);
}

}  // namespace

TEST(ClockValue, SignedDecoding) {
  EXPECT_EQ(ClockValue(7, 3).as_signed(), -1);
  EXPECT_EQ(ClockValue(3, 3).as_signed(), 3);
  EXPECT_EQ(ClockValue(4, 3).as_signed(), -4);
  EXPECT_EQ(ClockValue::from_signed(-1, 3).raw(), 7u);
  for (unsigned n_c = 1; n_c <= 10; ++n_c) {
    const std::int64_t half = std::int64_t{1} << (n_c - 1);
    for (std::uint64_t raw = 0; raw < (std::uint64_t{1} << n_c); ++raw) {
      const ClockValue v(raw, n_c);
      ASSERT_GE(v.as_signed(), -half);
      ASSERT_LT(v.as_signed(), half);
      ASSERT_EQ(ClockValue::from_signed(v.as_signed(), n_c).raw(), raw);
    }
  }
  EXPECT_THROW(ClockValue(8, 3), IndexError);
  EXPECT_THROW(ClockValue::from_signed(4, 3), IndexError);
}

TEST(Qpe, ZeroPhaseLeavesClockAtZero) {
  const RegisterLayout layout{1, false, 3};
  const auto b = AmplitudeVector::from_unit({1.0, 0.0});
  StateVector s = init_zero_state(layout);
  apply_1q(s, Gate2x2::pauli_x(), 0);  // eigenvector |1> with b_1 = 0
  qpe(s, diagonal_factory(b, 1.3));
  EXPECT_NEAR(std::abs(s[layout.index(1, 0, 0)]), 1.0, 1e-12);
}

TEST(Qpe, ExactEigenvalueLandsOnClockBasisState) {
  const RegisterLayout layout{1, false, 3};
  // lambda = 8 b t / 2 pi with b_0 = +-1.
  const struct {
    double b0;
    double t;
    std::uint64_t raw;
  } cases[] = {{1.0, kPi / 2, 2}, {-1.0, kPi / 4, 7}};
  for (const auto& c : cases) {
    const auto b = AmplitudeVector::from_unit({c.b0, 0.0});
    StateVector s = init_zero_state(layout);
    qpe(s, diagonal_factory(b, c.t));
    EXPECT_NEAR(std::abs(s[layout.index(0, c.raw, 0)]), 1.0, 1e-12);

    StateVector via_dense = init_zero_state(layout);
    const oracle::Vector expected = dense_qpe(layout, b, c.t) * oracle::to_eigen(via_dense);
    EXPECT_NEAR(std::abs(expected(layout.index(0, c.raw, 0))), 1.0, 1e-12);
    EXPECT_LT(oracle::max_abs_diff(s, expected), 1e-12);
  }
}

TEST(Qpe, MatchesDenseUnitaryOnRandomInputs) {
  Rng rng(41);
  for (const RegisterLayout layout : {RegisterLayout{1, false, 2}, RegisterLayout{2, false, 3}}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Amplitude> be(layout.target_dim());
      for (auto& x : be) x = rng.normal();
      const auto b = AmplitudeVector::normalized(be);
      const double t = 0.2 + 3.0 * rng.uniform();
      // Random target amplitudes with the clock and ancilla in |0>.
      std::vector<Amplitude> amps(std::size_t{1} << layout.total());
      const auto target = oracle::random_amplitudes(layout.system_dim(), rng);
      std::copy(target.begin(), target.end(), amps.begin());
      StateVector s = StateVector::from_amplitudes(layout, amps);
      const oracle::Vector expected = dense_qpe(layout, b, t) * oracle::to_eigen(s);
      qpe(s, diagonal_factory(b, t));
      EXPECT_LT(oracle::max_abs_diff(s, expected), 1e-12);
    }
  }
}

TEST(Qpe, LadderPhasePatternAtTwoClockQubits) {
  // After H and the ladder: sum_k e^{i b_j t k}|k>/sqrt(M) on each eigenvector |j>.
  const RegisterLayout layout{1, false, 2};
  const auto b = AmplitudeVector::from_unit({0.6, -0.8});
  const double t = 0.9;
  for (std::size_t j = 0; j < 2; ++j) {
    StateVector s = init_zero_state(layout);
    if (j) apply_1q(s, Gate2x2::pauli_x(), 0);
    apply_clock_hadamards(s);
    apply_controlled_ladder(s, diagonal_factory(b, t), false);
    for (std::size_t k = 0; k < 4; ++k) {
      const Amplitude want = std::polar(0.5, b[j].real() * t * double(k));
      EXPECT_NEAR(std::abs(s[layout.index(j, k, 0)] - want), 0.0, 1e-12);
    }
  }
}

TEST(Qpe, RequiresZeroClock) {
  const RegisterLayout layout{1, false, 2};
  StateVector s = init_zero_state(layout);
  apply_1q(s, Gate2x2::hadamard(), layout.clock_qubit(1));
  const auto b = AmplitudeVector::from_unit({1.0, 0.0});
  EXPECT_THROW(qpe(s, diagonal_factory(b, 1.0)), PreconditionError);
}

TEST(Iqpe, IsInverseOfQpe) {
  Rng rng(43);
  for (const RegisterLayout layout :
       {RegisterLayout{1, false, 3}, RegisterLayout{2, false, 4}, RegisterLayout{2, true, 3}}) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Amplitude> be(layout.target_dim());
      for (auto& x : be) x = rng.normal();
      const auto b = AmplitudeVector::normalized(be);
      const double t = 4.0 * rng.uniform();
      ActionFactory factory;
      if (layout.has_flag) {
        const auto prop = build_embedding(b, t);
        factory = [prop](std::uint64_t p, bool inv) { return embedded_phase_action(prop, p, inv); };
      } else {
        factory = diagonal_factory(b, t);
      }
      std::vector<Amplitude> amps(std::size_t{1} << layout.total(), 0.0);
      const auto sys = oracle::random_amplitudes(layout.system_dim() * 1, rng);
      std::copy(sys.begin(), sys.end(), amps.begin());
      const StateVector original = StateVector::from_amplitudes(layout, amps);
      StateVector s = original;
      qpe(s, factory);
      iqpe(s, factory);
      ASSERT_LT(oracle::max_abs_diff(s, original), 1e-12);

      // And the reverse composition on a fully random state.
      const StateVector any = oracle::random_state(layout, rng);
      StateVector r = any;
      iqpe(r, factory);
      apply_clock_hadamards(r);
      apply_controlled_ladder(r, factory, false);
      qft_register(r, QftDirection::inverse);
      ASSERT_LT(oracle::max_abs_diff(r, any), 1e-12);
    }
  }
}

TEST(Iqpe, UncomputesExactClockValues) {
  // Rotated-and-projected form: sum_j c_j |j>|lambda_j>|1>.
  const RegisterLayout layout{2, false, 4};
  const auto b = AmplitudeVector::from_unit({0.6, -0.8, 0.0, 0.0});
  const double t = 0.625 * kPi;
  const std::int64_t lambda[] = {3, -4, 0, 0};
  std::vector<Amplitude> amps(std::size_t{1} << layout.total(), 0.0);
  const Amplitude coeff[] = {0.6, -0.8, 0.0, 0.0};
  for (std::size_t j = 0; j < 4; ++j) {
    amps[layout.index(j, ClockValue::from_signed(lambda[j], 4).raw(), 1)] = coeff[j];
  }
  StateVector s = StateVector::from_amplitudes(layout, amps);
  iqpe(s, diagonal_factory(b, t));
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_NEAR(std::abs(s[layout.index(j, 0, 1)] - coeff[j]), 0.0, 1e-12);
  }
  EXPECT_NEAR(s.weight(layout.clock_qubit(0), 1) + s.weight(layout.clock_qubit(3), 1), 0.0, 1e-12);
}

TEST(Iqpe, SingleEigenvectorPhasesCancel) {
  const RegisterLayout layout{1, false, 3};
  const auto b = AmplitudeVector::from_unit({1.0, 0.0});
  const double t = 3.0 * 2.0 * kPi / 8.0;  // lambda = 3
  for (unsigned y = 0; y < 8; ++y) {
    const Amplitude ladder = std::polar(1.0, -b[0].real() * t * double(y));
    const Amplitude qft = std::polar(1.0, 2.0 * kPi * double(y) * 3.0 / 8.0);
    EXPECT_NEAR(std::abs(ladder * qft - 1.0), 0.0, 1e-12);
  }
  std::vector<Amplitude> amps(32, 0.0);
  amps[layout.index(0, 3, 0)] = 1.0;
  StateVector s = StateVector::from_amplitudes(layout, amps);
  iqpe(s, diagonal_factory(b, t));
  EXPECT_NEAR(std::abs(s[0]), 1.0, 1e-12);
}

TEST(Qpe, GateCensus) {
  for (unsigned n_c = 1; n_c <= 6; ++n_c) {
    const RegisterLayout layout{2, false, n_c};
    const auto b = AmplitudeVector::from_unit({0.5, 0.5, 0.5, -0.5});
    StateVector s = init_zero_state(layout);
    CircuitTrace trace;
    qpe(s, diagonal_factory(b, 1.0), &trace);
    const CostReport census = gate_census(trace);
    EXPECT_EQ(census.hadamards, n_c);
    EXPECT_EQ(census.controlled_ladder_applications, n_c);
    EXPECT_EQ(census.oracle_queries, (std::uint64_t{1} << n_c) - 1);
    EXPECT_EQ(census.oracle_queries_unit, n_c);
    EXPECT_EQ(census.qft_gates, std::uint64_t(n_c) * (n_c + 1) / 2);
    std::size_t iqfts = 0;
    for (const auto& e : trace.events()) iqfts += e.kind == GateKind::iqft;
    EXPECT_EQ(iqfts, 1u);
  }
}

TEST(RotationAmplitude, Values) {
  EXPECT_DOUBLE_EQ(rotation_amplitude({RotationMode::multiply, 0.25}, 3), 0.75);
  EXPECT_DOUBLE_EQ(rotation_amplitude({RotationMode::multiply, 0.25}, -4), -1.0);
  EXPECT_DOUBLE_EQ(rotation_amplitude({RotationMode::invert, 1.0}, 2), 0.5);
  EXPECT_DOUBLE_EQ(rotation_amplitude({RotationMode::invert, 1.0}, 0), 0.0);
}

TEST(ControlledRotation, Examples) {
  const RegisterLayout layout{1, false, 3};
  const auto with_clock = [&](std::int64_t lambda) {
    std::vector<Amplitude> amps(32, 0.0);
    amps[layout.index(0, ClockValue::from_signed(lambda, 3).raw(), 0)] = 1.0;
    return StateVector::from_amplitudes(layout, amps);
  };
  const auto ancilla_one = [&](const StateVector& s) { return s.weight(layout.ancilla_qubit(), 1); };

  StateVector zero = with_clock(0);
  controlled_rotation(zero, {RotationMode::multiply, 0.3});
  EXPECT_NEAR(ancilla_one(zero), 0.0, 1e-15);

  StateVector top = with_clock(3);
  controlled_rotation(top, {RotationMode::multiply, 1.0 / 3.0});
  EXPECT_NEAR(ancilla_one(top), 1.0, 1e-15);

  StateVector neg = with_clock(-2);
  controlled_rotation(neg, {RotationMode::multiply, 0.25});
  const std::size_t raw = ClockValue::from_signed(-2, 3).raw();
  EXPECT_NEAR(std::abs(neg[layout.index(0, raw, 1)] - Amplitude(-0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(neg[layout.index(0, raw, 0)] - std::sqrt(0.75)), 0.0, 1e-15);

  StateVector inv = with_clock(2);
  controlled_rotation(inv, {RotationMode::invert, 2.0});
  EXPECT_NEAR(ancilla_one(inv), 1.0, 1e-15);

  StateVector inv_zero = with_clock(0);
  controlled_rotation(inv_zero, {RotationMode::invert, 1.0});
  EXPECT_NEAR(ancilla_one(inv_zero), 0.0, 1e-15);
}

TEST(ControlledRotation, Errors) {
  const RegisterLayout layout{1, false, 3};
  std::vector<Amplitude> amps(32, 0.0);
  amps[layout.index(0, 3, 0)] = 1.0;
  StateVector s = StateVector::from_amplitudes(layout, amps);
  EXPECT_THROW(controlled_rotation(s, {RotationMode::multiply, 0.5}), RotationDomainError);
  EXPECT_THROW(controlled_rotation(s, {RotationMode::invert, 4.0}), RotationDomainError);
  EXPECT_NO_THROW(controlled_rotation(s, {RotationMode::multiply, 0.5, DomainPolicy::saturate}));
  EXPECT_NEAR(s.weight(layout.ancilla_qubit(), 1), 1.0, 1e-15);

  StateVector excited = init_zero_state(layout);
  apply_1q(excited, Gate2x2::pauli_x(), layout.ancilla_qubit());
  EXPECT_THROW(controlled_rotation(excited, {RotationMode::multiply, 0.1}), PreconditionError);

  // Out-of-domain values without amplitude are fine.
  StateVector quiet = init_zero_state(layout);
  EXPECT_NO_THROW(controlled_rotation(quiet, {RotationMode::multiply, 0.9}));
}

TEST(ControlledRotation, PreservesClockAndTargetPopulations) {
  Rng rng(47);
  const RegisterLayout layout{2, false, 4};
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Amplitude> amps(std::size_t{1} << layout.total(), 0.0);
    const auto low = oracle::random_amplitudes(std::size_t{1} << (layout.total() - 1), rng);
    std::copy(low.begin(), low.end(), amps.begin());
    StateVector s = StateVector::from_amplitudes(layout, amps);
    const auto before = clock_populations(s);
    std::vector<double> target_before(4, 0.0);
    for (std::size_t i = 0; i < s.dim(); ++i) target_before[i & 3] += std::norm(s[i]);

    const RotationSpec spec{trial % 2 ? RotationMode::invert : RotationMode::multiply,
                            trial % 2 ? 1.0 : 1.0 / 8.0};
    controlled_rotation(s, spec);
    ASSERT_NEAR(s.norm(), 1.0, 1e-12);
    const auto after = clock_populations(s);
    for (std::size_t k = 0; k < before.size(); ++k) EXPECT_NEAR(before[k], after[k], 1e-12);
    std::vector<double> target_after(4, 0.0);
    for (std::size_t i = 0; i < s.dim(); ++i) target_after[i & 3] += std::norm(s[i]);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(target_before[j], target_after[j], 1e-12);

    // Per clock value the ancilla |1> weight matches v^2.
    for (std::size_t k = 0; k < 16; ++k) {
      if (before[k] < 1e-14) continue;
      double one = 0.0;
      for (std::size_t j = 0; j < 4; ++j) one += std::norm(s[layout.index(j, k, 1)]);
      const double v = rotation_amplitude(spec, ClockValue(k, 4).as_signed());
      EXPECT_NEAR(one / before[k], v * v, 1e-10);
    }
  }
}
