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

#include "hhlprep/spectral.hpp"

#include <cmath>
#include <string>

namespace hhlprep {

namespace {

void check_power(std::uint64_t power, std::uint64_t max_power) {
  if (power == 0) throw ValidationError("propagator power must be >= 1");
  if (max_power != 0 && power > max_power) {
    throw ValidationError("propagator power " + std::to_string(power) +
                          " exceeds the ladder cap " + std::to_string(max_power));
  }
}

}  // namespace

RegisterUnitaryAction diagonal_phase_action(const DiagonalPropagator& prop, std::uint64_t power,
                                            bool inverse) {
  if (prop.source.has_complex_entry()) {
    throw MustEmbedError("diagonal propagator needs real b; use the Hermitian embedding");
  }
  check_power(power, prop.max_power);
  const double sign = inverse ? -1.0 : 1.0;
  const double scaled_t = sign * prop.t * static_cast<double>(power);
  std::vector<Amplitude> phases(prop.source.size());
  for (std::size_t j = 0; j < phases.size(); ++j) {
    phases[j] = std::polar(1.0, prop.source[j].real() * scaled_t);
  }
  const std::size_t dim = phases.size();
  return RegisterUnitaryAction(
      dim,
      [phases = std::move(phases)](std::span<Amplitude> slice) {
        for (std::size_t j = 0; j < slice.size(); ++j) slice[j] *= phases[j];
      },
      std::string(inverse ? "exp(-iBt)^" : "exp(iBt)^") + std::to_string(power));
}

EmbeddedPropagator build_embedding(const AmplitudeVector& b, double t) {
  EmbeddedPropagator prop;
  prop.t = t;
  prop.modulus.resize(b.size());
  prop.phase.resize(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    prop.modulus[j] = std::abs(b[j]);
    prop.phase[j] = prop.modulus[j] > 0.0 ? std::arg(b[j]) : 0.0;
  }
  return prop;
}

std::vector<Amplitude> embedding_matrix(const EmbeddedPropagator& prop) {
  const std::size_t n = prop.target_dim();
  const std::size_t d = 2 * n;
  std::vector<Amplitude> m(d * d);
  for (std::size_t j = 0; j < n; ++j) {
    const Amplitude bj = std::polar(prop.modulus[j], prop.phase[j]);
    m[(n + j) * d + j] = bj;             // B in the lower-left block
    m[j * d + (n + j)] = std::conj(bj);  // B^dagger in the upper-right block
  }
  return m;
}

RegisterUnitaryAction embedded_phase_action(const EmbeddedPropagator& prop, std::uint64_t power,
                                            bool inverse) {
  check_power(power, prop.max_power);
  const std::size_t n = prop.target_dim();
  const double sign = inverse ? -1.0 : 1.0;
  const double scaled_t = prop.t * static_cast<double>(power);
  // Per block: cos(|b|t) I + i sin(|b|t) [[0, e^{-i theta}], [e^{i theta}, 0]].
  struct Block {
    double c;
    Amplitude upper;  // coefficient of a1 in the new a0
    Amplitude lower;  // coefficient of a0 in the new a1
  };
  std::vector<Block> blocks(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double angle = prop.modulus[j] * scaled_t;
    const double s = sign * std::sin(angle);
    blocks[j].c = std::cos(angle);
    blocks[j].upper = Amplitude(0.0, s) * std::polar(1.0, -prop.phase[j]);
    blocks[j].lower = Amplitude(0.0, s) * std::polar(1.0, prop.phase[j]);
  }
  return RegisterUnitaryAction(
      2 * n,
      [blocks = std::move(blocks), n](std::span<Amplitude> slice) {
        for (std::size_t j = 0; j < n; ++j) {
          const Amplitude a0 = slice[j];
          const Amplitude a1 = slice[n + j];
          slice[j] = blocks[j].c * a0 + blocks[j].upper * a1;
          slice[n + j] = blocks[j].lower * a0 + blocks[j].c * a1;
        }
      },
      std::string(inverse ? "exp(-iB~t)^" : "exp(iB~t)^") + std::to_string(power));
}

}  // namespace hhlprep
