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
#include <vector>

#include "hhlprep/amplitude.hpp"
#include "hhlprep/statevector.hpp"

namespace hhlprep {

/// U = e^{iBt} for B = diag(b). Only unitary when every b_j is real.
struct DiagonalPropagator {
  AmplitudeVector source;
  double t = 0.0;
  /// Largest power a ladder may request; 0 disables the check.
  std::uint64_t max_power = 0;
};

/// Action multiplying target amplitude j by e^{+-i b_j t power}.
/// Throws MustEmbedError when b has complex entries.
RegisterUnitaryAction diagonal_phase_action(const DiagonalPropagator& prop, std::uint64_t power,
                                            bool inverse = false);

/// e^{i B~ t} for the Hermitian embedding B~ = [[0, B^dagger], [B, 0]].
///
/// The embedding acts on (flag x target). For each target index j it couples
/// |0>_f|j> and |1>_f|j> through the 2x2 block |b_j| [[0, e^{-i theta_j}], [e^{i theta_j}, 0]],
/// whose eigenphases are +-|b_j| t.
struct EmbeddedPropagator {
  std::vector<double> modulus;
  std::vector<double> phase;
  double t = 0.0;
  std::uint64_t max_power = 0;

  std::size_t target_dim() const { return modulus.size(); }
};

/// Polar decomposition of b into the embedding metadata. Works for real b as well.
EmbeddedPropagator build_embedding(const AmplitudeVector& b, double t);

/// Dense row-major 2N x 2N matrix B~ in the flag-major packing (index = j + N f).
std::vector<Amplitude> embedding_matrix(const EmbeddedPropagator& prop);

/// Closed-form block exponential, composed `power` times.
RegisterUnitaryAction embedded_phase_action(const EmbeddedPropagator& prop, std::uint64_t power,
                                            bool inverse = false);

}  // namespace hhlprep
