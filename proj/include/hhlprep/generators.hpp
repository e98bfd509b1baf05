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
#include <string_view>

#include "hhlprep/amplitude.hpp"

namespace hhlprep {

/// A generated target vector, with the evolution time that makes it exactly
/// representable when the generator constructs one.
struct GeneratedInput {
  AmplitudeVector b;
  std::optional<double> t;
};

AmplitudeVector uniform_vector(unsigned n_b);
AmplitudeVector basis_vector(unsigned n_b, std::size_t index);
/// Gaussian entries, normalized.
AmplitudeVector random_real_vector(unsigned n_b, std::uint64_t seed);
AmplitudeVector random_complex_vector(unsigned n_b, std::uint64_t seed);

/// b = m / |m| for random integers m_j in [-(2^{n_c-1}-1), 2^{n_c-1}-1] and
/// t = 2 pi |m| / 2^{n_c}, so the scaled eigenvalues are exactly m_j. The
/// complex variant draws m_j >= 0 and attaches a random phase to each entry.
GeneratedInput exact_representable_vector(unsigned n_b, unsigned n_c, std::uint64_t seed,
                                          bool complex_phases = false);

/// Parses "gen:<kind>:key=value,..." with kinds uniform, basis (index),
/// random, random_complex, exact and exact_complex (n_c). Keys: n_b, seed, index, n_c.
GeneratedInput parse_generator(std::string_view spec);

}  // namespace hhlprep
