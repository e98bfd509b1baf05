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
#include <span>
#include <vector>

#include "hhlprep/statevector.hpp"

namespace hhlprep {

/// Classical target vector b: 2^n_b complex entries of unit 2-norm.
class AmplitudeVector {
 public:
  /// Takes entries that are already normalized (within 1e-12).
  static AmplitudeVector from_unit(std::vector<Amplitude> entries);
  /// Normalizes arbitrary nonzero entries.
  static AmplitudeVector normalized(std::vector<Amplitude> entries);

  std::span<const Amplitude> entries() const { return entries_; }
  const Amplitude& operator[](std::size_t j) const { return entries_[j]; }
  std::size_t size() const { return entries_.size(); }
  unsigned n_b() const { return n_b_; }

  /// True when any entry has a nonzero imaginary part.
  bool has_complex_entry() const;
  double max_modulus() const;

 private:
  explicit AmplitudeVector(std::vector<Amplitude> entries);

  std::vector<Amplitude> entries_;
  unsigned n_b_ = 0;
};

double fidelity(const AmplitudeVector& a, const AmplitudeVector& b);

}  // namespace hhlprep
