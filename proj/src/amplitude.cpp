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

#include "hhlprep/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hhlprep {

namespace {

constexpr double kUnitTolerance = 1e-12;

double squared_norm(const std::vector<Amplitude>& v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return s;
}

}  // namespace

AmplitudeVector::AmplitudeVector(std::vector<Amplitude> entries) : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  if (n < 2 || (n & (n - 1)) != 0) {
    throw ValidationError("amplitude vector length " + std::to_string(n) +
                          " is not a power of two >= 2");
  }
  while ((std::size_t{1} << n_b_) < n) ++n_b_;
}

AmplitudeVector AmplitudeVector::from_unit(std::vector<Amplitude> entries) {
  const double norm = std::sqrt(squared_norm(entries));
  if (std::abs(norm - 1.0) > kUnitTolerance) {
    throw ValidationError("amplitude vector has norm " + std::to_string(norm) + ", expected 1");
  }
  return AmplitudeVector(std::move(entries));
}

AmplitudeVector AmplitudeVector::normalized(std::vector<Amplitude> entries) {
  const double norm = std::sqrt(squared_norm(entries));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ValidationError("cannot normalize an all-zero or non-finite vector");
  }
  for (auto& a : entries) a /= norm;
  return AmplitudeVector(std::move(entries));
}

bool AmplitudeVector::has_complex_entry() const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [](const Amplitude& a) { return a.imag() != 0.0; });
}

double AmplitudeVector::max_modulus() const {
  double m = 0.0;
  for (const auto& a : entries_) m = std::max(m, std::abs(a));
  return m;
}

double fidelity(const AmplitudeVector& a, const AmplitudeVector& b) {
  return fidelity(a.entries(), b.entries());
}

}  // namespace hhlprep
