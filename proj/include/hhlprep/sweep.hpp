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
#include <iosfwd>
#include <string>
#include <vector>

#include "hhlprep/prep.hpp"

namespace hhlprep {

enum class SweepVariable { n_b, n_c, seed };

/// One experiment sweep.
///
/// `input` names the vector family: random, random_complex, uniform, exact,
/// exact_complex. Repetition r draws its vector from seed mix_seed(seed, r), so
/// a repetition sees the same vector at every point of an n_c sweep. When the
/// sweep variable is the seed, the point value replaces the master seed.
struct SweepSpec {
  SweepVariable variable = SweepVariable::n_c;
  std::vector<std::uint64_t> values;
  unsigned n_b = 3;
  unsigned n_c = 4;
  std::string input = "random";
  PostselectMode mode = PostselectMode::exact;
  std::uint64_t seed = 1;
  unsigned repetitions = 1;
  std::string output;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

struct SweepRow {
  std::size_t point = 0;
  std::uint64_t value = 0;
  unsigned repetition = 0;
  std::uint64_t input_seed = 0;
  std::uint64_t prep_seed = 0;
  unsigned n_b = 0;
  unsigned n_c = 0;
  PrepParams params;
  PrepReport report;
  std::uint64_t baseline_rotations = 0;
};

/// Rows ordered by (point, repetition) regardless of the thread count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

inline constexpr int kSweepCsvSchemaVersion = 1;

void write_sweep_csv(const std::vector<SweepRow>& rows, const SweepSpec& spec, std::ostream& out);

/// Runs the sweep and writes the CSV to spec.output; throws IoError if the
/// path cannot be opened (checked before any point runs).
std::vector<SweepRow> run_sweep_to_file(const SweepSpec& spec);

}  // namespace hhlprep
