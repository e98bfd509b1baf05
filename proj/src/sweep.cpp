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

#include "hhlprep/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <thread>

#include "hhlprep/generators.hpp"
#include "hhlprep/random.hpp"

namespace hhlprep {

namespace {

const char* variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::n_b: return "n_b";
    case SweepVariable::n_c: return "n_c";
    case SweepVariable::seed: return "seed";
  }
  return "?";
}

GeneratedInput make_input(const std::string& kind, unsigned n_b, unsigned n_c,
                          std::uint64_t seed) {
  if (kind == "random") return {random_real_vector(n_b, seed), std::nullopt};
  if (kind == "random_complex") return {random_complex_vector(n_b, seed), std::nullopt};
  if (kind == "uniform") return {uniform_vector(n_b), std::nullopt};
  if (kind == "exact") return exact_representable_vector(n_b, n_c, seed);
  if (kind == "exact_complex") return exact_representable_vector(n_b, n_c, seed, true);
  throw ValidationError("unknown sweep input family '" + kind + "'");
}

SweepRow run_point(const SweepSpec& spec, std::size_t point, unsigned rep) {
  SweepRow row;
  row.point = point;
  row.value = spec.values[point];
  row.repetition = rep;
  row.n_b = spec.variable == SweepVariable::n_b ? static_cast<unsigned>(row.value) : spec.n_b;
  row.n_c = spec.variable == SweepVariable::n_c ? static_cast<unsigned>(row.value) : spec.n_c;
  const std::uint64_t master = spec.variable == SweepVariable::seed ? row.value : spec.seed;
  row.input_seed = mix_seed(master, rep);
  row.prep_seed = mix_seed(row.input_seed, point);

  const GeneratedInput in = make_input(spec.input, row.n_b, row.n_c, row.input_seed);
  row.params = choose_parameters(in.b, row.n_c, in.t);
  row.params.mode = spec.mode;
  row.params.seed = row.prep_seed;
  PrepResult result = prepare_state(in.b, row.params);
  row.report = std::move(result.report);
  row.report.trace.clear();
  row.baseline_rotations = baseline_encode(in.b).census.tree_rotations;
  return row;
}

}  // namespace

void SweepSpec::validate() const {
  if (values.empty()) throw ValidationError("sweep range is empty");
  if (repetitions < 1) throw ValidationError("sweep needs at least one repetition");
  static const char* const kFamilies[] = {"random", "random_complex", "uniform", "exact",
                                          "exact_complex"};
  if (std::find(std::begin(kFamilies), std::end(kFamilies), input) == std::end(kFamilies)) {
    throw ValidationError("unknown sweep input family '" + input + "'");
  }
  for (auto v : values) {
    if (variable != SweepVariable::seed && (v < 1 || v > kDefaultQubitCap)) {
      throw ValidationError("sweep value " + std::to_string(v) + " is not a register width");
    }
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::size_t jobs = spec.values.size() * spec.repetitions;
  std::vector<SweepRow> rows(jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      try {
        rows[job] = run_point(spec, job / spec.repetitions,
                              static_cast<unsigned>(job % spec.repetitions));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned threads = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const SweepSpec& spec, std::ostream& out) {
  out << "schema_version,variable,value,repetition,input_seed,prep_seed,n_b,n_c,t,C,"
         "exact_representable,fidelity,infidelity,joint_fidelity,clock_residual,"
         "success_prob_analytic,success_prob_circuit,attempts,hadamards,ladder_applications,"
         "oracle_queries,oracle_queries_unit,qft_gates,rotation_ops_charged,total_charged,"
         "total_charged_unit,baseline_rotations\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    const auto& c = r.report.census;
    out << kSweepCsvSchemaVersion << ',' << variable_name(spec.variable) << ',' << r.value << ','
        << r.repetition << ',' << r.input_seed << ',' << r.prep_seed << ',' << r.n_b << ','
        << r.n_c << ',' << r.params.t << ',' << r.params.C << ','
        << (r.report.exact_representable ? 1 : 0) << ',' << r.report.fidelity << ','
        << 1.0 - r.report.fidelity << ',' << r.report.joint_fidelity << ','
        << r.report.clock_residual << ',' << r.report.success_prob_analytic << ','
        << r.report.success_prob_circuit << ',' << r.report.attempts << ',' << c.hadamards << ','
        << c.controlled_ladder_applications << ',' << c.oracle_queries << ','
        << c.oracle_queries_unit << ',' << c.qft_gates << ',' << c.rotation_ops_charged << ','
        << c.total_charged(QueryAccounting::power) << ','
        << c.total_charged(QueryAccounting::unit) << ',' << r.baseline_rotations << '\n';
  }
}

std::vector<SweepRow> run_sweep_to_file(const SweepSpec& spec) {
  std::ofstream out(spec.output);
  if (!out) throw IoError("cannot open sweep output '" + spec.output + "'");
  auto rows = run_sweep(spec);
  write_sweep_csv(rows, spec, out);
  if (!out) throw IoError("failed writing sweep output '" + spec.output + "'");
  return rows;
}

}  // namespace hhlprep
