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

// Command-line front end: prepare, solve, trace, sweep, baseline, census.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hhlprep/cost.hpp"
#include "hhlprep/io.hpp"
#include "hhlprep/prep.hpp"
#include "hhlprep/qlsp.hpp"
#include "hhlprep/sweep.hpp"

namespace {

using nlohmann::json;

void emit(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw hhlprep::IoError("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hhlprep::IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw hhlprep::FormatError(path + ": " + e.what());
  }
}

hhlprep::QftMethod qft_method(const std::string& name) {
  return name == "dense" ? hhlprep::QftMethod::dense : hhlprep::QftMethod::decomposed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"State preparation by modified HHL, and the HHL solver it feeds"};
  app.require_subcommand(1);

  // prepare
  auto* prepare = app.add_subcommand("prepare", "Prepare |b> and report fidelity and cost");
  std::string prep_input, prep_report_path, prep_mode = "exact", prep_qft = "decomposed";
  unsigned prep_nc = 4;
  std::optional<double> prep_t, prep_C;
  std::uint64_t prep_seed = 0, prep_max_attempts = 1000;
  prepare->add_option("--input", prep_input, "Vector file (.csv/.json) or gen:<kind>:k=v,...")
      ->required();
  prepare->add_option("--nc", prep_nc, "Clock qubits")->check(CLI::Range(2u, 24u));
  prepare->add_option("--t", prep_t, "Evolution time (default: fit the clock range)");
  prepare->add_option("--C", prep_C, "Rotation constant (default: 1 / max |lambda|)");
  prepare->add_option("--mode", prep_mode, "Post-selection mode")
      ->check(CLI::IsMember({"exact", "sampled"}));
  prepare->add_option("--seed", prep_seed, "Seed for sampled post-selection");
  prepare->add_option("--max-attempts", prep_max_attempts, "Attempts before giving up");
  prepare->add_option("--qft", prep_qft, "QFT implementation")
      ->check(CLI::IsMember({"decomposed", "dense"}));
  prepare->add_option("--report", prep_report_path, "Write the JSON report here");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve Ax = b with HHL");
  std::string solve_system, solve_input_mode = "injected", solve_report_path;
  unsigned solve_nc = 5, solve_prep_nc = 0;
  std::optional<double> solve_t, solve_C, solve_prep_t;
  bool solve_dense = false;
  solve->add_option("--system", solve_system, "System JSON")->required();
  solve->add_option("--nc", solve_nc, "Clock qubits")->check(CLI::Range(2u, 24u));
  solve->add_option("--input-mode", solve_input_mode, "How |b> enters the solver")
      ->check(CLI::IsMember({"prepared", "injected"}));
  solve->add_option("--prep-nc", solve_prep_nc, "Clock qubits of the preparation stage");
  solve->add_option("--prep-t", solve_prep_t, "Evolution time of the preparation stage");
  solve->add_option("--t", solve_t, "Evolution time");
  solve->add_option("--C", solve_C, "Rotation constant");
  solve->add_flag("--dense", solve_dense, "Force the dense eigenbasis propagator");
  solve->add_option("--report", solve_report_path, "Write the JSON report here");

  // trace
  auto* trace = app.add_subcommand("trace", "Emit psi0..psi9 amplitudes as JSON");
  std::string trace_input, trace_output;
  unsigned trace_nc = 3, trace_max_qubits = 12;
  std::optional<double> trace_t, trace_C;
  trace->add_option("--input", trace_input, "Vector file or generator spec")->required();
  trace->add_option("--nc", trace_nc, "Clock qubits")->check(CLI::Range(2u, 24u));
  trace->add_option("--t", trace_t, "Evolution time");
  trace->add_option("--C", trace_C, "Rotation constant");
  trace->add_option("--max-qubits", trace_max_qubits, "Refuse layouts larger than this");
  trace->add_option("--output", trace_output, "Write the JSON here");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run an experiment sweep to CSV");
  std::string sweep_spec_path, sweep_output;
  unsigned sweep_threads = 0;
  sweep->add_option("--spec", sweep_spec_path, "Sweep spec JSON")->required();
  sweep->add_option("--output", sweep_output, "Override the spec's output path");
  sweep->add_option("--threads", sweep_threads, "Worker threads (0 = hardware)");

  // baseline
  auto* baseline = app.add_subcommand("baseline", "Exact O(N) rotation-tree encoder");
  std::string base_input, base_report_path;
  baseline->add_option("--input", base_input, "Vector file or generator spec")->required();
  baseline->add_option("--report", base_report_path, "Write the JSON report here");

  // census
  auto* census = app.add_subcommand("census", "Gate census of a recorded trace JSON");
  std::string census_trace;
  census->add_option("--trace", census_trace, "Trace JSON (array of events)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*prepare) {
      const auto in = hhlprep::load_input(prep_input);
      hhlprep::PrepParams params =
          hhlprep::choose_parameters(in.b, prep_nc, prep_t ? prep_t : in.t, prep_C);
      params.mode =
          prep_mode == "exact" ? hhlprep::PostselectMode::exact : hhlprep::PostselectMode::sampled;
      params.seed = prep_seed;
      params.max_attempts = prep_max_attempts;
      params.qft_method = qft_method(prep_qft);
      const auto result = hhlprep::prepare_state(in.b, params);
      json j = hhlprep::prepare_report_json(in.b, params, result.report);
      j["prepared_target"] = hhlprep::amplitudes_json(hhlprep::prepared_target(result.state));
      emit(j, prep_report_path);
    } else if (*solve) {
      const auto system = hhlprep::load_system_file(solve_system);
      hhlprep::SolveOptions options;
      options.n_c = solve_nc;
      options.input_mode = solve_input_mode == "prepared" ? hhlprep::InputMode::prepared
                                                          : hhlprep::InputMode::injected;
      options.prep_n_c = solve_prep_nc;
      options.prep_t = solve_prep_t;
      options.t = solve_t;
      options.C = solve_C;
      options.force_dense = solve_dense;
      const auto result = hhlprep::solve_qlsp(system, options);
      json j = {{"schema_version", hhlprep::kReportSchemaVersion},
                {"seed", 0},
                {"params",
                 {{"n_c", solve_nc},
                  {"input_mode", solve_input_mode},
                  {"prep_n_c", solve_prep_nc == 0 ? solve_nc : solve_prep_nc},
                  {"prep_t", solve_prep_t ? json(*solve_prep_t) : json(nullptr)},
                  {"t", result.report.t},
                  {"C", result.report.C},
                  {"dense", solve_dense || !system.is_diagonal()}}},
                {"report", hhlprep::to_json_value(result.report)},
                {"counts", hhlprep::to_json_value(result.report.census)},
                {"solution", hhlprep::amplitudes_json(result.solution)},
                {"classical_solution",
                 hhlprep::amplitudes_json(hhlprep::classical_solution(system).entries())}};
      emit(j, solve_report_path);
    } else if (*trace) {
      const auto in = hhlprep::load_input(trace_input);
      const auto params =
          hhlprep::choose_parameters(in.b, trace_nc, trace_t ? trace_t : in.t, trace_C);
      const auto layout = hhlprep::prep_layout(in.b, trace_nc);
      if (layout.total() > trace_max_qubits) {
        throw hhlprep::CapacityError("trace refuses " + std::to_string(layout.total()) +
                                     " qubits (limit " + std::to_string(trace_max_qubits) + ")");
      }
      const auto steps = hhlprep::trace_steps(in.b, params);
      json j = hhlprep::steps_json(in.b, params, steps);
      j["counts"] = hhlprep::to_json_value(hhlprep::prepare_state(in.b, params).report.census);
      if (!in.b.has_complex_entry() &&
          hhlprep::is_exactly_representable(in.b, params.t, params.n_c)) {
        const auto expected = hhlprep::closed_form_steps(in.b, params);
        double worst = 0.0;
        for (std::size_t s = 0; s < steps.size(); ++s) {
          for (std::size_t i = 0; i < steps[s].state.dim(); ++i) {
            worst = std::max(worst, std::abs(steps[s].state[i] - expected[s].state[i]));
          }
        }
        j["closed_form_max_deviation"] = worst;
      }
      emit(j, trace_output);
    } else if (*sweep) {
      auto spec = hhlprep::parse_sweep_spec(read_json(sweep_spec_path));
      if (!sweep_output.empty()) spec.output = sweep_output;
      if (sweep_threads != 0) spec.threads = sweep_threads;
      if (spec.output.empty()) {
        hhlprep::write_sweep_csv(hhlprep::run_sweep(spec), spec, std::cout);
      } else {
        const auto rows = hhlprep::run_sweep_to_file(spec);
        std::cerr << "wrote " << rows.size() << " rows to " << spec.output << '\n';
      }
    } else if (*baseline) {
      const auto in = hhlprep::load_input(base_input);
      const auto result = hhlprep::baseline_encode(in.b);
      json j = {{"schema_version", hhlprep::kReportSchemaVersion},
                {"seed", 0},
                {"params", {{"n_b", in.b.n_b()}}},
                {"fidelity", hhlprep::fidelity(in.b.entries(), result.state.amplitudes())},
                {"counts", hhlprep::to_json_value(result.census)}};
      emit(j, base_report_path);
    } else if (*census) {
      const auto events = hhlprep::parse_trace(read_json(census_trace));
      json j = {{"schema_version", hhlprep::kReportSchemaVersion},
                {"seed", 0},
                {"params", {{"trace", census_trace}, {"events", events.size()}}},
                {"counts", hhlprep::to_json_value(hhlprep::gate_census(events))}};
      emit(j, "");
    }
  } catch (const hhlprep::AttemptsExhaustedError& e) {
    std::cerr << "error: " << e.what() << " (failures: " << e.failures() << ")\n";
    return 3;
  } catch (const hhlprep::AliasingError& e) {
    std::cerr << "error: " << e.what() << " (suggested t: " << e.suggested_t() << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
