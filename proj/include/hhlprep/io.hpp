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

#include <string>
#include <vector>

#include "json.hpp"

#include "hhlprep/amplitude.hpp"
#include "hhlprep/cost.hpp"
#include "hhlprep/generators.hpp"
#include "hhlprep/prep.hpp"
#include "hhlprep/qlsp.hpp"
#include "hhlprep/sweep.hpp"
#include "hhlprep/trace.hpp"

namespace hhlprep {

inline constexpr int kReportSchemaVersion = 1;

/// CSV (rows "re,im"; '#' comments and blank lines skipped) or JSON
/// ({"entries": [[re, im], ...]}), chosen by the .json extension. The vector
/// is normalized on load.
AmplitudeVector load_vector_file(const std::string& path);
AmplitudeVector parse_vector_csv(const std::string& text);
AmplitudeVector parse_vector_json(const nlohmann::json& j);

/// A "gen:..." spec or a vector file path.
GeneratedInput load_input(const std::string& arg);

/// {"matrix": [[z, ...], ...]} | {"diagonal": [x, ...]} |
/// {"generator": "random_hermitian", "n_b", "kappa", "seed"} | {"generator": "diagonal", "diagonal"},
/// each with "b" given as {"entries": ...}, a bare entry list, or a "gen:..." string.
/// Complex numbers are [re, im] pairs or plain reals.
HermitianSystem parse_system(const nlohmann::json& j);
HermitianSystem load_system_file(const std::string& path);

nlohmann::json trace_json(const CircuitTrace& trace);
/// Throws FormatError for malformed events.
std::vector<TraceEvent> parse_trace(const nlohmann::json& j);

nlohmann::json to_json_value(const CostReport& c);
nlohmann::json to_json_value(const PrepParams& p);
nlohmann::json to_json_value(const PrepReport& r);
nlohmann::json to_json_value(const SolveReport& r);
nlohmann::json amplitudes_json(std::span<const Amplitude> amps);

/// Full `prepare` report: schema_version, seed, params, layout, results, census.
nlohmann::json prepare_report_json(const AmplitudeVector& b, const PrepParams& params,
                                   const PrepReport& report);
nlohmann::json steps_json(const AmplitudeVector& b, const PrepParams& params,
                          const std::vector<StepState>& steps);

SweepSpec parse_sweep_spec(const nlohmann::json& j);

}  // namespace hhlprep
