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

#include "hhlprep/io.hpp"

#include <fstream>
#include <sstream>

namespace hhlprep {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(what + ": " + e.what());
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Amplitude parse_complex(const json& z) {
  if (z.is_number()) return {z.get<double>(), 0.0};
  if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
    return {z[0].get<double>(), z[1].get<double>()};
  }
  throw FormatError("complex value must be a number or [re, im], got " + z.dump());
}

json complex_json(const Amplitude& a) { return json::array({a.real(), a.imag()}); }

std::vector<Amplitude> parse_entry_list(const json& list) {
  if (!list.is_array()) throw FormatError("vector entries must be an array");
  std::vector<Amplitude> v;
  v.reserve(list.size());
  for (const auto& z : list) v.push_back(parse_complex(z));
  return v;
}

AmplitudeVector parse_rhs(const json& j) {
  if (j.is_string()) return load_input(j.get<std::string>()).b;
  if (j.is_object()) return parse_vector_json(j);
  return AmplitudeVector::normalized(parse_entry_list(j));
}

template <class T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

const char* mode_name(PostselectMode m) { return m == PostselectMode::exact ? "exact" : "sampled"; }

}  // namespace

AmplitudeVector parse_vector_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Amplitude> v;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    std::string re_field, im_field;
    std::getline(row, re_field, ',');
    const bool has_im = static_cast<bool>(std::getline(row, im_field, ','));
    std::string extra;
    if (std::getline(row, extra, ',')) {
      throw FormatError("CSV line " + std::to_string(line_no) + ": expected 're,im'");
    }
    try {
      std::size_t used = 0;
      const double re = std::stod(re_field, &used);
      const double im = has_im ? std::stod(im_field) : 0.0;
      v.emplace_back(re, im);
    } catch (const std::exception&) {
      throw FormatError("CSV line " + std::to_string(line_no) + ": not a number");
    }
  }
  return AmplitudeVector::normalized(std::move(v));
}

AmplitudeVector parse_vector_json(const json& j) {
  if (!j.is_object() || !j.contains("entries")) {
    throw FormatError("vector JSON needs an 'entries' array");
  }
  return AmplitudeVector::normalized(parse_entry_list(j.at("entries")));
}

AmplitudeVector load_vector_file(const std::string& path) {
  const std::string text = read_file(path);
  if (ends_with(path, ".json")) return parse_vector_json(parse_json_text(text, path));
  return parse_vector_csv(text);
}

GeneratedInput load_input(const std::string& arg) {
  if (arg.rfind("gen:", 0) == 0) return parse_generator(arg);
  return {load_vector_file(arg), std::nullopt};
}

HermitianSystem parse_system(const json& j) {
  if (!j.is_object()) throw FormatError("system JSON must be an object");
  if (!j.contains("b")) throw FormatError("system JSON needs 'b'");
  AmplitudeVector b = parse_rhs(j.at("b"));
  const std::string generator = j.value("generator", std::string{});
  if (generator == "random_hermitian") {
    return random_hermitian(required<unsigned>(j, "n_b"), required<unsigned>(j, "kappa"),
                            j.value("seed", std::uint64_t{0}), std::move(b));
  }
  if (!generator.empty() && generator != "diagonal") {
    throw FormatError("unknown system generator '" + generator + "'");
  }
  if (j.contains("diagonal")) {
    std::vector<double> d;
    for (const auto& z : j.at("diagonal")) {
      const Amplitude a = parse_complex(z);
      if (a.imag() != 0.0) throw ValidationError("diagonal of a Hermitian matrix must be real");
      d.push_back(a.real());
    }
    return HermitianSystem::diagonal(std::move(d), std::move(b));
  }
  if (!j.contains("matrix")) throw FormatError("system JSON needs 'matrix' or 'diagonal'");
  const json& rows = j.at("matrix");
  if (!rows.is_array()) throw FormatError("'matrix' must be an array of rows");
  std::vector<Amplitude> m;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != rows.size()) throw FormatError("'matrix' must be square");
    for (const auto& z : row) m.push_back(parse_complex(z));
  }
  return HermitianSystem::dense(std::move(m), std::move(b));
}

HermitianSystem load_system_file(const std::string& path) {
  return parse_system(parse_json_text(read_file(path), path));
}

json trace_json(const CircuitTrace& trace) {
  json events = json::array();
  for (const auto& e : trace.events()) {
    events.push_back({{"gate", std::string(gate_name(e.kind))},
                      {"register", e.reg},
                      {"width", e.width},
                      {"power", e.power}});
  }
  return events;
}

std::vector<TraceEvent> parse_trace(const json& j) {
  if (!j.is_array()) throw FormatError("trace must be an array of events");
  std::vector<TraceEvent> events;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("gate")) throw FormatError("trace event needs 'gate'");
    TraceEvent ev{parse_gate_name(required<std::string>(e, "gate")),
                  e.value("register", std::string{}), 1, 1};
    if (e.contains("width")) ev.width = required<unsigned>(e, "width");
    if (e.contains("power")) ev.power = required<std::uint64_t>(e, "power");
    events.push_back(std::move(ev));
  }
  // Validate eagerly so a malformed file fails at parse time.
  (void)gate_census(events);
  return events;
}

json to_json_value(const CostReport& c) {
  return {{"hadamards", c.hadamards},
          {"controlled_ladder_applications", c.controlled_ladder_applications},
          {"oracle_queries", c.oracle_queries},
          {"oracle_queries_unit", c.oracle_queries_unit},
          {"qft_gates", c.qft_gates},
          {"controlled_rotations", c.controlled_rotations},
          {"rotation_ops_charged", c.rotation_ops_charged},
          {"tree_rotations", c.tree_rotations},
          {"measurements", c.measurements},
          {"total_charged", c.total_charged(QueryAccounting::power)},
          {"total_charged_unit", c.total_charged(QueryAccounting::unit)}};
}

json to_json_value(const PrepParams& p) {
  return {{"t", p.t},
          {"C", p.C},
          {"n_c", p.n_c},
          {"mode", mode_name(p.mode)},
          {"max_attempts", p.max_attempts},
          {"seed", p.seed},
          {"qft_method", p.qft_method == QftMethod::dense ? "dense" : "decomposed"}};
}

json to_json_value(const PrepReport& r) {
  return {{"fidelity", r.fidelity},
          {"joint_fidelity", r.joint_fidelity},
          {"success_prob_analytic", r.success_prob_analytic},
          {"success_prob_circuit", r.success_prob_circuit},
          {"success_prob_observed",
           r.success_prob_observed ? json(*r.success_prob_observed) : json(nullptr)},
          {"attempts", r.attempts},
          {"failures", r.failures},
          {"clock_residual", r.clock_residual},
          {"flag_weight", r.flag_weight},
          {"max_norm_drift", r.max_norm_drift},
          {"embedded", r.embedded},
          {"exact_representable", r.exact_representable},
          {"rotation_policy", r.rotation_policy == DomainPolicy::reject ? "reject" : "saturate"},
          {"census", to_json_value(r.census)}};
}

json to_json_value(const SolveReport& r) {
  json j = {{"fidelity", r.fidelity},
            {"success_prob", r.success_prob},
            {"success_prob_analytic", r.success_prob_analytic},
            {"input_fidelity", r.input_fidelity},
            {"t", r.t},
            {"C", r.C},
            {"kappa", r.kappa},
            {"clock_residual", r.clock_residual},
            {"max_norm_drift", r.max_norm_drift},
            {"exact_representable", r.exact_representable},
            {"census", to_json_value(r.census)}};
  j["prep_report"] = r.prep_report ? to_json_value(*r.prep_report) : json(nullptr);
  return j;
}

json amplitudes_json(std::span<const Amplitude> amps) {
  json a = json::array();
  for (const auto& z : amps) a.push_back(complex_json(z));
  return a;
}

json prepare_report_json(const AmplitudeVector& b, const PrepParams& params,
                         const PrepReport& report) {
  const RegisterLayout layout = prep_layout(b, params.n_c);
  return {{"schema_version", kReportSchemaVersion},
          {"seed", params.seed},
          {"params", to_json_value(params)},
          {"layout",
           {{"n_b", layout.n_b}, {"has_flag", layout.has_flag}, {"n_c", layout.n_c},
            {"total_qubits", layout.total()}}},
          {"report", to_json_value(report)},
          {"counts", to_json_value(report.census)}};
}

json steps_json(const AmplitudeVector& b, const PrepParams& params,
                const std::vector<StepState>& steps) {
  json out = {{"schema_version", kReportSchemaVersion},
              {"seed", params.seed},
              {"params", to_json_value(params)},
              {"bit_order", "index = target + 2^n_sys * (clock + 2^n_c * ancilla)"},
              {"b", amplitudes_json(b.entries())}};
  json list = json::array();
  for (const auto& s : steps) {
    list.push_back({{"label", s.label}, {"amplitudes", amplitudes_json(s.state.amplitudes())}});
  }
  out["steps"] = std::move(list);
  return out;
}

SweepSpec parse_sweep_spec(const json& j) {
  if (!j.is_object()) throw FormatError("sweep spec must be an object");
  SweepSpec s;
  const std::string var = required<std::string>(j, "variable");
  if (var == "n_b") {
    s.variable = SweepVariable::n_b;
  } else if (var == "n_c") {
    s.variable = SweepVariable::n_c;
  } else if (var == "seed") {
    s.variable = SweepVariable::seed;
  } else {
    throw FormatError("sweep variable must be n_b, n_c or seed");
  }
  s.values = required<std::vector<std::uint64_t>>(j, "values");
  s.n_b = j.value("n_b", s.n_b);
  s.n_c = j.value("n_c", s.n_c);
  s.input = j.value("input", s.input);
  const std::string mode = j.value("mode", std::string("exact"));
  if (mode != "exact" && mode != "sampled") throw FormatError("mode must be exact or sampled");
  s.mode = mode == "exact" ? PostselectMode::exact : PostselectMode::sampled;
  s.seed = j.value("seed", s.seed);
  s.repetitions = j.value("repetitions", s.repetitions);
  s.output = j.value("output", s.output);
  s.threads = j.value("threads", s.threads);
  s.validate();
  return s;
}

}  // namespace hhlprep
