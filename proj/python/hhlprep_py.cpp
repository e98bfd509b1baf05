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

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hhlprep/cost.hpp"
#include "hhlprep/errors.hpp"
#include "hhlprep/generators.hpp"
#include "hhlprep/io.hpp"
#include "hhlprep/prep.hpp"
#include "hhlprep/qlsp.hpp"
#include "hhlprep/sweep.hpp"
#include "json.hpp"

namespace py = pybind11;
using namespace hhlprep;

namespace {

using ComplexArray = py::array_t<Amplitude>;

ComplexArray to_array(std::span<const Amplitude> v) {
  return ComplexArray(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())}, v.data());
}

AmplitudeVector to_vector(const std::vector<Amplitude>& entries, bool normalize) {
  return normalize ? AmplitudeVector::normalized(entries) : AmplitudeVector::from_unit(entries);
}

PostselectMode parse_mode(const std::string& mode) {
  if (mode == "exact") return PostselectMode::exact;
  if (mode == "sampled") return PostselectMode::sampled;
  throw ValidationError("mode must be 'exact' or 'sampled'");
}

QftMethod parse_qft(const std::string& method) {
  if (method == "decomposed") return QftMethod::decomposed;
  if (method == "dense") return QftMethod::dense;
  throw ValidationError("qft method must be 'decomposed' or 'dense'");
}

PrepParams make_params(const AmplitudeVector& b, unsigned n_c, std::optional<double> t,
                       std::optional<double> C, const std::string& mode, std::uint64_t seed,
                       std::uint64_t max_attempts, const std::string& qft) {
  PrepParams p = choose_parameters(b, n_c, t, C);
  p.mode = parse_mode(mode);
  p.seed = seed;
  p.max_attempts = max_attempts;
  p.qft_method = parse_qft(qft);
  return p;
}

py::list steps_list(const std::vector<StepState>& steps) {
  py::list out;
  for (const auto& s : steps) out.append(py::make_tuple(s.label, to_array(s.state.amplitudes())));
  return out;
}

HermitianSystem make_system(const py::object& obj, const AmplitudeVector& b) {
  const auto a = py::module_::import("numpy").attr("asarray")(obj).cast<py::array>();
  if (a.ndim() == 1) {
    return HermitianSystem::diagonal(a.cast<std::vector<double>>(), b);
  }
  if (a.ndim() != 2) throw ShapeError("A must be a 1-D diagonal or a 2-D matrix");
  const auto m = py::array_t<Amplitude, py::array::c_style | py::array::forcecast>::ensure(a);
  if (m.shape(0) != m.shape(1)) throw ShapeError("A must be square");
  return HermitianSystem::dense(std::vector<Amplitude>(m.data(), m.data() + m.size()), b);
}

}  // namespace

PYBIND11_MODULE(_hhlprep, m) {
  m.doc() = "State preparation by modified HHL, and the HHL linear-system solver";

  auto base = py::register_exception<Error>(m, "HhlprepError", PyExc_RuntimeError);
  py::register_exception<CapacityError>(m, "CapacityError", base);
  py::register_exception<IndexError>(m, "QubitIndexError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<OverlapError>(m, "OverlapError", base);
  py::register_exception<ImpossibleOutcomeError>(m, "ImpossibleOutcomeError", base);
  py::register_exception<ShapeError>(m, "ShapeError", base);
  py::register_exception<MustEmbedError>(m, "MustEmbedError", base);
  py::register_exception<PreconditionError>(m, "PreconditionError", base);
  py::register_exception<RotationDomainError>(m, "RotationDomainError", base);
  py::register_exception<SingularSystemError>(m, "SingularSystemError", base);
  py::register_exception<FormatError>(m, "FormatError", base);
  py::register_exception<IoError>(m, "IoError", base);
  py::register_exception<AliasingError>(m, "AliasingError", base);
  py::register_exception<AttemptsExhaustedError>(m, "AttemptsExhaustedError", base);

  py::class_<CostReport>(m, "CostReport")
      .def_readonly("hadamards", &CostReport::hadamards)
      .def_readonly("controlled_ladder_applications", &CostReport::controlled_ladder_applications)
      .def_readonly("oracle_queries", &CostReport::oracle_queries)
      .def_readonly("oracle_queries_unit", &CostReport::oracle_queries_unit)
      .def_readonly("qft_gates", &CostReport::qft_gates)
      .def_readonly("controlled_rotations", &CostReport::controlled_rotations)
      .def_readonly("rotation_ops_charged", &CostReport::rotation_ops_charged)
      .def_readonly("tree_rotations", &CostReport::tree_rotations)
      .def_readonly("measurements", &CostReport::measurements)
      .def(
          "total_charged",
          [](const CostReport& c, const std::string& accounting) {
            if (accounting != "power" && accounting != "unit") {
              throw ValidationError("accounting must be 'power' or 'unit'");
            }
            return c.total_charged(accounting == "unit" ? QueryAccounting::unit
                                                        : QueryAccounting::power);
          },
          py::arg("accounting") = "power")
      .def(py::self == py::self)
      .def("to_dict", [](const CostReport& c) {
        return py::module_::import("json").attr("loads")(to_json_value(c).dump());
      });

  py::class_<PrepParams>(m, "PrepParams")
      .def_readonly("t", &PrepParams::t)
      .def_readonly("C", &PrepParams::C)
      .def_readonly("n_c", &PrepParams::n_c)
      .def_readonly("seed", &PrepParams::seed)
      .def_readonly("max_attempts", &PrepParams::max_attempts)
      .def_property_readonly("mode", [](const PrepParams& p) {
        return p.mode == PostselectMode::exact ? "exact" : "sampled";
      });

  py::class_<PrepReport>(m, "PrepReport")
      .def_readonly("fidelity", &PrepReport::fidelity)
      .def_readonly("joint_fidelity", &PrepReport::joint_fidelity)
      .def_readonly("success_prob_analytic", &PrepReport::success_prob_analytic)
      .def_readonly("success_prob_circuit", &PrepReport::success_prob_circuit)
      .def_readonly("success_prob_observed", &PrepReport::success_prob_observed)
      .def_readonly("attempts", &PrepReport::attempts)
      .def_readonly("failures", &PrepReport::failures)
      .def_readonly("clock_residual", &PrepReport::clock_residual)
      .def_readonly("flag_weight", &PrepReport::flag_weight)
      .def_readonly("max_norm_drift", &PrepReport::max_norm_drift)
      .def_readonly("embedded", &PrepReport::embedded)
      .def_readonly("exact_representable", &PrepReport::exact_representable)
      .def_readonly("census", &PrepReport::census);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("fidelity", &SolveReport::fidelity)
      .def_readonly("success_prob", &SolveReport::success_prob)
      .def_readonly("success_prob_analytic", &SolveReport::success_prob_analytic)
      .def_readonly("input_fidelity", &SolveReport::input_fidelity)
      .def_readonly("t", &SolveReport::t)
      .def_readonly("C", &SolveReport::C)
      .def_readonly("kappa", &SolveReport::kappa)
      .def_readonly("clock_residual", &SolveReport::clock_residual)
      .def_readonly("max_norm_drift", &SolveReport::max_norm_drift)
      .def_readonly("exact_representable", &SolveReport::exact_representable)
      .def_readonly("prep_report", &SolveReport::prep_report)
      .def_readonly("census", &SolveReport::census);

  m.def(
      "choose_parameters",
      [](const std::vector<Amplitude>& b, unsigned n_c, std::optional<double> t,
         std::optional<double> C) { return choose_parameters(to_vector(b, true), n_c, t, C); },
      py::arg("b"), py::arg("n_c") = 4, py::arg("t") = py::none(), py::arg("C") = py::none());

  m.def(
      "scaled_eigenvalues",
      [](const std::vector<Amplitude>& b, double t, unsigned n_c) {
        return scaled_eigenvalues(to_vector(b, true), t, n_c);
      },
      py::arg("b"), py::arg("t"), py::arg("n_c"));

  m.def(
      "is_exactly_representable",
      [](const std::vector<Amplitude>& b, double t, unsigned n_c) {
        return is_exactly_representable(to_vector(b, true), t, n_c);
      },
      py::arg("b"), py::arg("t"), py::arg("n_c"));

  m.def(
      "prepare",
      [](const std::vector<Amplitude>& b_in, unsigned n_c, std::optional<double> t,
         std::optional<double> C, const std::string& mode, std::uint64_t seed,
         std::uint64_t max_attempts, const std::string& qft) {
        const auto b = to_vector(b_in, true);
        const PrepParams p = make_params(b, n_c, t, C, mode, seed, max_attempts, qft);
        PrepResult r = prepare_state(b, p);
        return py::make_tuple(to_array(prepared_target(r.state)), r.report, p,
                              to_array(r.state.amplitudes()));
      },
      py::arg("b"), py::arg("n_c") = 4, py::arg("t") = py::none(), py::arg("C") = py::none(),
      py::arg("mode") = "exact", py::arg("seed") = 0, py::arg("max_attempts") = 1000,
      py::arg("qft") = "decomposed",
      "Returns (prepared target, PrepReport, PrepParams, full final state).");

  m.def(
      "trace_steps",
      [](const std::vector<Amplitude>& b_in, unsigned n_c, std::optional<double> t,
         std::optional<double> C) {
        const auto b = to_vector(b_in, true);
        return steps_list(trace_steps(b, choose_parameters(b, n_c, t, C)));
      },
      py::arg("b"), py::arg("n_c") = 3, py::arg("t") = py::none(), py::arg("C") = py::none());

  m.def(
      "closed_form_steps",
      [](const std::vector<Amplitude>& b_in, unsigned n_c, std::optional<double> t,
         std::optional<double> C) {
        const auto b = to_vector(b_in, true);
        return steps_list(closed_form_steps(b, choose_parameters(b, n_c, t, C)));
      },
      py::arg("b"), py::arg("n_c") = 3, py::arg("t") = py::none(), py::arg("C") = py::none());

  m.def(
      "sample_success_frequency",
      [](const std::vector<Amplitude>& b_in, std::uint64_t trials, unsigned n_c,
         std::optional<double> t, std::optional<double> C, std::uint64_t seed) {
        const auto b = to_vector(b_in, true);
        PrepParams p = choose_parameters(b, n_c, t, C);
        p.seed = seed;
        const auto tally = sample_success_frequency(b, p, trials);
        return py::make_tuple(tally.successes, tally.trials);
      },
      py::arg("b"), py::arg("trials"), py::arg("n_c") = 4, py::arg("t") = py::none(),
      py::arg("C") = py::none(), py::arg("seed") = 0);

  m.def(
      "solve",
      [](const py::object& a, const std::vector<Amplitude>& b_in, unsigned n_c,
         const std::string& input_mode, std::optional<double> t, std::optional<double> C,
         unsigned prep_n_c, std::optional<double> prep_t, bool dense) {
        if (input_mode != "injected" && input_mode != "prepared") {
          throw ValidationError("input_mode must be 'injected' or 'prepared'");
        }
        SolveOptions opt;
        opt.n_c = n_c;
        opt.input_mode = input_mode == "prepared" ? InputMode::prepared : InputMode::injected;
        opt.t = t;
        opt.C = C;
        opt.prep_n_c = prep_n_c;
        opt.prep_t = prep_t;
        opt.force_dense = dense;
        SolveResult r = solve_qlsp(make_system(a, to_vector(b_in, true)), opt);
        return py::make_tuple(to_array(r.solution), r.report);
      },
      py::arg("A"), py::arg("b"), py::arg("n_c") = 5, py::arg("input_mode") = "injected",
      py::arg("t") = py::none(), py::arg("C") = py::none(), py::arg("prep_n_c") = 0,
      py::arg("prep_t") = py::none(), py::arg("dense") = false,
      "A is a 1-D diagonal or a 2-D Hermitian matrix. Returns (solution, SolveReport).");

  m.def(
      "classical_solution",
      [](const py::object& a, const std::vector<Amplitude>& b) {
        return to_array(classical_solution(make_system(a, to_vector(b, true))).entries());
      },
      py::arg("A"), py::arg("b"));

  m.def(
      "baseline_encode",
      [](const std::vector<Amplitude>& b) {
        BaselineResult r = baseline_encode(to_vector(b, true));
        return py::make_tuple(to_array(r.state.amplitudes()), r.census);
      },
      py::arg("b"), "Returns (encoded state, CostReport).");

  m.def("rotation_cost", &rotation_cost, py::arg("clock_width"));

  m.def(
      "generate",
      [](const std::string& spec) {
        const GeneratedInput g = parse_generator(spec);
        return py::make_tuple(to_array(g.b.entries()), g.t);
      },
      py::arg("spec"), "Parses gen:<kind>:key=value,... and returns (b, t or None).");

  m.def(
      "load_vector",
      [](const std::string& path) { return to_array(load_vector_file(path).entries()); },
      py::arg("path"));

  m.def(
      "_hhlprep_sweep_csv",
      [](const std::string& spec_json) {
        const SweepSpec spec = parse_sweep_spec(nlohmann::json::parse(spec_json));
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_sweep(spec);
        }
        std::ostringstream out;
        write_sweep_csv(rows, spec, out);
        return out.str();
      },
      py::arg("spec_json"));

  m.attr("REPORT_SCHEMA_VERSION") = kReportSchemaVersion;
  m.attr("SWEEP_CSV_SCHEMA_VERSION") = kSweepCsvSchemaVersion;
}
