# Copyright 2026 The hhlprep Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import hhlprep


def test_worked_example_is_exact():
    b = [0.6, -0.8, 0.0, 0.0]
    target, report, params, state = hhlprep.prepare(b, n_c=4, t=0.625 * math.pi)
    assert params.C == pytest.approx(0.25)
    assert report.fidelity >= 1 - 1e-10
    assert report.success_prob_circuit == pytest.approx(25 / 64, abs=1e-10)
    assert report.exact_representable
    assert abs(np.vdot(np.array(b), target)) == pytest.approx(1.0, abs=1e-10)
    assert state.shape == (2 ** 7,)
    assert np.linalg.norm(state) == pytest.approx(1.0)


def test_complex_input_takes_embedding_path():
    b, t = hhlprep.generate("gen:exact_complex:n_b=2,n_c=4,seed=5")
    _, report, _, _ = hhlprep.prepare(b, n_c=4, t=t)
    assert report.embedded
    assert report.flag_weight >= 1 - 1e-10
    assert report.fidelity >= 1 - 1e-10


def test_sampled_mode_and_exhaustion():
    b = [0.6, -0.8, 0.0, 0.0]
    _, report, _, _ = hhlprep.prepare(b, n_c=4, t=0.625 * math.pi, mode="sampled", seed=4)
    assert report.attempts == report.failures + 1
    with pytest.raises(hhlprep.AttemptsExhaustedError):
        hhlprep.prepare(b, n_c=4, t=0.625 * math.pi, C=0.0025, mode="sampled", max_attempts=3)
    successes, trials = hhlprep.sample_success_frequency(b, 400, n_c=4, t=0.625 * math.pi)
    assert trials == 400
    assert abs(successes / trials - 25 / 64) < 0.1


def test_errors_map_to_python_exceptions():
    with pytest.raises(hhlprep.AliasingError):
        hhlprep.prepare([0.6, -0.8], n_c=4, t=100.0)
    with pytest.raises(hhlprep.ValidationError):
        hhlprep.prepare([1.0, 0.0, 0.0])
    assert issubclass(hhlprep.SingularSystemError, hhlprep.HhlprepError)


def test_trace_matches_closed_form():
    b, t = hhlprep.generate("gen:exact:n_b=2,n_c=3,seed=2")
    circuit = hhlprep.trace_steps(b, n_c=3, t=t)
    closed = hhlprep.closed_form_steps(b, n_c=3, t=t)
    assert [label for label, _ in circuit] == [f"psi{i}" for i in range(10)]
    for (_, a), (_, c) in zip(circuit, closed):
        assert np.max(np.abs(a - c)) < 1e-10


def test_solver_diagonal_and_dense():
    b = np.array([1.0, 1.0]) / math.sqrt(2)
    x, report = hhlprep.solve([1.0, 2.0], list(b), n_c=4)
    assert report.fidelity >= 1 - 1e-10
    assert np.abs(x) == pytest.approx(np.array([2, 1]) / math.sqrt(5), abs=1e-10)
    a = np.array([[2.0, 1j], [-1j, 2.0]])
    x, report = hhlprep.solve(a, b, n_c=5, input_mode="prepared", prep_n_c=8)
    ref = hhlprep.classical_solution(a, b)
    assert abs(np.vdot(ref, x)) >= 0.99
    assert report.prep_report is not None
    with pytest.raises(hhlprep.SingularSystemError):
        hhlprep.solve(np.array([0.0, 1.0]), b)


def test_cost_separation_and_baseline():
    b, _ = hhlprep.generate("gen:random:n_b=10,seed=1")
    _, report, _, _ = hhlprep.prepare(b, n_c=8)
    state, census = hhlprep.baseline_encode(b)
    assert census.tree_rotations == 1023
    assert np.max(np.abs(state - b)) < 1e-12
    assert census.tree_rotations / report.census.total_charged("unit") > 5
    assert report.census.to_dict()["hadamards"] == 10 + 16
    assert hhlprep.rotation_cost(8) == 16


def test_sweep_returns_versioned_csv():
    text = hhlprep.sweep({"variable": "n_c", "values": [3, 4], "n_b": 2, "repetitions": 2})
    lines = text.strip().splitlines()
    assert lines[0].startswith("schema_version,")
    assert len(lines) == 5
    assert text == hhlprep.sweep({"variable": "n_c", "values": [3, 4], "n_b": 2, "repetitions": 2})
