# Copyright 2026 The pateleak Authors.
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

"""Smoke tests for the Python bindings."""

import math
import os
import subprocess

import pytest

import pateleak


def phi(x):
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def test_version():
    assert pateleak.__version__ == "0.1.0"


def test_histogram_metrics():
    assert pateleak.consensus([4, 7, 6, 8, 4, 2, 0, 214, 4, 1]) == pytest.approx(0.856)
    assert pateleak.l1_error([200, 50], [190.0, 60.0]) == pytest.approx(0.04)
    assert pateleak.shift_to_total([10.0, 20.0, 30.0], 90) == [20.0, 30.0, 40.0]
    groups = pateleak.tertile_split([[3, 3, 3, 1], [6, 2, 2], [9, 1]])
    assert groups == ["low", "medium", "high"]
    with pytest.raises(ValueError):
        pateleak.consensus([5])


def test_outcome_distribution_two_class():
    q = pateleak.outcome_distribution([150, 100], 40.0)
    assert sum(q) == pytest.approx(1.0, abs=1e-12)
    assert q[0] == pytest.approx(phi(50 / (40 * math.sqrt(2))), abs=1e-4)
    jac = pateleak.outcome_jacobian([150, 100], 40.0)
    assert jac[0][0] == pytest.approx(-jac[1][0], abs=1e-9)


def test_sample_and_estimate():
    counts = pateleak.sample([120, 80, 50], 40.0, 20000, seed=3)
    assert sum(counts) == 20000
    assert counts == pateleak.sample([120, 80, 50], 40.0, 20000, seed=3)
    q_bar, se = pateleak.estimate_distribution(counts)
    q = pateleak.outcome_distribution([120, 80, 50], 40.0)
    for k in range(3):
        assert abs(q_bar[k] - q[k]) <= 5 * math.sqrt(q[k] * (1 - q[k]) / 20000)
    with pytest.raises(ValueError):
        pateleak.sample([1, 2], 40.0, 0)


def test_reconstruct_fixture():
    fixture = next(f for f in pateleak.fixtures() if f["name"] == "svhn-high-H1")
    truth = fixture["counts"]
    counts = pateleak.sample(truth, 40.0, 10000, seed=1)
    result = pateleak.reconstruct(counts, 40.0, 250, truth=truth)
    assert result.error <= 0.05
    assert sum(result.estimate) == pytest.approx(250.0)
    assert result.stop_reason != pateleak.StopReason.MAX_ITERATIONS
    assert result.loss_trace == sorted(result.loss_trace, reverse=True)


def test_optimizer_config_round_trip():
    config = pateleak.OptimizerConfig()
    assert config.stop_mode == pateleak.StopMode.NEGATIVE_ENTRY
    config.max_iters = 1
    counts = pateleak.sample([30, 10, 10], 40.0, 1000)
    result = pateleak.reconstruct(counts, 40.0, 50, config)
    assert result.stop_reason == pateleak.StopReason.MAX_ITERATIONS
    assert result.error is None


def test_privacy():
    assert pateleak.rdp_per_query(40.0, 2.0) == pytest.approx(0.00125)
    eps, alpha = pateleak.epsilon(10000, 40.0, 1e-5)
    assert eps == pytest.approx(23.2, abs=0.05)
    assert alpha > 1.0
    m = pateleak.max_queries_within_budget(40.0, 1e-5, 1.97)
    assert pateleak.epsilon(m, 40.0)[0] <= 1.97 < pateleak.epsilon(m + 1, 40.0)[0]


def test_attribute():
    assert pateleak.classify_by_consensus([150.0, 50.0]) == "minority"
    assert pateleak.classify_by_consensus([151.0, 49.0]) == "majority"
    population = pateleak.generate_population(100, majority_consensus=0.95,
                                              spread=0.03, seed=2)
    assert len(population) == 100
    assert sum(1 for _, _, g in population if g == "minority") == 50
    assert all(sum(counts) == 250 for _, counts, _ in population)


def test_fixtures():
    fixtures = pateleak.fixtures()
    assert len(fixtures) == 30
    assert {f["dataset"] for f in fixtures} == {"mnist", "svhn"}
    assert all(sum(f["counts"]) == 250 for f in fixtures)


@pytest.mark.skipif("PATELEAK_TOOL" not in os.environ, reason="CLI path unset")
def test_cli_account(tmp_path):
    out = tmp_path / "account.csv"
    subprocess.run([os.environ["PATELEAK_TOOL"], "account", "--m", "10000",
                    "--out", str(out)], check=True)
    lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert lines[0] == "m,sigma,delta,epsilon,alpha_star"
    assert float(lines[1].split(",")[3]) == pytest.approx(
        pateleak.epsilon(10000, 40.0)[0])
