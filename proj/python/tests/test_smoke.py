# Copyright 2026 The h2res Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Smoke tests for the Python bindings."""

import json
import math

import pytest

import h2res


@pytest.fixture(scope="module")
def study():
    return h2res.Study.default()


def test_default_study_shape(study):
    assert study.horizon == 168
    assert study.num_nodes == 33
    assert study.validate() == []
    assert sorted(study.outages) == sorted(
        [("substation", 79, 128), ("dg:8", 79, 128), ("dg:13", 79, 128), ("dg:30", 79, 128)]
    )
    assert h2res.case_labels()[0] == "no storage"
    assert h2res.case_labels()[5] == "hydrogen"


def test_resilience_index():
    assert h2res.compute_resilience_index(300.0, 0.0) == 100.0
    assert math.isclose(h2res.compute_resilience_index(450.4, 101.9), 77.375, abs_tol=1e-3)
    with pytest.raises(ValueError):
        h2res.compute_resilience_index(10.0, 11.0)
    assert abs(h2res.back_solved_total_load() - 450.4) < 0.7


def test_model_size_matches_full_week(study):
    size = study.model_size(6)
    assert size["variables"] == 35784
    assert size["binaries"] == 168 * 6
    assert size["constraints"] > size["variables"]


def test_run_case_short_outage(study, tmp_path):
    day = study.truncated(6)
    assert day.horizon == 6
    assert day.outages == []
    r = h2res.run_case(day, 6)
    assert r.case_id == 6 and r.label == "hydrogen"
    assert r.status == "optimal" and r.method == "branch_and_bound"
    assert r.ens == pytest.approx(0.0, abs=1e-9)
    assert r.resilience_index == pytest.approx(100.0)
    assert len(r.dispatch["hour"]) == 6
    assert sum(r.costs.values()) == pytest.approx(r.objective, rel=1e-9)
    assert r.dispatch_csv().startswith("hour,")

    files = h2res.emit_reports([r], str(tmp_path / "rep"), ["smoke"])
    assert "summary.json" in files
    assert h2res.verify_reports(str(tmp_path / "rep")) == []
    doc = json.loads((tmp_path / "rep" / "summary.json").read_text())
    assert doc["notes"] == ["smoke"]
    assert doc["cases"][0]["ens"] == r.ens


def test_suite_short_horizon(study):
    rep = h2res.run_suite(study.truncated(4))
    assert [r.case_id for r in rep.results] == [1, 2, 3, 4, 5, 6]
    assert any("case-6 RI would be" in n for n in rep.notes)
    assert rep.hydrogen_minus_battery8_ri == pytest.approx(
        rep.results[5].resilience_index - rep.results[4].resilience_index
    )


def test_export_mps_is_deterministic(study):
    a = study.truncated(3).export_mps(6)
    b = study.truncated(3).export_mps(6)
    assert a == b
    assert a.startswith("NAME")
    assert a.rstrip().endswith("ENDATA")
    assert "'INTORG'" in a


def test_cli_round_trip(tmp_path):
    code, out, err = h2res.cli(["write-fixture", "--out", str(tmp_path / "in")])
    assert code == 0, err
    code, out, err = h2res.cli(
        [
            "validate",
            "--network", str(tmp_path / "in" / "branches.csv"),
            "--fleet", str(tmp_path / "in" / "fleet.json"),
            "--scenario", str(tmp_path / "in" / "scenario.json"),
        ]
    )
    assert (code, out) == (0, "ok\n"), err
    study = h2res.Study.from_files(
        str(tmp_path / "in" / "branches.csv"),
        str(tmp_path / "in" / "fleet.json"),
        str(tmp_path / "in" / "scenario.json"),
        str(tmp_path / "in" / "nodes.csv"),
    )
    assert study.horizon == 168
    assert h2res.cli(["verify", "--out", str(tmp_path / "missing")])[0] == 3


def test_errors_map_to_python_exceptions(tmp_path):
    with pytest.raises(OSError):
        h2res.Study.from_files("/nonexistent/b.csv", "/nonexistent/f.json", "/nonexistent/s.json")
    with pytest.raises(ValueError):
        h2res.run_case(h2res.Study.default().truncated(2), 7)


def test_infeasible_reserve_carries_tags(study):
    impossible = study.truncated(4).with_alpha(0.1, 1, 1.0)
    with pytest.raises(h2res.InfeasibleError) as info:
        h2res.run_case(impossible, 6)
    assert "case 6" in str(info.value)
    assert any(tag.startswith("Eq") for tag in info.value.binding_tags)
