import csv
import json

import pytest

from zonocalc import commands
from zonocalc.cli import main


def run(command, config_path, out, *extra):
    return main([command, "--config", config_path, "--out", str(out), *extra])


def load(path):
    return json.loads(path.read_text())


def test_invert_writes_a_passing_report(write_config, tmp_path):
    out = tmp_path / "out"
    path = write_config({"system": "S2", "box": [[-2, 2]], "K": [{"lambda": [0], "value": "1/3"}]})
    assert run("invert", path, out) == 0
    report = load(out / "report-invert-S2.json")
    assert report["report"]["verdict"] is True
    assert report["report"]["kind"] == "unimodular"
    assert report["config"]["system"] == "S2"
    assert not (out / "counterexample-invert-S2.json").exists()


def test_invert_uses_the_vertex_formula_for_inline_lists(write_config, tmp_path):
    out = tmp_path / "out"
    path = write_config({"system": {"dim": 1, "weights": [1, 2]}, "box": [[-1, 1]]})
    assert run("invert", path, out, "--emit-grid", "2") == 0
    report = load(out / "report-invert-inline.json")["report"]
    assert report["kind"] == "general"
    assert len(report["contributions"]) == 2
    assert (out / "grid-invert-inline-vertex0.csv").exists()
    assert (out / "grid-invert-inline-vertex1.csv").exists()


def test_non_spanning_lists_exit_with_two(write_config, tmp_path):
    out = tmp_path / "out"
    path = write_config({"system": {"dim": 2, "weights": [[1, 0], [2, 0]]}})
    assert run("invert", path, out) == 2
    error = load(out / "summary-invert-error.json")
    assert error["error"] == "DoesNotSpan"
    assert error["exit_code"] == 2


@pytest.mark.parametrize("text", ["{", '{"system": "S1", "radius": 2}', '{"system": "nope"}'])
def test_bad_configs_exit_with_two(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    assert run("box", str(path), tmp_path / "out") == 2
    assert load(tmp_path / "out" / "summary-box-error.json")["exit_code"] == 2


def test_validation_errors_from_handlers_write_the_error_summary(write_config, tmp_path, monkeypatch):
    def reject(config, store, emit_grid):
        raise ValueError("window sides must be increasing")

    monkeypatch.setattr(commands, "run", reject)
    out = tmp_path / "out"
    assert run("box", write_config({"system": "S1"}), out) == 2
    error = load(out / "summary-box-error.json")
    assert error["error"] == "ConfigError"
    assert "window sides must be increasing" in error["message"]


def test_vertex_sum_for_a_long_vector(write_config, tmp_path):
    out = tmp_path / "out"
    path = write_config({"system": "S4", "box": [[0, 6]]})
    assert run("brion-vergne", path, out) == 0
    report = load(out / "report-brion-vergne-S4.json")["report"]
    assert [row["value"] for row in report["reconstructed"]] == ["1", "0", "1", "0", "1", "0", "1"]


def test_partition_table(write_config, tmp_path):
    out = tmp_path / "out"
    path = write_config({"system": "U2", "box": [[0, 2], [0, 2]]})
    assert run("partition", path, out) == 0
    with open(out / "table-partition-U2.csv") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["l1", "l2", "value"]
    assert ["2", "1", "2"] in rows
    assert ["0", "0", "1"] in rows
    assert len(rows) == 10


def test_dm_basis(write_config, tmp_path):
    out = tmp_path / "out"
    assert run("dm-basis", write_config({"system": "S4"}), out) == 0
    payload = load(out / "report-dm-basis-S4.json")
    assert payload["counts"]["dim_DM"] == 2
    assert sorted(payload["delta_set"]) == [[-1], [0]]


def test_vertices(write_config, tmp_path):
    out = tmp_path / "out"
    assert run("vertices", write_config({"system": "N2"}), out) == 0
    payload = load(out / "report-vertices-N2.json")
    assert len(payload["vertices"]) == 2
    assert sorted(v["order"] for v in payload["vertices"]) == [1, 2]
    assert len(payload["bases"]) == 6


def test_box_with_grid(write_config, tmp_path):
    out = tmp_path / "out"
    assert run("box", write_config({"system": "S2"}), out, "--emit-grid", "2") == 0
    spline = load(out / "report-box-S2.json")["spline"]
    assert spline["cells"]
    grid = (out / "grid-box-S2.csv").read_text().splitlines()
    assert grid[0] == "v1,value"


def test_index(write_config, tmp_path):
    out = tmp_path / "out"
    assert run("index", write_config({"system": "S1", "face": 0, "box": [[-2, 2]]}), out) == 0
    assert load(out / "report-index-S1.json")["report"]["verdict"] is True


def test_verify_a_single_suite(write_config, tmp_path):
    out = tmp_path / "out"
    assert run("verify", write_config({"system": "S4", "suite": "dm"}), out) == 0
    summary = load(out / "summary-verify-dm.json")
    assert summary["all_passed"] is True
    assert summary["rows"]
