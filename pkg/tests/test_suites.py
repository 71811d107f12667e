import pytest

import random

from zonocalc.config.store import system_catalog
from zonocalc.errors import SingularSystem
from zonocalc.geometry.polyhedron import Window
from zonocalc.lattice.weights import WeightList
from zonocalc.model.defaults import command_defaults
from zonocalc.model.types import CommandName, RowStatus, SuiteName
from zonocalc.suites.checks import SystemChecks
from zonocalc.suites.orchestrator import CheckGraph, CheckNode, SuiteOrchestrator, execute_check
from zonocalc.suites.runner import CONCRETE_SUITES, verify_suite


def node(check_id, verdict=True, depends=(), calls=None):
    def run():
        if calls is not None:
            calls.append(check_id)
        return verdict, {"id": check_id}
    return CheckNode(check_id=check_id, identity=check_id, system="test", run=run, depends_on=list(depends))


def raising(check_id, error):
    def run():
        raise error
    return CheckNode(check_id=check_id, identity=check_id, system="test", run=run)


# ------------------------------------------
# Orchestrator
# ------------------------------------------

def test_dependencies_run_first():
    calls = []
    rows = SuiteOrchestrator(threads=1).run([
        node("c", depends=["a", "b"], calls=calls),
        node("a", calls=calls),
        node("b", depends=["a"], calls=calls),
    ])
    assert calls == ["a", "b", "c"]
    # rows come back in declaration order
    assert [row.check_id for row in rows] == ["c", "a", "b"]
    assert all(row.status == RowStatus.PASSED for row in rows)


def test_failures_block_dependents():
    rows = {row.check_id: row for row in SuiteOrchestrator(threads=2).run([
        node("a", verdict=False),
        node("b", depends=["a"]),
        node("c", depends=["b"]),
        node("d"),
    ])}
    assert rows["a"].status == RowStatus.FAILED
    assert rows["b"].status == RowStatus.SKIPPED
    assert rows["b"].detail == {"blocked_by": ["a"]}
    assert rows["c"].detail == {"blocked_by": ["b"]}
    assert rows["d"].verdict


def test_errors_become_rows():
    row = execute_check(raising("boom", SingularSystem("no pivot")))
    assert row.status == RowStatus.ERROR
    assert row.detail["error"] == "SingularSystem"
    row = execute_check(raising("crash", KeyError("x")))
    assert row.status == RowStatus.ERROR
    assert not row.verdict


def test_unknown_dependencies_are_rejected():
    with pytest.raises(ValueError):
        CheckGraph([node("a", depends=["missing"])])


def test_cycles_are_reported_as_skipped():
    rows = SuiteOrchestrator(threads=1).run([node("a", depends=["b"]), node("b", depends=["a"]), node("c")])
    statuses = {row.check_id: row for row in rows}
    assert statuses["c"].status == RowStatus.PASSED
    assert statuses["a"].status == RowStatus.SKIPPED
    assert statuses["a"].detail == {"blocked_by": ["cycle"]}


# ------------------------------------------
# Suites
# ------------------------------------------

def test_dm_suite_on_a_long_vector(s4):
    summary = verify_suite(SuiteName.DM, systems=[("S4", s4)], threads=1)
    assert [row.check_id for row in summary.rows] == [
        "S4/dimensions", "S4/interpolation", "S4/annihilation", "S4/convolution-into-d", "S4/twisted-kernel",
        "S4/components",
    ]
    assert summary.all_passed, [row.detail for row in summary.rows if not row.verdict]
    assert summary.exit_code() == 0
    assert summary.rows[0].detail["delta_set"] == 2


def test_partition_suite_on_the_hat(s2):
    tunables = {"oracle_radius": 3, "box_radius": 2, "oracle_samples": 5}
    summary = verify_suite(SuiteName.PARTITION, systems=[("S2", s2)], tunables=tunables, threads=2)
    ids = [row.check_id for row in summary.rows]
    assert "S2/figure-profile" in ids
    assert "S2/brion-vergne" in ids
    assert summary.all_passed, [row.detail for row in summary.rows if not row.verdict]


def test_partition_suite_skips_cone_checks_for_non_pointed_lists():
    summary = verify_suite(SuiteName.PARTITION, systems=[("B", WeightList.of([1, -1]))],
                           tunables={"oracle_samples": 5}, threads=1)
    ids = [row.check_id for row in summary.rows]
    assert "B/partition-oracle" not in ids
    assert "B/polarized-convolution" in ids


def test_inversion_suite_on_the_hexagon_system(u2):
    summary = verify_suite(SuiteName.INVERSION, systems=[("U2", u2)],
                           tunables={"random_trials": 1, "unimodular_trials": 1, "box_radius": 1}, threads=2)
    assert summary.rows
    assert summary.all_passed, [row.detail for row in summary.rows if not row.verdict]


def test_index_suite_on_the_unit_interval(s1):
    summary = verify_suite(SuiteName.INDEX, systems=[("S1", s1)], tunables={"index_radius": 2}, threads=1)
    ids = [row.check_id for row in summary.rows]
    assert "S1/atiyah-formulas" in ids
    assert "S1/bott-delta" in ids
    assert summary.all_passed, [row.detail for row in summary.rows if not row.verdict]


# ------------------------------------------
# Verify defaults
# ------------------------------------------

def test_verify_defaults_cover_the_acceptance_scale():
    tunables = command_defaults.get_defaults(CommandName.VERIFY)
    assert tunables["box_radius"] == 5
    assert tunables["random_radius"] == 3
    assert tunables["unimodular_trials"] == 10
    assert tunables["random_trials"] == 5
    assert tunables["vertex_sum_radius"] == 6


def test_random_points_stay_inside_the_open_window(u2):
    checks = SystemChecks("U2", u2, command_defaults.get_defaults(CommandName.VERIFY))
    window = Window.cube(2, -1, 3)
    for point in checks._random_points(window, 200, random.Random(7)):
        assert window.contains(point, strict=True)


@pytest.mark.parametrize("name", ["S1", "S2", "S3", "S4", "S5", "U2", "N2"])
def test_spline_oracle_with_the_verify_defaults(name):
    entry = system_catalog.get_system(name)
    checks = SystemChecks(name, entry.weights, command_defaults.get_defaults(CommandName.VERIFY))
    verdict, detail = checks._spline_oracle()
    assert verdict, detail
    assert detail["points"] > 0


@pytest.mark.slow
@pytest.mark.parametrize("suite", CONCRETE_SUITES)
def test_catalog_suites_pass_with_the_verify_defaults(suite):
    summary = verify_suite(suite, threads=2)
    assert {row.system for row in summary.rows} == {entry.name for entry in system_catalog.systems_for(suite)}
    assert summary.all_passed, [(row.check_id, row.detail) for row in summary.rows if not row.verdict]
