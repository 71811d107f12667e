import json

import pytest

import zonocalc.commands  # noqa: F401  registers the handlers
from zonocalc.command_registry import command_registry
from zonocalc.config.store import SystemCatalogStore, system_catalog
from zonocalc.data.artifacts import ArtifactKind, ArtifactStore
from zonocalc.errors import ConfigError
from zonocalc.lattice.weights import WeightList
from zonocalc.model.defaults import command_defaults
from zonocalc.model.types import CommandName, SuiteName
from zonocalc.utils.json_parser import config_parser
from zonocalc.utils.utils import env_int, slug, str_to_enum


# ------------------------------------------
# System catalog
# ------------------------------------------

def test_catalog_ships_the_test_systems():
    assert set(system_catalog.names()) == {"S1", "S2", "S3", "S4", "S5", "U2", "N2"}
    assert system_catalog.get_system("U2").weights == WeightList.of([(1, 0), (0, 1), (1, 1)])
    assert system_catalog.get_system("missing") is None


def test_unknown_systems_are_config_errors():
    with pytest.raises(ConfigError) as e:
        system_catalog.require_system("X9")
    assert e.value.key == "system"


def test_systems_by_suite():
    assert {entry.name for entry in system_catalog.systems_for(SuiteName.DM)} == {"S1", "S2", "S4", "U2", "N2"}
    assert len(system_catalog.systems_for(SuiteName.ALL)) == 7


def test_catalog_is_a_singleton():
    assert SystemCatalogStore() is system_catalog


# ------------------------------------------
# Run configurations
# ------------------------------------------

def test_inline_system():
    config = config_parser.parse(json.dumps({"system": {"dim": 2, "weights": [[1, 0], [0, 1]]}, "command": "invert"}))
    assert isinstance(config.system, WeightList)
    assert config.command == CommandName.INVERT
    assert config.suite == SuiteName.ALL


def test_catalog_reference_and_data():
    config = config_parser.parse('{"system": "S4", "K": [{"lambda": [0], "value": "1/2"}], "box": [[0, 6]]}')
    assert config.system == "S4"
    assert config.box == [[0, 6]]


@pytest.mark.parametrize("text", ["", "   \n"])
def test_empty_configs(text):
    with pytest.raises(ConfigError):
        config_parser.parse(text)


def test_malformed_json_reports_the_line():
    with pytest.raises(ConfigError) as e:
        config_parser.parse('{\n  "system": "S1",\n  "box": [[0, 1]\n}')
    assert e.value.line == 4


def test_unknown_keys_are_rejected():
    with pytest.raises(ConfigError) as e:
        config_parser.parse('{\n  "system": "S1",\n  "radius": 3\n}')
    assert e.value.key == "radius"
    assert e.value.line == 3


def test_box_sides_must_be_pairs():
    with pytest.raises(ConfigError) as e:
        config_parser.parse('{"system": "S1",\n "box": [[0, 1, 2]]}')
    assert e.value.key.startswith("box")
    assert e.value.line == 2


def test_top_level_must_be_an_object():
    with pytest.raises(ConfigError):
        config_parser.parse("[1, 2]")


def test_missing_files(tmp_path):
    with pytest.raises(ConfigError):
        config_parser.parse_file(str(tmp_path / "absent.json"))


def test_parse_file(write_config):
    path = write_config({"system": "U2", "face": ["1", "-1/2"]})
    assert config_parser.parse_file(path).face == ["1", "-1/2"]


# ------------------------------------------
# Defaults and helpers
# ------------------------------------------

def test_command_defaults():
    assert command_defaults.get_defaults(CommandName.PARTITION)["box_radius"] == 6
    assert command_defaults.get_defaults("sample")["emit_grid"] == 4
    assert command_defaults.get_defaults("nonsense") is command_defaults.DEFAULT_TUNABLES
    assert command_defaults.get_defaults(CommandName.DM_BASIS)["grid_dilation"] == 2


def test_enum_lookup(caplog):
    assert str_to_enum(SuiteName, "dm") == SuiteName.DM
    assert str_to_enum(CommandName, " DM_BASIS ") == CommandName.DM_BASIS
    assert str_to_enum(CommandName, CommandName.INVERT) is CommandName.INVERT
    assert str_to_enum(SuiteName, "nope") is None
    assert "inversion, partition, dm, index, all" in caplog.text
    assert command_defaults.get_defaults("Brion_Vergne")["box_radius"] == 6


def test_helpers(monkeypatch):
    monkeypatch.setenv("ZONOCALC_TEST_INT", "7")
    assert env_int("ZONOCALC_TEST_INT", 1) == 7
    monkeypatch.setenv("ZONOCALC_TEST_INT", "seven")
    assert env_int("ZONOCALC_TEST_INT", 1) == 1
    assert slug("invert U2/[1, 1]") == "invert_U2__1__1"
    assert slug(None) == "run"


def test_every_command_has_a_handler():
    assert set(command_registry.names()) == {c.value for c in CommandName}
    assert command_registry.get_handler("invert") is command_registry.get_handler(CommandName.INVERT)
    assert command_registry.get_handler("nonsense") is None


# ------------------------------------------
# Artifacts
# ------------------------------------------

def test_artifact_store(tmp_path):
    store = ArtifactStore(str(tmp_path / "out"))
    path = store.write_json(ArtifactKind.REPORT, "box-S2", {"b": 1, "a": [1, 2]})
    assert path.name == "report-box-S2.json"
    assert store.read_json(ArtifactKind.REPORT, "box-S2") == {"a": [1, 2], "b": 1}
    assert store.read_json(ArtifactKind.REPORT, "missing") is None
    csv_path = store.write_csv(ArtifactKind.TABLE, "p", ["l1", "value"], [[0, "1"], [1, "1/2"]])
    assert csv_path.read_text() == "l1,value\n0,1\n1,1/2\n"
    assert store.written == [path, csv_path]


def test_json_artifacts_are_reproducible(tmp_path):
    store = ArtifactStore(str(tmp_path))
    first = store.write_json(ArtifactKind.SUMMARY, "s", {"z": 1, "y": {"b": 2, "a": 1}}).read_text()
    second = store.write_json(ArtifactKind.SUMMARY, "s", {"y": {"a": 1, "b": 2}, "z": 1}).read_text()
    assert first == second
