import json

import pytest

from zonocalc.lattice.weights import WeightList


@pytest.fixture
def s1():
    return WeightList.of([1])


@pytest.fixture
def s2():
    return WeightList.of([1, 1])


@pytest.fixture
def s4():
    return WeightList.of([2])


@pytest.fixture
def u2():
    return WeightList.of([(1, 0), (0, 1), (1, 1)])


@pytest.fixture
def n2():
    return WeightList.of([(1, 0), (0, 1), (1, 1), (1, -1)])


@pytest.fixture
def write_config(tmp_path):
    def write(payload, name="run.json"):
        path = tmp_path / name
        path.write_text(json.dumps(payload, indent=2))
        return str(path)
    return write
