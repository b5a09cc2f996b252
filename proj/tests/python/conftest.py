import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture
def configs():
    return ROOT / "configs"


@pytest.fixture
def schemas():
    return ROOT / "schemas"
