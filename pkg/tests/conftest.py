import pathlib

import pytest

import helpers

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent


@pytest.fixture
def m0():
    return helpers.m0_frame()


@pytest.fixture
def fx2():
    return helpers.fx2_frame()


@pytest.fixture
def m0_path():
    return str(REPO_ROOT / "fixtures" / "m0.json")


@pytest.fixture
def fx2_path():
    return str(REPO_ROOT / "fixtures" / "fx2.json")
