import os

import pytest

SRC_DIR = os.path.dirname(os.path.abspath(__file__))


@pytest.fixture(autouse=True, scope="session")
def _run_from_src():
    # the suite is written to run from inside src/ (fixture paths are relative)
    previous = os.getcwd()
    os.chdir(SRC_DIR)
    yield
    os.chdir(previous)
