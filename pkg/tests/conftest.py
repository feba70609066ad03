import pytest

from moufang3 import SymbolicLoop, default_loop


@pytest.fixture(scope="session")
def loop():
    return default_loop()


@pytest.fixture(scope="session")
def sym(loop):
    return SymbolicLoop(loop)
