import pytest

from f4gkm.gkm.functions import builtins
from f4gkm.gkm.graph import gkm_graph
from f4gkm.weyl import f4_weyl


@pytest.fixture(scope="session")
def weyl():
    return f4_weyl()


@pytest.fixture(scope="session")
def graph():
    return gkm_graph()


@pytest.fixture(scope="session")
def B():
    return builtins()
