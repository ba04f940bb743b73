import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cycle_census import catalog


@pytest.fixture(scope="session")
def m11():
    return catalog.load_named("m11")


@pytest.fixture(scope="session")
def psl2_11():
    return catalog.load_named("psl2_11")


@pytest.fixture(scope="session")
def pgl32():
    return catalog.pgl(3, 2)


@pytest.fixture(scope="session")
def c3wrc3():
    return catalog.wreath_imprimitive(catalog.cyclic_regular(3),
                                      catalog.cyclic_regular(3))


@pytest.fixture(scope="session")
def sharp1():
    return catalog.sharpness_group(1)
