import os

import pytest

from src.logic import catalog

TABLES_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data', 'tables')


def table_path(name: str) -> str:
    return os.path.join(TABLES_DIR, name)


@pytest.fixture
def left_zero2():
    return catalog.left_zero(2)


@pytest.fixture
def right_zero2():
    return catalog.right_zero(2)


@pytest.fixture
def null2():
    return catalog.null_semigroup(2)


@pytest.fixture
def c3():
    return catalog.cyclic_group(3)


@pytest.fixture
def s3():
    return catalog.symmetric_group_3()


@pytest.fixture
def b2():
    return catalog.brandt_b2()
