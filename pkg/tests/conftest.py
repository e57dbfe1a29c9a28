from functools import lru_cache

import pytest

from brauerloop import joseph, qkz


@lru_cache(maxsize=None)
def psi_table(N: int) -> qkz.PsiTable:
    return qkz.solve(N, checks=())


@lru_cache(maxsize=None)
def melnikov_table(N: int) -> joseph.JTable:
    return joseph.melnikov_solve(N)


@pytest.fixture(scope="session")
def psi4():
    return psi_table(4)


@pytest.fixture(scope="session")
def psi6():
    return psi_table(6)


@pytest.fixture(scope="session")
def mel4():
    return melnikov_table(4)


@pytest.fixture(scope="session")
def mel6():
    return melnikov_table(6)
