# Shared fixtures

"""Module-scoped fields, catalogs and tables reused across test modules."""

import pytest

from aglmobius.agl_mobius import mu_table_closed, mu_table_oracle
from aglmobius.gf import build_field
from aglmobius.subgroups import enumerate_all


@pytest.fixture(scope="session")
def f4():
    return build_field(2, 2)


@pytest.fixture(scope="session")
def f9():
    return build_field(3, 2)


@pytest.fixture(scope="session")
def f16():
    return build_field(2, 4)


@pytest.fixture(scope="session")
def catalog4(f4):
    return enumerate_all(f4)


@pytest.fixture(scope="session")
def table4(catalog4):
    return mu_table_closed(catalog4)


@pytest.fixture(scope="session")
def oracle4(catalog4):
    return mu_table_oracle(catalog4)
