"""Session-wide fixtures for the expensive shared objects.

The type systems and coefficient tables take seconds to minutes to
build, so everything downstream shares one instance per session.  Only
the fixtures a test file actually requests get built.
"""

import pytest

from toto231.typesystem import build_type_system
from toto231.series import compute_coefficients


@pytest.fixture(scope="session")
def ts1():
    return build_type_system(1)


@pytest.fixture(scope="session")
def ts2():
    return build_type_system(2)


@pytest.fixture(scope="session")
def ct1(ts1):
    # exact lanes to the full depth the asymptotic criteria use
    return compute_coefficients(ts1, 4000)


@pytest.fixture(scope="session")
def ct2(ts2):
    # exact lanes to the depth the integer identities are checked at
    return compute_coefficients(ts2, 2000)


@pytest.fixture(scope="session")
def ct2f(ts2):
    # scaled float lane only, deep enough for the asymptotic estimators
    return compute_coefficients(ts2, 4000, exact=False)
