import pytest

from groupcodes import catalog


@pytest.fixture(scope="session")
def rate13():
    """Width-3 rate-1/3 code over Z4, N=12, margin 3."""
    return catalog.rate_one_third_window(12)


@pytest.fixture(scope="session")
def repetition6():
    """Repetition code over Z4, N=6, margin 2."""
    return catalog.repetition_window(6)


@pytest.fixture(scope="session")
def pairs8():
    """Autonomous period-2 pair code over Z4, N=8, margin 2."""
    return catalog.periodic_pairs_window(8)
