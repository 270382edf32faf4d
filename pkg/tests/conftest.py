import pytest

from oalab import catalog


@pytest.fixture(scope="session")
def corpus():
    return catalog.corpus()


@pytest.fixture(scope="session")
def small_corpus():
    return catalog.small_corpus()
