import pytest

from doublelift.examples import fixture_corpus
from doublelift.lift import lift_data


@pytest.fixture(scope="session")
def corpus():
    return fixture_corpus()


@pytest.fixture(scope="session")
def corpus_lifts(corpus):
    return [(tag, lift_data(dec, phi)) for tag, dec, phi in corpus]
