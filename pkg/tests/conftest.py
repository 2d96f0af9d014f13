"""Test configuration and fixtures for quatlat."""

import pytest

from quatlat.corpus import Corpus
from quatlat.exact import Poly
from quatlat.numfield import RATIONALS
from quatlat.relext import verify_embedding
from quatlat.utils import parse_poly, setup_logging


@pytest.fixture(scope="session")
def corpus():
    """The bundled corpus, shared so that prime decompositions stay cached."""
    return Corpus()


@pytest.fixture(scope="session")
def golden(corpus):
    return corpus.field("golden")


@pytest.fixture(scope="session")
def gaussian(corpus):
    return corpus.field("gaussian")


@pytest.fixture(scope="session")
def cyclic_cubic(corpus):
    return corpus.field("cyclic-cubic")


@pytest.fixture(scope="session")
def cyclic_quintic(corpus):
    return corpus.field("cyclic-quintic")


@pytest.fixture(scope="session")
def pure_cubic(corpus):
    return corpus.field("pure-cubic")


@pytest.fixture(scope="session")
def quartic(corpus):
    return corpus.field("quartic-cyclic")


@pytest.fixture(scope="session")
def a5_sextic(corpus):
    return corpus.field("a5-sextic")


@pytest.fixture(scope="session")
def sqrt5(corpus):
    return corpus.field("sqrt5")


@pytest.fixture
def from_rationals():
    """Build the structure embedding Q -> K."""
    def build(K):
        return verify_embedding(RATIONALS, K, Poly())
    return build


@pytest.fixture
def cubic_rotation():
    """The automorphism t -> 2 - t^2 of Q[t]/(t^3 - 3t - 1)."""
    return parse_poly("2 - t^2")


@pytest.fixture
def mock_config():
    """Mock configuration for testing."""
    return {
        "corpus_dir": None,
        "prime_bound": 100,
        "seed": 0,
        "refine_cap": 4096,
        "workers": 1,
    }


# Setup logging for tests
setup_logging("DEBUG")
