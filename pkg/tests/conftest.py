import pytest

from idealcalc import config
from idealcalc.corpus import Corpus
from idealcalc.field import Field
from idealcalc.polynomial import PolynomialRing


@pytest.fixture(scope="session")
def corpus():
    return Corpus()


@pytest.fixture(scope="session")
def load(corpus):
    """Corpus ideals by name, cached for the session so Gröbner caches are shared."""
    cache = {}

    def _load(name):
        if name not in cache:
            cache[name] = corpus.ideal(name)
        return cache[name]

    return _load


@pytest.fixture
def F7():
    return Field(7)


@pytest.fixture
def S2():
    return PolynomialRing.standard(2)


@pytest.fixture
def S3():
    return PolynomialRing.standard(3)


@pytest.fixture
def S4():
    return PolynomialRing.standard(4)


@pytest.fixture(autouse=True)
def restore_library_defaults():
    guard, padding = config.DEGREE_GUARD, config.WINDOW_PADDING
    yield
    config.DEGREE_GUARD, config.WINDOW_PADDING = guard, padding
