import pytest
from hypothesis import settings, HealthCheck

import oracles
from orderlab.posets import make_poset

settings.register_profile(
    "ci",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("ci")

CORPUS_SEED = 20240801


@pytest.fixture(scope="session")
def small_corpus_raw():
    """(labels, relations) for every poset of size <= 5 up to isomorphism."""
    return oracles.enumerate_posets_upto(5)


@pytest.fixture(scope="session")
def small_corpus(small_corpus_raw):
    return [
        make_poset(labels, pairs, name="iso%d" % k)
        for k, (labels, pairs) in enumerate(small_corpus_raw)
    ]


@pytest.fixture(scope="session")
def random_corpus_raw():
    return oracles.random_corpus(CORPUS_SEED, 200)


@pytest.fixture(scope="session")
def random_corpus(random_corpus_raw):
    return [
        make_poset(labels, pairs, name="rnd%d" % k)
        for k, (labels, pairs) in enumerate(random_corpus_raw)
    ]
