import pytest

from halfcube import ChainComplex, build_matching, enumerate_faces


@pytest.fixture(scope="session")
def tables():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = enumerate_faces(n)
        return cache[n]

    return get


@pytest.fixture(scope="session")
def complexes(tables):
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = ChainComplex(tables(n))
        return cache[n]

    return get


@pytest.fixture(scope="session")
def matchings(tables):
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = build_matching(tables(n))
        return cache[n]

    return get
