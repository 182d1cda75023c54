import pytest

from leechpart import build_golay, enumerate_minimal_vectors, section


@pytest.fixture(scope="session")
def code():
    return build_golay()


@pytest.fixture(scope="session")
def m24(code):
    return enumerate_minimal_vectors(code)


@pytest.fixture(scope="session")
def sections(m24):
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = section(m24, n)
        return cache[n]

    return get
