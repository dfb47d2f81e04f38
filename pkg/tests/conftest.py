import pytest

from excisionlab.fileio import demo_corpus


@pytest.fixture(scope="session")
def corpus():
    return demo_corpus()


@pytest.fixture(scope="session")
def t2(corpus):
    return next(d for d in corpus if d.name == "t2-corner")


@pytest.fixture(scope="session")
def matrix2(corpus):
    return next(d for d in corpus if d.name == "matrix2")


@pytest.fixture(scope="session")
def direct_sum(corpus):
    return next(d for d in corpus if d.name == "direct-sum")
