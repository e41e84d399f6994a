import pytest

from clusterbc.cli import load_plain, load_theta
from clusterbc.laurent import parse


@pytest.fixture
def fig_exfpoly():
    return load_theta("fig-exfpoly", None)


@pytest.fixture
def fig_matrix():
    return load_theta("matrix-to-triang", None)


@pytest.fixture
def hexagon():
    return load_plain("hexagon", None)


@pytest.fixture
def ex_quiver():
    return load_theta("ex-quiver", None)


def P(text, rank=3):
    return parse(text, rank)
