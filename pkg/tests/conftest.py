import random

import pytest

from logsymp.algebra import Chart
from logsymp.fixtures import FIXTURES
from logsymp.poisson.structure import make_poisson


def structure(name):
    return make_poisson(*FIXTURES[name]())


def divisor_chart(d, m):
    names = [f"x{i}" for i in range(1, d + 1)]
    return Chart(names, names[:m])


@pytest.fixture
def rng():
    return random.Random(20261018)
