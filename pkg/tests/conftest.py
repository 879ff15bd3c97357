import random
from fractions import Fraction

import pytest

from segrezeta.polyring import HomogeneousIdeal

CORPUS_SEED = 20261019
CORPUS_SIZE = 60


def random_monomial_ideal(rng, max_vars=4, max_gens=4, max_degree=5):
    nvars = rng.randint(2, max_vars)
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        exp = [0] * nvars
        for _ in range(rng.randint(1, max_degree)):
            exp[rng.randrange(nvars)] += 1
        gens.append(tuple(exp))
    return HomogeneousIdeal.from_monomials(gens)


def monomial_corpus(size=CORPUS_SIZE, seed=CORPUS_SEED):
    rng = random.Random(seed)
    return [random_monomial_ideal(rng) for _ in range(size)]


@pytest.fixture(scope="session")
def corpus():
    return monomial_corpus()


def mono(*exps):
    return HomogeneousIdeal.from_monomials(exps)


def F(x):
    return Fraction(x)
