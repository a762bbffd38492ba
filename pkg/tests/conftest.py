import random
from fractions import Fraction

import pytest

from ultranorm.normspace import DiagonalNorm
from ultranorm.oracles import random_norm
from ultranorm.valfield import FieldSpec

Q2 = FieldSpec.padic(2)


def unit(field=Q2, n=2, mode="norm"):
    return DiagonalNorm.diagonal(field, [0] * n, mode)


def random_vectors(rng, n, count, lo=-9, hi=9):
    out = []
    while len(out) < count:
        v = tuple(Fraction(rng.randint(lo, hi)) for _ in range(n))
        if any(v):
            out.append(v)
    return out


def random_family(seed, count, modes, n=None, field=None, max_dim=4, primes=(2, 3, 5)):
    """``count`` random norms of the given modes, sharing field and dimension."""
    rng = random.Random(seed)
    n = n or rng.randint(1, max_dim)
    field = field or FieldSpec.padic(rng.choice(primes))
    return [random_norm(rng, field, n, 4, modes[i % len(modes)]) for i in range(count)]


@pytest.fixture
def q2():
    return Q2


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
