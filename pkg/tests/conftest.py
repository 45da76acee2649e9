import random
from fractions import Fraction

import pytest

from qorbits.scalars import at_q
from qorbits.hecke import standard_hecke


@pytest.fixture(scope="session")
def h2():
    """Rank-2 standard symmetry over symbolic q."""
    return standard_hecke(2)


@pytest.fixture(scope="session")
def h3():
    """Rank-3 standard symmetry over symbolic q."""
    return standard_hecke(3)


@pytest.fixture(scope="session")
def h2_sampled():
    return standard_hecke(2, at_q(Fraction(3, 5)))


@pytest.fixture()
def rng():
    return random.Random(20240817)
