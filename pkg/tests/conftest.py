import random
from fractions import Fraction

import pytest

from gptlab.geometry import VPolytope, reduce_to_vertices
from gptlab.models import nosignaling_2222, polygon, simplex_model, square_pyramid


def random_fraction(rng: random.Random, span: int = 6, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_vector(rng: random.Random, dim: int, span: int = 6, den: int = 4):
    return tuple(random_fraction(rng, span, den) for _ in range(dim))


def random_vpolytope(
    rng: random.Random, max_dim: int = 4, max_vertices: int = 8, min_dim: int = 1
) -> VPolytope:
    """Seeded random rational polytope with dimension at least min_dim."""
    while True:
        dim = rng.randint(max(1, min_dim), max_dim)
        count = rng.randint(min_dim + 1, max_vertices)
        points = [random_vector(rng, dim) for _ in range(count)]
        poly = reduce_to_vertices(points)
        from gptlab.geometry import dimension

        if dimension(poly) >= min_dim:
            return poly


@pytest.fixture(scope="session")
def square():
    return polygon(4)


@pytest.fixture(scope="session")
def pentagon():
    return polygon(5)


@pytest.fixture(scope="session")
def trit():
    return simplex_model(3)


@pytest.fixture(scope="session")
def pyramid():
    return square_pyramid()


@pytest.fixture(scope="session")
def nosignaling():
    return nosignaling_2222()


def zoo_small():
    """The models every sweep-style property test runs over."""
    return [
        ("polygon3", polygon(3)),
        ("polygon4", polygon(4)),
        ("polygon5", polygon(5)),
        ("polygon6", polygon(6)),
        ("simplex1", simplex_model(1)),
        ("simplex2", simplex_model(2)),
        ("simplex3", simplex_model(3)),
        ("simplex4", simplex_model(4)),
        ("square_pyramid", square_pyramid()),
    ]
