"""Shared fixtures: canonical polytopes and independent closed-form oracles."""

import cmath
import math
import random
from fractions import Fraction
from itertools import permutations

import pytest

from polyspectral import Frequency, Simplex, make_polytope


def frac_pts(*pts):
    return tuple(tuple(Fraction(c) for c in p) for p in pts)


def poly_from_triangles(*triangles):
    return make_polytope([Simplex(frac_pts(*t)) for t in triangles])


def cube_polytope(d):
    """Unit cube [0,1]^d split into d! simplices along coordinate orderings."""
    simplices = []
    for perm in permutations(range(d)):
        v = [Fraction(0)] * d
        verts = [tuple(v)]
        for i in perm:
            v[i] = Fraction(1)
            verts.append(tuple(v))
        simplices.append(Simplex(tuple(verts)))
    return make_polytope(simplices)


def square_polytope(x0=0, y0=0):
    """Unit square with corner (x0, y0), split along the main diagonal."""
    return poly_from_triangles(
        [(x0, y0), (x0 + 1, y0), (x0 + 1, y0 + 1)],
        [(x0, y0), (x0 + 1, y0 + 1), (x0, y0 + 1)],
    )


@pytest.fixture(scope="session")
def triangle():
    return poly_from_triangles([(0, 0), (1, 0), (0, 1)])


@pytest.fixture(scope="session")
def square():
    return cube_polytope(2)


@pytest.fixture(scope="session")
def square_alt():
    """The other diagonal triangulation of the unit square."""
    return poly_from_triangles([(0, 0), (1, 0), (0, 1)], [(1, 0), (1, 1), (0, 1)])


@pytest.fixture(scope="session")
def cube3():
    return cube_polytope(3)


@pytest.fixture(scope="session")
def tromino():
    """L-shaped union of three unit squares (a translational tile)."""
    tris = []
    for x0, y0 in ((0, 0), (1, 0), (0, 1)):
        tris.append([(x0, y0), (x0 + 1, y0), (x0 + 1, y0 + 1)])
        tris.append([(x0, y0), (x0 + 1, y0 + 1), (x0, y0 + 1)])
    return poly_from_triangles(*tris)


@pytest.fixture(scope="session")
def rect31():
    """A 3 x 1 rectangle, same area as the tromino."""
    return poly_from_triangles([(0, 0), (3, 0), (3, 1)], [(0, 0), (3, 1), (0, 1)])


@pytest.fixture(scope="session")
def half_square():
    """A tilted square of area 1/2 (side 1/sqrt(2)), matching the triangle's area."""
    h = Fraction(1, 2)
    return poly_from_triangles([(0, 0), (h, h), (0, 1)], [(0, 0), (0, 1), (-h, h)])


HEXAGON_VERTICES = frac_pts((1, 0), (2, 0), (3, 1), (2, 2), (1, 2), (0, 1))


@pytest.fixture(scope="session")
def hexagon():
    """A centrally symmetric convex hexagon, fanned from one vertex."""
    v = HEXAGON_VERTICES
    return poly_from_triangles(
        [v[0], v[1], v[2]], [v[0], v[2], v[3]], [v[0], v[3], v[4]], [v[0], v[4], v[5]]
    )


# ---------------------------------------------------------------------------
# randomized inputs


def rand_fraction(rng: random.Random, span=8, max_den=6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_simplex(rng: random.Random, d: int) -> Simplex:
    while True:
        verts = tuple(tuple(rand_fraction(rng) for _ in range(d)) for _ in range(d + 1))
        try:
            return Simplex(verts)
        except Exception:
            continue


def random_polytope(rng: random.Random, d: int, max_simplices: int = 4):
    """Union of random simplices, spread apart so interiors stay disjoint."""
    n = rng.randint(1, max_simplices)
    shift = Fraction(20)
    simplices = []
    for i in range(n):
        s = random_simplex(rng, d)
        tau = tuple(shift * i if k == 0 else Fraction(0) for k in range(d))
        simplices.append(s.translate(tau))
    return make_polytope(simplices)


def random_rational_frequency(rng: random.Random, d: int, span=6, max_den=5) -> Frequency:
    while True:
        coords = tuple(
            Fraction(rng.randint(-span, span), rng.randint(1, max_den)) for _ in range(d)
        )
        if any(coords):
            return Frequency.exact_mode(coords)


# ---------------------------------------------------------------------------
# independent closed forms


def interval_factor(x) -> complex:
    """Closed form of the transform of the interval [0, 1] at frequency x."""
    x = float(x)
    if x == 0:
        return complex(1.0)
    return (cmath.exp(-2j * math.pi * x) - 1.0) / (-2j * math.pi * x)


def cube_closed_form(xi) -> complex:
    """Separable closed form for the unit cube [0,1]^d."""
    out = complex(1.0)
    for x in xi:
        out *= interval_factor(x)
    return out
