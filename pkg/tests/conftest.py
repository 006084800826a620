import numpy as np
import pytest

import setcalc as sc


@pytest.fixture
def demo_polygon():
    """The seven-vertex demo polygon used across the docs."""
    return sc.VPolygon(
        [[-3, 0.6], [-2, -2], [0, -2], [1, -1], [2, 1], [0, 2], [-0.8, 1.8]]
    )


@pytest.fixture
def state_matrix():
    return np.array([[0.95105652, 0.02459079], [-3.88322208, 0.95105652]])


@pytest.fixture
def initial_tree(state_matrix):
    """CH(X0, Phi*X0 + E) with the standard reach-step numbers."""
    X0 = sc.BallInf([1.0, 0.0], 0.1)
    E = sc.Hyperrectangle(np.zeros(2), [0.05477208, 0.07676220])
    mapped = sc.make_node("LinearMap", [X0], matrix=state_matrix)
    summed = sc.make_node("MinkowskiSum", [mapped, E])
    return sc.make_node("ConvexHullUnion", [X0, summed])


def random_polygon(rng, scale=3.0, max_points=9):
    k = rng.integers(3, max_points + 1)
    points = rng.uniform(-scale, scale, size=(k, 2))
    poly = sc.VPolygon(points)
    if poly.num_vertices < 3:
        return random_polygon(rng, scale, max_points)
    return poly


def random_zonotope_2d(rng, max_generators=4):
    m = rng.integers(1, max_generators + 1)
    return sc.Zonotope(rng.uniform(-2, 2, 2), rng.uniform(-1.5, 1.5, (2, m)))


def random_box_2d(rng):
    return sc.Hyperrectangle(rng.uniform(-2, 2, 2), rng.uniform(0.1, 2.0, 2))


def random_unit_direction(rng, n=2):
    while True:
        d = rng.normal(size=n)
        norm = np.linalg.norm(d)
        if norm > 1e-6:
            return d / norm
