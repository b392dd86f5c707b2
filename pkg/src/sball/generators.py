"""Generators for test bodies and seed point sets."""

import math

import numpy as np
from scipy.optimize import bisect

from .body import make_body
from .completeness import check_delta, delta_hull
from .core import HALF_PI, Ball, frame_point, normalize
from .errors import EvenK, GeometryError, SamplingStalled

NORTH = np.array([0.0, 0.0, 1.0])


def reuleaux_vertices(k, delta, pole=NORTH):
    """Vertices of the regular k-gon about ``pole`` whose long diagonals are ``delta``."""
    if k < 3 or k % 2 == 0:
        raise EvenK(f"Reuleaux polygons need an odd k >= 3, got {k}")
    check_delta(delta)
    pole = normalize(pole)
    m = (k - 1) // 2
    cos_turn = math.cos(2.0 * math.pi * m / k)

    def diag(r):
        # law of cosines for two points at colatitude r
        c = math.cos(r) ** 2 + math.sin(r) ** 2 * cos_turn
        return math.acos(max(-1.0, min(1.0, c))) - delta

    r = bisect(diag, 1e-15, HALF_PI, xtol=1e-12)
    lon = 2.0 * math.pi * np.arange(k) / k
    return normalize(frame_point(pole, np.full(k, r), lon))


def reuleaux_odd_gon(k, delta, pole=NORTH, tolerances=None):
    """Spherical Reuleaux k-gon of width ``delta`` centered at ``pole``."""
    return delta_hull(reuleaux_vertices(k, delta, pole), delta, tolerances)


def cap_body(radius, pole=NORTH, tolerances=None, delta=None):
    return make_body([Ball(normalize(pole), radius)], tolerances, delta=delta)


def lens(delta, pole=NORTH, tolerances=None):
    """Intersection of two delta-balls whose centers are delta apart."""
    check_delta(delta)
    a = normalize(frame_point(pole, 0.5 * delta, 0.0))
    b = normalize(frame_point(pole, 0.5 * delta, math.pi))
    return make_body([Ball(a, delta), Ball(b, delta)], tolerances, delta=delta)


def geodesic_polygon(vertices, tolerances=None, delta=None):
    """Convex geodesic polygon as an intersection of hemispheres."""
    V = normalize(np.asarray(vertices, dtype=float))
    inside = normalize(V.sum(axis=0))
    balls = []
    for i in range(len(V)):
        n = normalize(np.cross(V[i], V[(i + 1) % len(V)]))
        if n @ inside < 0:
            n = -n
        balls.append(Ball(n, HALF_PI))
    return make_body(balls, tolerances, delta=delta)


def geodesic_triangle(side, pole=NORTH, tolerances=None):
    """Equilateral geodesic triangle with the given side length."""
    r = math.asin(math.sqrt(2.0 * (1.0 - math.cos(side)) / 3.0))
    lon = 2.0 * math.pi * np.arange(3) / 3
    V = normalize(frame_point(pole, np.full(3, r), lon))
    return geodesic_polygon(V, tolerances, delta=side)


def random_cap_points(n, cap_pole, cap_radius, max_diam, rng_seed, budget=10000):
    """``n`` uniform points of a cap with pairwise distances <= ``max_diam``.

    Rejection sampling; gives up with :class:`SamplingStalled` after
    ``budget`` candidates per requested point.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not (0.0 < cap_radius < HALF_PI):
        raise ValueError("cap radius must lie in (0, pi/2)")
    check_delta(max_diam)
    rng = np.random.default_rng(rng_seed)
    pole = normalize(cap_pole)
    zmin = math.cos(cap_radius)
    cosd = math.cos(max_diam)
    pts = []
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > budget * n:
            raise SamplingStalled(f"only {len(pts)} of {n} points after {tries - 1} draws")
        z = rng.uniform(zmin, 1.0)
        x = normalize(frame_point(pole, math.acos(z), rng.uniform(0.0, 2.0 * math.pi)))
        if all(x @ p >= cosd for p in pts):
            pts.append(x)
    return np.array(pts)


def random_ball_polygon(rng, pole=NORTH, n_balls=None, tolerances=None):
    """Random ball polygon containing ``pole`` in its interior."""
    for _ in range(100):
        n = n_balls or int(rng.integers(1, 8))
        colat = rng.uniform(0.0, 0.6, n)
        lon = rng.uniform(0.0, 2.0 * math.pi, n)
        rad = np.minimum(colat + rng.uniform(0.15, 0.9, n), HALF_PI)
        C = normalize(frame_point(pole, colat, lon))
        try:
            return make_body([Ball(c, r) for c, r in zip(C, rad)], tolerances)
        except GeometryError:
            continue
    raise SamplingStalled("could not draw a valid ball polygon")


__all__ = [
    "NORTH", "reuleaux_vertices", "reuleaux_odd_gon", "cap_body", "lens",
    "geodesic_polygon", "geodesic_triangle", "random_cap_points", "random_ball_polygon",
]
