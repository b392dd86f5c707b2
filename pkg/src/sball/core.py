"""
Primitives on the unit sphere S^2.

Points are plain ``numpy`` arrays of shape ``(3,)`` (or ``(n, 3)`` for
batches) holding unit vectors of E^3.  Distances are in radians.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateArc, IdenticalCircles

HALF_PI = 0.5 * math.pi
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Tolerances:
    """Tolerance policy shared by all geometric routines.

    :attrib eps_alg: algebraic identity tolerance (norms, residuals).
    :attrib eps_geo: geometric predicate tolerance [rad].
    :attrib h: sampling resolution [rad].
    """

    eps_alg: float = 1e-12
    eps_geo: float = 1e-9
    h: float = 0.01

    def __post_init__(self):
        if not (0.0 < self.eps_alg <= self.eps_geo <= self.h):
            raise ValueError(
                "tolerances must satisfy 0 < eps_alg <= eps_geo <= h, got "
                f"{self.eps_alg}, {self.eps_geo}, {self.h}")


DEFAULT_TOL = Tolerances()


def normalize(v):
    """Scale ``v`` (shape (3,) or (n, 3)) to unit length along the last axis."""
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v, axis=-1, keepdims=True)
    if np.any(n == 0.0):
        raise ValueError("cannot normalize a zero vector")
    return v / n


def as_point(v, eps=DEFAULT_TOL.eps_alg):
    """Return ``v`` as a float array after checking it is a unit vector."""
    p = np.asarray(v, dtype=float)
    if p.shape[-1] != 3:
        raise ValueError(f"sphere points need 3 coordinates, got shape {p.shape}")
    err = np.abs(np.linalg.norm(p, axis=-1) - 1.0)
    if np.any(err > eps):
        raise ValueError(f"not a unit vector (norm error {np.max(err):.3g})")
    return p


def tangent_frame(c):
    """Right-handed orthonormal frame ``(e1, e2)`` with ``e1 x e2 = c``.

    Deterministic in ``c``; increasing angle in the frame runs
    counterclockwise about ``c`` seen from outside the sphere.
    """
    c = np.asarray(c, dtype=float)
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(c)))] = 1.0
    e1 = np.cross(c, axis)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(c, e1)
    return e1, e2


def frame_point(pole, colatitude, longitude):
    """Point(s) at the given colatitude/longitude in the frame of ``pole``."""
    e1, e2 = tangent_frame(pole)
    colatitude = np.asarray(colatitude, dtype=float)
    longitude = np.asarray(longitude, dtype=float)
    s = np.sin(colatitude)[..., None]
    return (np.cos(colatitude)[..., None] * np.asarray(pole, dtype=float)
            + s * np.cos(longitude)[..., None] * e1
            + s * np.sin(longitude)[..., None] * e2)


def distance(a, b):
    """Spherical distance(s) between points, broadcasting over leading axes."""
    d = np.sum(np.asarray(a, dtype=float) * np.asarray(b, dtype=float), axis=-1)
    out = np.arccos(np.clip(d, -1.0, 1.0))
    return float(out) if np.ndim(out) == 0 else out


def antipode(a):
    return -np.asarray(a, dtype=float)


def is_degenerate_pair(a, b, tol=DEFAULT_TOL):
    """True if ``a`` and ``b`` are equal or antipodal within ``eps_geo``."""
    d = distance(a, b)
    return d < tol.eps_geo or d > math.pi - tol.eps_geo


def geodesic_point(a, b, t, tol=DEFAULT_TOL):
    """Point at fraction ``t`` of the arc ``ab`` (``t=0`` gives ``a``)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if is_degenerate_pair(a, b, tol):
        raise DegenerateArc("arc endpoints are equal or antipodal")
    theta = distance(a, b)
    s = math.sin(theta)
    p = (math.sin((1.0 - t) * theta) * a + math.sin(t * theta) * b) / s
    return p / np.linalg.norm(p)


@dataclass(frozen=True, eq=False)
class Ball:
    """Spherical cap ``{x : distance(x, center) <= radius}``.

    A radius of pi/2 encodes a hemisphere.
    """

    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = np.array(as_point(self.center, eps=1e-9), dtype=float)
        n = np.linalg.norm(c)
        if abs(n - 1.0) > 1e-15:
            c = c / n
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        r = float(self.radius)
        if not (0.0 < r <= HALF_PI):
            raise ValueError(f"ball radius must lie in (0, pi/2], got {r}")
        object.__setattr__(self, "radius", r)

    def __repr__(self):
        x, y, z = self.center
        return f"Ball(center=({x:.6g}, {y:.6g}, {z:.6g}), radius={self.radius:.6g})"

    def margin(self, x):
        """Signed margin radius - distance(x, center); >= 0 inside."""
        return self.radius - distance(x, self.center)


def _meet(c1, r1, c2, r2, eps_geo):
    # Broadcasting core of circle_intersections.  Returns (points, mask,
    # identical) with points of shape (..., 2, 3).
    c1 = np.asarray(c1, dtype=float)
    c2 = np.asarray(c2, dtype=float)
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    g = np.clip(np.sum(c1 * c2, axis=-1), -1.0, 1.0)
    d = np.arccos(g)
    same = d < eps_geo
    opposite = d > math.pi - eps_geo
    identical = (same & (np.abs(r1 - r2) <= eps_geo)) | (
        opposite & (np.abs(r1 + r2 - math.pi) <= eps_geo))
    generic = ~(same | opposite)

    outer = r1 + r2
    inner = np.abs(r1 - r2)
    tangent = generic & ((np.abs(d - outer) <= eps_geo) | (np.abs(d - inner) <= eps_geo))
    crossing = generic & ~tangent & (d < outer) & (d > inner)

    s2 = np.where(generic, 1.0 - g * g, 1.0)
    k1 = np.cos(r1)
    k2 = np.cos(r2)
    alpha = (k1 - g * k2) / s2
    beta = (k2 - g * k1) / s2
    gamma2 = (1.0 - (alpha * k1 + beta * k2)) / s2
    gamma = np.sqrt(np.where(crossing, np.maximum(gamma2, 0.0), 0.0))
    n = np.cross(c1, c2)
    base = alpha[..., None] * c1 + beta[..., None] * c2
    p = base + gamma[..., None] * n
    q = base - gamma[..., None] * n
    pts = np.stack([p, q], axis=-2)
    norms = np.linalg.norm(pts, axis=-1, keepdims=True)
    pts = pts / np.where(norms > 0, norms, 1.0)
    mask = np.stack([crossing | tangent, crossing], axis=-1)
    return pts, mask, identical


def circle_intersections(b1, b2, tol=DEFAULT_TOL):
    """Intersection points of the boundary circles of two balls.

    Returns a list with 0, 1 (tangency within ``eps_geo``) or 2 points.
    Raises :class:`IdenticalCircles` if both circles coincide.
    """
    pts, mask, identical = _meet(b1.center, b1.radius, b2.center, b2.radius, tol.eps_geo)
    if identical:
        raise IdenticalCircles("boundary circles coincide")
    return [pts[i] for i in range(2) if mask[i]]
