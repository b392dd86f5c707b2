"""
Completeness of spherical bodies of diameter delta.

A set of diameter delta is complete when adding any outside point raises
its diameter.  Complete sets coincide with their delta-hull, the
intersection of the radius-delta balls centered at their points, which is
why everything here produces and inspects :class:`~sball.body.BallPolygon`
objects.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .body import CircleArc, contains, diameter, farthest_distance, make_body, sample_boundary
from .core import (DEFAULT_TOL, HALF_PI, Ball, circle_intersections, distance, normalize,
                   tangent_frame)
from .errors import (DeltaOutOfRange, DiameterExceeded, EndpointsOutsideBody, EqualEndpoints,
                     NoEnclosingHemisphere, NotOnCircle, SeedDiameterExceeded, SeedOutsideCap)

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def check_delta(delta):
    if not (0.0 < delta < HALF_PI):
        raise DeltaOutOfRange(f"delta must lie in (0, pi/2), got {delta}")


@dataclass
class VerificationReport:
    """Outcome of a sampled predicate.

    Every sample carries a signed margin in radians; the check passes iff
    the worst (smallest) margin is at least ``-tol``.
    """

    check: str
    passed: bool
    tol: float
    witnesses: np.ndarray
    margins: np.ndarray
    info: dict = field(default_factory=dict)

    @classmethod
    def build(cls, check, tol, witnesses, margins, **info):
        witnesses = np.asarray(witnesses, dtype=float).reshape(-1, 3)
        margins = np.asarray(margins, dtype=float).reshape(-1)
        passed = bool(margins.size == 0 or margins.min() >= -tol)
        return cls(check, passed, float(tol), witnesses, margins, info)

    @classmethod
    def merge(cls, check, tol, reports, **info):
        w = np.concatenate([r.witnesses for r in reports]) if reports else np.zeros((0, 3))
        m = np.concatenate([r.margins for r in reports]) if reports else np.zeros(0)
        return cls.build(check, tol, w, m, **info)

    @property
    def n_samples(self):
        return int(self.margins.size)

    @property
    def worst_index(self):
        return int(np.argmin(self.margins)) if self.margins.size else None

    @property
    def worst_margin(self):
        return float(self.margins.min()) if self.margins.size else float("inf")

    @property
    def worst_witness(self):
        k = self.worst_index
        return None if k is None else self.witnesses[k]

    @property
    def worst(self):
        k = self.worst_index
        return None if k is None else (self.witnesses[k], float(self.margins[k]))

    @property
    def violations(self):
        bad = self.margins < -self.tol
        return self.witnesses[bad], self.margins[bad]

    def to_record(self):
        w = self.worst_witness
        rec = {
            "check": self.check,
            "passed": self.passed,
            "tol": self.tol,
            "worst_margin": self.worst_margin if self.margins.size else None,
            "worst_witness": None if w is None else [float(v) for v in w],
            "n_samples": self.n_samples,
        }
        rec.update({k: v for k, v in self.info.items()})
        return rec

    def to_json(self):
        return json.dumps(self.to_record())

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.check}: worst margin {self.worst_margin:+.3e} "
                f"(tol {self.tol:.3g}, {self.n_samples} samples)")


def fibonacci_cap(pole, cap_radius, spacing, offset=0):
    """Fibonacci lattice points in the cap of ``cap_radius`` about ``pole``.

    The full-sphere lattice has one point per ``spacing**2`` of area;
    index order runs outward from the pole.  ``offset`` turns the lattice
    about the pole by ``offset`` golden angles.
    """
    n = max(1, math.ceil(4.0 * math.pi / spacing ** 2))
    zmin = math.cos(cap_radius)
    count = int(math.floor(n * (1.0 - zmin) / 2.0 + 0.5))
    i = np.arange(count + 1)
    z = 1.0 - (2.0 * i + 1.0) / n
    i, z = i[z >= zmin], z[z >= zmin]
    rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = (i + offset) * _GOLDEN_ANGLE
    e1, e2 = tangent_frame(pole)
    pole = np.asarray(pole, dtype=float)
    return (z[:, None] * pole + (rho * np.cos(phi))[:, None] * e1
            + (rho * np.sin(phi))[:, None] * e2)


def _set_diameter(points):
    P = np.asarray(points, dtype=float)
    best = -1.0
    for s in range(0, len(P), 2048):
        best = max(best, float(np.min(P[s:s + 2048] @ P.T)))
    return math.acos(min(1.0, max(-1.0, best)))


def extreme_points(points):
    """Vertices of the spherical convex hull of points in an open hemisphere.

    Balls of radius < pi/2 centered inside that hull contain the
    intersection of the balls centered at its vertices, so only these
    points matter for a delta-hull.
    """
    P = np.asarray(points, dtype=float)
    if len(P) < 4:
        return P
    pole = normalize(P.sum(axis=0))
    if np.min(P @ pole) <= 1e-9:
        pole = P[0]
    e1, e2 = tangent_frame(pole)
    w = P @ pole
    if np.min(w) <= 1e-9:
        return P
    flat = np.column_stack([(P @ e1) / w, (P @ e2) / w])
    try:
        hull = ConvexHull(flat)
    except QhullError:
        return P
    return P[np.sort(hull.vertices)]


def delta_hull(points, delta, tolerances=None, slack=None):
    """Intersection of the balls of radius ``delta`` centered at ``points``.

    The points must have diameter at most ``delta + slack`` (``slack``
    defaults to ``eps_geo``).
    """
    tol = tolerances or DEFAULT_TOL
    check_delta(delta)
    slack = tol.eps_geo if slack is None else slack
    P = normalize(np.atleast_2d(np.asarray(points, dtype=float)))
    if len(P) > 1 and np.min(P @ P[0]) <= 0.0:
        raise NoEnclosingHemisphere("points are not within a hemisphere of the first point")
    ext = extreme_points(P)
    if _set_diameter(ext) > delta + slack:
        raise DiameterExceeded(f"point set diameter exceeds delta={delta}")
    return make_body([Ball(p, delta) for p in ext], tol, delta=delta)


def is_complete(body, delta, tol=None, grid_spacing=None, band=None):
    """Sampled completeness test.

    Passes iff the diameter is ``delta`` within ``tol`` and every lattice
    point of the witness hemisphere lying more than ``band`` outside the
    body has a body point farther than ``delta - tol`` from it.

    ``band`` defaults to ``eps_geo``.  Exterior points near a complete body
    already have partners at about ``delta``, so nothing is gained by
    skipping them, while a band as wide as ``tol`` lets defects of almost
    ``2 tol`` through.
    """
    check_delta(delta)
    h = body.tolerances.h
    tol = 3.0 * h if tol is None else tol
    band = body.tolerances.eps_geo if band is None else band
    diam, (p, q) = diameter(body)
    grid = fibonacci_cap(body.witness_pole, HALF_PI, grid_spacing or h)
    outside = grid[contains(body, grid) < -band]
    far = farthest_distance(body, outside)[0] if len(outside) else np.zeros(0)
    return VerificationReport.build(
        "complete", tol, np.vstack([p, outside]),
        np.concatenate([[-abs(diam - delta)], far - delta]),
        diameter=diam, n_exterior=int(len(outside)))


def is_constant_diameter(body, delta, tol=None):
    """Sampled test that every boundary point has a partner at distance delta."""
    check_delta(delta)
    h = body.tolerances.h
    tol = 3.0 * h if tol is None else tol
    diam, (p, q) = diameter(body)
    pts = sample_boundary(body, h)
    far = farthest_distance(body, pts)[0]
    return VerificationReport.build(
        "diameter", tol, np.vstack([p, pts]),
        np.concatenate([[-abs(diam - delta)], far - delta]), diameter=diam)


@dataclass(frozen=True, eq=False)
class CompletionConfig:
    """Parameters of the grid completion.

    :attrib delta: target diameter, in (0, pi/2).
    :attrib resolution: lattice spacing [rad].
    :attrib cap_pole: pole of the cap holding the lattice (default: mean of
        the seed points).
    :attrib cap_radius: lattice cap radius (default pi/2 - 1e-6).
    :attrib seed_order: rotation of the lattice about the pole, in golden
        angles.
    """

    delta: float
    resolution: float = 0.01
    cap_pole: np.ndarray = None
    cap_radius: float = None
    seed_order: int = 0

    def __post_init__(self):
        check_delta(self.delta)
        if self.resolution <= 0:
            raise ValueError("resolution must be positive")


def _compatible(X, Y, cosd):
    # (len(X), len(Y)) mask of pairs within distance delta
    return X @ Y.T >= cosd


def accepted_grid(seed, cfg, block=128):
    """Run the greedy acceptance loop; returns ``(lattice, accepted_indices)``.

    Lattice points are visited in index order and accepted iff they are
    within ``delta`` of the seed and of every point accepted before.
    Rejected points are never reconsidered since the accepted set only
    grows.
    """
    seed = normalize(np.atleast_2d(np.asarray(seed, dtype=float)))
    pole = normalize(seed.sum(axis=0)) if cfg.cap_pole is None else normalize(cfg.cap_pole)
    radius = HALF_PI - 1e-6 if cfg.cap_radius is None else cfg.cap_radius
    if np.any(distance(seed, pole) > radius):
        raise SeedOutsideCap("seed point outside the completion cap")
    if _set_diameter(seed) > cfg.delta + DEFAULT_TOL.eps_geo:
        raise SeedDiameterExceeded("seed diameter exceeds delta")
    grid = fibonacci_cap(pole, radius, cfg.resolution, cfg.seed_order)
    cosd = math.cos(cfg.delta)
    # live: unvisited indices compatible with everything accepted so far,
    # so the next acceptance is always live[0]
    live = np.flatnonzero(np.all(_compatible(grid, seed, cosd), axis=1))
    accepted = []
    while live.size:
        blk, rest = live[:block], live[block:]
        P = grid[blk]
        comp = _compatible(P, P, cosd)
        alive = np.ones(len(blk), dtype=bool)
        take = []
        for r in range(len(blk)):
            if alive[r]:
                take.append(r)
                alive &= comp[r]
        accepted.extend(blk[take])
        new = P[take]
        keep = np.empty(rest.size, dtype=bool)
        for s in range(0, rest.size, 8192):
            keep[s:s + 8192] = np.all(_compatible(grid[rest[s:s + 8192]], new, cosd), axis=1)
        live = rest[keep]
    return grid, np.array(accepted, dtype=int)


def complete(seed, cfg, tolerances=None):
    """Complete ``seed`` to a body of diameter ``cfg.delta``.

    Greedy completion on a Fibonacci lattice: the accepted points A have
    diameter <= delta and every rejected lattice point is farther than
    delta from some point of A.  The result is the delta-hull
    of the extreme points of A, which contains all seed points.
    """
    tol = tolerances or DEFAULT_TOL
    seed = normalize(np.atleast_2d(np.asarray(seed, dtype=float)))
    grid, idx = accepted_grid(seed, cfg)
    points = np.vstack([seed, grid[idx]])
    return delta_hull(points, cfg.delta, tol)


def piece_of_circle(a, b, c, delta, tolerances=None):
    """Arc of the circle of radius ``delta`` about ``c`` from ``a`` to ``b``.

    It is swept by the radius-delta geodesics from ``c`` crossing the arc
    ``ab``, i.e. the shorter way around ``c`` between ``a`` and ``b``.
    """
    tol = tolerances or DEFAULT_TOL
    a, b, c = (np.asarray(v, dtype=float) for v in (a, b, c))
    if distance(a, b) < tol.eps_geo:
        raise EqualEndpoints("piece of circle needs different endpoints")
    if abs(distance(a, c) - delta) > tol.eps_geo or abs(distance(b, c) - delta) > tol.eps_geo:
        raise NotOnCircle("endpoints are not at distance delta from the center")
    arc = CircleArc.on_circle(c, delta, 0.0, 0.0)
    ta = float(arc.angle_of(a))
    turn = math.remainder(float(arc.angle_of(b)) - ta, 2.0 * math.pi)
    return CircleArc(arc.center, float(delta), ta, ta + turn, arc.e1, arc.e2)


def check_piece_containment(body, a, b, c, delta, tol=None):
    """Sample ``piece_of_circle(a, b, c, delta)`` and test membership."""
    h = body.tolerances.h
    tol = 3.0 * h if tol is None else tol
    eps = body.tolerances.eps_geo
    arc = piece_of_circle(a, b, c, delta, body.tolerances)
    if contains(body, a) < -eps or contains(body, b) < -eps:
        raise EndpointsOutsideBody("piece endpoints must lie in the body")
    pts = arc.sample(h, include_end=True)
    return VerificationReport.build("piece", tol, pts, contains(body, pts))


def random_body_points(body, n, rng):
    """Uniform random points of the body by rejection from a bounding cap."""
    pole = body.witness_pole
    reach = farthest_distance(body, pole)[0]
    zmin = math.cos(reach)
    e1, e2 = tangent_frame(pole)
    out = []
    while len(out) < n:
        z = rng.uniform(zmin, 1.0, 256)
        phi = rng.uniform(0.0, 2.0 * math.pi, 256)
        r = np.sqrt(1.0 - z * z)
        X = z[:, None] * pole + (r * np.cos(phi))[:, None] * e1 + (r * np.sin(phi))[:, None] * e2
        out.extend(X[contains(body, X) >= 0.0])
    return np.array(out[:n])


def random_piece_triples(body, delta, n, rng, min_separation=1e-3):
    """``n`` admissible ``(a, b, c)``: ``a, b`` in the body, ``|ac| = |bc| = delta``."""
    out = []
    while len(out) < n:
        a, b = random_body_points(body, 2, rng)
        if distance(a, b) < min_separation:
            continue
        cs = circle_intersections(Ball(a, delta), Ball(b, delta), body.tolerances)
        if len(cs) != 2:
            continue
        out.append((a, b, cs[int(rng.integers(2))]))
    return out


def piece_report(body, delta, n=50, tol=None, rng=None):
    """Merged piece containment over ``n`` random admissible triples."""
    rng = np.random.default_rng(0) if rng is None else rng
    tol = 3.0 * body.tolerances.h if tol is None else tol
    reps = [check_piece_containment(body, a, b, c, delta, tol)
            for a, b, c in random_piece_triples(body, delta, n, rng)]
    return VerificationReport.merge("piece", tol, reps, n_triples=n)
