"""
Convex bodies on S^2 represented as finite intersections of balls.

The boundary of such a body is a closed chain of small-circle arcs meeting
at vertices.  Arcs are oriented counterclockwise about their own circle
center, which puts the body on the left of the direction of travel.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .core import (DEFAULT_TOL, TWO_PI, Tolerances, _meet, distance,
                   normalize, tangent_frame)
from .errors import EmptyBody, GeometryError, IdenticalCircles, NoEnclosingHemisphere

MARGIN_MIN = 1e-6
_CHUNK = 4096
# closing gap allowed when chaining arcs into one boundary cycle
_CHAIN_GAP = 1e-6


@dataclass(frozen=True, eq=False)
class CircleArc:
    """Arc of the circle of spherical radius ``radius`` about ``center``.

    Points are ``cos(r) c + sin(r) (cos t e1 + sin t e2)`` for ``t`` running
    from ``theta0`` to ``theta1``; ``theta1 < theta0`` means clockwise.
    """

    center: np.ndarray
    radius: float
    theta0: float
    theta1: float
    e1: np.ndarray
    e2: np.ndarray
    ball_index: int = -1

    @classmethod
    def on_circle(cls, center, radius, theta0, theta1, ball_index=-1):
        center = np.asarray(center, dtype=float)
        e1, e2 = tangent_frame(center)
        return cls(center, float(radius), float(theta0), float(theta1), e1, e2, ball_index)

    def point(self, theta):
        theta = np.asarray(theta, dtype=float)
        r = self.radius
        return (math.cos(r) * self.center
                + math.sin(r) * (np.cos(theta)[..., None] * self.e1
                                 + np.sin(theta)[..., None] * self.e2))

    @property
    def start(self):
        return self.point(self.theta0)

    @property
    def end(self):
        return self.point(self.theta1)

    @property
    def orientation(self):
        return 1 if self.theta1 >= self.theta0 else -1

    @property
    def span(self):
        return abs(self.theta1 - self.theta0)

    @property
    def length(self):
        return self.span * math.sin(self.radius)

    @property
    def is_full_circle(self):
        return self.span >= TWO_PI - 1e-12

    def angle_of(self, x):
        x = np.asarray(x, dtype=float)
        return np.arctan2(x @ self.e2, x @ self.e1)

    def sample(self, spacing, include_end=False):
        """Points at arc-length spacing <= ``spacing``, start first."""
        n = max(1, math.ceil(self.length / spacing - 1e-9))
        k = np.arange(n + 1 if include_end else n)
        return self.point(self.theta0 + (self.theta1 - self.theta0) * k / n)


@dataclass(frozen=True, eq=False)
class BallPolygon:
    """Intersection of finitely many balls with its cached boundary.

    Build instances with :func:`make_body`; the constructor does no
    validation.
    """

    balls: tuple
    arcs: tuple
    witness_pole: np.ndarray = None
    margin: float = float("nan")
    delta: float = None
    tolerances: Tolerances = field(default=DEFAULT_TOL)

    @cached_property
    def centers(self):
        return np.array([b.center for b in self.balls])

    @cached_property
    def radii(self):
        return np.array([b.radius for b in self.balls])

    @cached_property
    def vertices(self):
        if len(self.arcs) == 1 and self.arcs[0].is_full_circle:
            return np.zeros((0, 3))
        return np.array([a.start for a in self.arcs])

    @cached_property
    def _arc_arrays(self):
        arcs = self.arcs
        return dict(
            c=np.array([a.center for a in arcs]),
            r=np.array([a.radius for a in arcs]),
            e1=np.array([a.e1 for a in arcs]),
            e2=np.array([a.e2 for a in arcs]),
            t0=np.array([a.theta0 for a in arcs]),
            span=np.array([a.theta1 - a.theta0 for a in arcs]),
        )

    def __repr__(self):
        return (f"BallPolygon({len(self.balls)} balls, {len(self.arcs)} arcs, "
                f"delta={self.delta}, margin={self.margin:.4g})")


def _dedupe(balls, eps):
    C = np.array([b.center for b in balls])
    R = np.array([b.radius for b in balls])
    keep = np.ones(len(balls), dtype=bool)
    for i in range(1, len(balls)):
        same = (np.abs(R[:i] - R[i]) <= eps) & (
            np.arccos(np.clip(C[:i] @ C[i], -1.0, 1.0)) <= eps) & keep[:i]
        keep[i] = not same.any()
    return [b for b, k in zip(balls, keep) if k]


def _arcs_of_circle(i, C, R, eps_alg):
    """Maximal sub-arcs of circle ``i`` inside every other ball."""
    others = np.array([j for j in range(len(R)) if j != i], dtype=int)
    e1, e2 = tangent_frame(C[i])
    if others.size == 0:
        return [(0.0, TWO_PI)]
    pts, mask, identical = _meet(C[i], R[i], C[others], R[others], 1e-12)
    if np.any(identical):
        raise IdenticalCircles("two balls share a boundary circle")
    p = pts[mask]
    ang = np.sort(np.mod(np.arctan2(p @ e2, p @ e1), TWO_PI))
    circ = CircleArc(C[i], R[i], 0.0, TWO_PI, e1, e2)

    cos_others = np.cos(R[others])

    C_others = C[others]

    def inside(theta):
        # membership in dot space, x . c_j >= cos(r_j); most candidates fail
        # against the first few balls, so test in chunks and drop them early
        X = circ.point(theta)
        alive = np.arange(len(X))
        for s in range(0, len(others), 32):
            m = X[alive] @ C_others[s:s + 32].T - cos_others[s:s + 32]
            alive = alive[np.min(m, axis=1) >= -eps_alg]
            if not alive.size:
                break
        ok = np.zeros(len(X), dtype=bool)
        ok[alive] = True
        return ok

    if ang.size == 0:
        return [(0.0, TWO_PI)] if inside(np.array([0.0]))[0] else []
    ang = ang[np.concatenate([[True], np.diff(ang) > 1e-15])]
    lo = ang
    hi = np.concatenate([ang[1:], [ang[0] + TWO_PI]])
    keep = inside(0.5 * (lo + hi))
    if keep.all():
        return [(0.0, TWO_PI)]
    if not keep.any():
        return []
    # walk sub-arcs starting right after a rejected one, unwrapping angles
    n = len(keep)
    first = (int(np.argmin(keep)) + 1) % n
    out = []
    cur = None
    for p in range(n):
        k = (first + p) % n
        off = TWO_PI if k < first else 0.0
        if not keep[k]:
            if cur is not None:
                out.append(tuple(cur))
                cur = None
        elif cur is None:
            cur = [lo[k] + off, hi[k] + off]
        else:
            cur[1] = hi[k] + off
    if cur is not None:
        out.append(tuple(cur))
    return out


def _boundary(balls, tol):
    """Iterate arc extraction until every remaining ball contributes an arc."""
    balls = list(balls)
    while True:
        C = np.array([b.center for b in balls])
        R = np.array([b.radius for b in balls])
        arcs = []
        active = []
        for i in range(len(balls)):
            pieces = [(a, b) for a, b in _arcs_of_circle(i, C, R, tol.eps_alg)
                      if (b - a) * math.sin(R[i]) > tol.eps_geo]
            if pieces:
                active.append(i)
            arcs.extend((i, a, b) for a, b in pieces)
        if not arcs:
            raise EmptyBody("intersection of balls has empty interior")
        if len(active) == len(balls):
            return balls, arcs
        balls = [balls[i] for i in active]


def _chain(balls, raw):
    arcs = [CircleArc.on_circle(balls[i].center, balls[i].radius, a, b, i) for i, a, b in raw]
    arcs.sort(key=lambda a: (a.ball_index, a.theta0))
    if len(arcs) == 1:
        if not arcs[0].is_full_circle:
            raise GeometryError("boundary does not close")
        return tuple(arcs)
    starts = np.array([a.start for a in arcs])
    used = np.zeros(len(arcs), dtype=bool)
    order = [0]
    used[0] = True
    for _ in range(len(arcs) - 1):
        end = arcs[order[-1]].end
        gap = np.linalg.norm(starts - end, axis=1)
        gap[used] = np.inf
        k = int(np.argmin(gap))
        if gap[k] > _CHAIN_GAP:
            raise GeometryError(f"boundary arcs do not chain (gap {gap[k]:.3g})")
        used[k] = True
        order.append(k)
    closing = np.linalg.norm(arcs[order[-1]].end - arcs[0].start)
    if closing > _CHAIN_GAP:
        raise GeometryError(f"boundary does not close (gap {closing:.3g})")
    return tuple(arcs[k] for k in order)


def make_body(balls, tolerances=None, delta=None, witness_pole=None, margin_min=MARGIN_MIN):
    """Canonical ball polygon for the intersection of ``balls``.

    Redundant balls are dropped (a ball is kept only if its circle
    contributes a boundary arc longer than ``eps_geo``), the boundary is
    assembled in cyclic order and an enclosing hemisphere is found.  If
    ``witness_pole`` is given it is checked instead of searched for.
    """
    tol = tolerances or DEFAULT_TOL
    balls = list(balls)
    if not balls:
        raise ValueError("make_body needs at least one ball")
    balls = _dedupe(balls, tol.eps_geo)
    try:
        balls, raw = _boundary(balls, tol)
    except IdenticalCircles:
        # only antipodal hemispheres survive deduplication
        raise EmptyBody("opposite hemispheres meet in a great circle") from None
    arcs = _chain(balls, raw)
    body = BallPolygon(tuple(balls), arcs, delta=delta, tolerances=tol)
    if witness_pole is None:
        pole, margin = enclosing_hemisphere(body, margin_min)
    else:
        pole = np.array(witness_pole, dtype=float)
        if abs(np.linalg.norm(pole) - 1.0) > 1e-15:
            pole = normalize(pole)
        margin = support_min(body, pole)[0]
        if margin < margin_min:
            raise NoEnclosingHemisphere(
                f"witness pole margin {margin:.3g} below {margin_min:.3g}")
    return BallPolygon(tuple(balls), arcs, pole, float(margin), delta, tol)


def contains(body, x):
    """Signed margin ``min_i (radius_i - distance(x, center_i))``.

    Non-negative exactly for points of the body.  Accepts one point or an
    ``(n, 3)`` batch.
    """
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    out = np.empty(len(X))
    C, R = body.centers, body.radii
    for s in range(0, len(X), _CHUNK):
        d = np.arccos(np.clip(X[s:s + _CHUNK] @ C.T, -1.0, 1.0))
        out[s:s + _CHUNK] = np.min(R - d, axis=1)
    return float(out[0]) if single else out


def _in_arc(theta, t0, span):
    rel = np.mod(theta - t0, TWO_PI)
    return rel <= span + 1e-13


def support_min(body, u):
    """Minimum of ``x . u`` over the body and a minimizing point.

    The minimum over a spherical convex body lies on its boundary (unless
    ``-u`` is interior), so candidates are the vertices and, per arc, the
    circle point opposite to ``u``.  Accepts one direction or a batch.
    """
    u = np.asarray(u, dtype=float)
    single = u.ndim == 1
    U = np.atleast_2d(u)
    vals = np.empty(len(U))
    pts = np.empty((len(U), 3))
    A = body._arc_arrays
    V = body.vertices
    cr, sr = np.cos(A["r"]), np.sin(A["r"])
    for s in range(0, len(U), _CHUNK):
        Us = U[s:s + _CHUNK]
        rows = np.arange(len(Us))
        a1 = Us @ A["e1"].T
        a2 = Us @ A["e2"].T
        ac = Us @ A["c"].T
        th = np.arctan2(-a2, -a1)
        val = cr * ac - sr * np.hypot(a1, a2)
        val = np.where(_in_arc(th, A["t0"], A["span"]), val, np.inf)
        k = np.argmin(val, axis=1)
        best = val[rows, k]
        tk = th[rows, k]
        rk = A["r"][k][:, None]
        best_pt = (np.cos(rk) * A["c"][k]
                   + np.sin(rk) * (np.cos(tk)[:, None] * A["e1"][k]
                                   + np.sin(tk)[:, None] * A["e2"][k]))
        if len(V):
            dv = Us @ V.T
            kv = np.argmin(dv, axis=1)
            bv = dv[rows, kv]
            take = bv <= best
            best = np.where(take, bv, best)
            best_pt = np.where(take[:, None], V[kv], best_pt)
        inner = contains(body, -Us) > 0.0
        if np.any(inner):
            best = np.where(inner, -1.0, best)
            best_pt = np.where(inner[:, None], -Us, best_pt)
        vals[s:s + _CHUNK] = best
        pts[s:s + _CHUNK] = best_pt
    if single:
        return float(vals[0]), pts[0]
    return vals, pts


def farthest_distance(body, x):
    """Largest distance from ``x`` to a point of the body, with the witness."""
    v, p = support_min(body, x)
    d = np.arccos(np.clip(v, -1.0, 1.0))
    return (float(d) if np.ndim(d) == 0 else d), p


def _arc_pair_candidates(body):
    # Critical pairs with both points interior to arcs: the connecting
    # geodesic is normal to both circles, so it runs through both centers.
    A = body._arc_arrays
    arcs = body.arcs
    m = len(arcs)
    best = (-1.0, None, None)
    out_vals, out_p, out_q = [], [], []
    C, R = A["c"], A["r"]
    I, J = np.triu_indices(m)
    g = np.sum(C[I] * C[J], axis=1)
    generic = np.abs(g) < 1.0 - 1e-12
    Ig, Jg = I[generic], J[generic]
    if Ig.size:
        c1, c2 = C[Ig], C[Jg]
        t1 = normalize(c2 - np.sum(c2 * c1, axis=1)[:, None] * c1)
        t2 = normalize(c1 - np.sum(c1 * c2, axis=1)[:, None] * c2)
        r1, r2 = R[Ig][:, None], R[Jg][:, None]
        P = [np.cos(r1) * c1 + sg * np.sin(r1) * t1 for sg in (1.0, -1.0)]
        Q = [np.cos(r2) * c2 + sg * np.sin(r2) * t2 for sg in (1.0, -1.0)]

        def on(pt, idx):
            th = np.arctan2(np.sum(pt * A["e2"][idx], 1), np.sum(pt * A["e1"][idx], 1))
            return _in_arc(th, A["t0"][idx], A["span"][idx])

        for p in P:
            okp = on(p, Ig)
            for q in Q:
                ok = okp & on(q, Jg)
                d = np.arccos(np.clip(np.sum(p * q, axis=1), -1.0, 1.0))
                d = np.where(ok, d, -1.0)
                out_vals.append(d)
                out_p.append(p)
                out_q.append(q)
    vals = np.stack(out_vals, axis=1) if out_vals else np.zeros((0, 4))
    # same-circle pairs: diametrically opposite points of one circle
    for a in range(m):
        for b in range(a, m):
            if arcs[a].ball_index != arcs[b].ball_index:
                continue
            ta, sa = arcs[a].theta0, arcs[a].span
            tb, sb = arcs[b].theta0 - math.pi, arcs[b].span
            theta = None
            if np.mod(tb - ta, TWO_PI) <= sa + 1e-13:
                theta = tb
            elif np.mod(ta - tb, TWO_PI) <= sb + 1e-13:
                theta = ta
            if theta is not None:
                p = arcs[a].point(theta)
                q = arcs[a].point(theta + math.pi)
                d = distance(p, q)
                if d > best[0]:
                    best = (d, p, q)
    return (Ig, Jg, vals, out_p, out_q), best


def diameter(body):
    """Diameter of the body and a realizing pair ``(p, q)``.

    Exact candidate enumeration: vertex to farthest body point (which covers
    vertex-vertex and vertex-arc pairs), arc-arc pairs on the great circle
    through both circle centers, and opposite points of a single circle.
    Ties go to the first candidate in (arc index, parameter) order.
    """
    cands = []
    V = body.vertices
    if len(V):
        d, w = farthest_distance(body, V)
        for k in range(len(V)):
            cands.append((d[k], V[k], w[k]))
    (Ig, Jg, vals, P, Q), same = _arc_pair_candidates(body)
    if vals.size:
        flat = vals.max(axis=1)
        which = vals.argmax(axis=1)
        for n in np.flatnonzero(flat >= 0.0):
            c = which[n]
            cands.append((flat[n], P[c // 2][n], Q[c % 2][n]))
    if same[1] is not None:
        cands.append(same)
    top = max(c[0] for c in cands)
    for c in cands:
        if c[0] >= top - 1e-12:
            return float(c[0]), (c[1], c[2])


def enclosing_hemisphere(body, margin_min=MARGIN_MIN, max_iter=500):
    """Pole ``u`` with ``support_min(body, u) >= margin_min``.

    Starts from the normalized sum of ball centers and, if needed, runs a
    projected supergradient ascent on the concave support function.
    """
    u = normalize(body.centers.sum(axis=0)) if np.linalg.norm(body.centers.sum(axis=0)) > 0 \
        else body.centers[0]
    val, x = support_min(body, u)
    best_u, best_v = u, val
    for k in range(max_iter):
        if best_v >= margin_min:
            break
        u = normalize(u + x / (k + 2.0))
        val, x = support_min(body, u)
        if val > best_v:
            best_u, best_v = u, val
    if best_v < margin_min:
        raise NoEnclosingHemisphere(
            f"best hemisphere margin {best_v:.3g} below {margin_min:.3g}")
    return best_u, float(best_v)


def sample_boundary(body, spacing):
    """Boundary points at arc-length spacing <= ``spacing``.

    Arcs are visited in cyclic order, each sampled start to end without its
    endpoint (that is the next arc's start), so every vertex appears once.
    """
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    return np.concatenate([a.sample(spacing) for a in body.arcs])
