"""
Lunes, lune thickness and the width of a body determined by a supporting
hemisphere.

Hemispheres are identified by their poles.  The poles of all hemispheres
supporting a ball polygon form a closed curve (the boundary of the polar
body): along a boundary arc on the circle ``(c, r)`` the pole moves on the
circle of radius ``pi/2 - r`` about ``c``; at a vertex it sweeps the great
circle arc between the normals of the two adjacent arcs.  :class:`PoleCurve`
parametrizes that curve by arc length.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .body import support_min
from .core import distance, is_degenerate_pair, normalize
from .errors import DegenerateLune, NotSupporting

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True, eq=False)
class Lune:
    """Intersection of the hemispheres with poles ``pole_g`` and ``pole_h``."""

    pole_g: np.ndarray
    pole_h: np.ndarray

    def __post_init__(self):
        g = normalize(self.pole_g)
        h = normalize(self.pole_h)
        if is_degenerate_pair(g, h):
            raise DegenerateLune("lune poles are equal or antipodal")
        object.__setattr__(self, "pole_g", g)
        object.__setattr__(self, "pole_h", h)

    def swapped(self):
        return Lune(self.pole_h, self.pole_g)


def semicircle_centers(lune):
    """Centers ``(m_g, m_h)`` of the two semicircles bounding the lune.

    ``m_g`` is the point of the boundary of G deepest inside H.
    """
    g, h = lune.pole_g, lune.pole_h
    m_g = normalize(h - np.dot(h, g) * g)
    m_h = normalize(g - np.dot(g, h) * h)
    return m_g, m_h


def lune_thickness(lune):
    """Distance between the two semicircle centers of the lune."""
    m_g, m_h = semicircle_centers(lune)
    return distance(m_g, m_h)


class PoleCurve:
    """Arc-length parametrization of the poles of supporting hemispheres."""

    def __init__(self, body):
        self.body = body
        kind, length, data = [], [], []
        arcs = body.arcs
        for k, arc in enumerate(arcs):
            c, r = arc.center, arc.radius
            kind.append(0)
            length.append(math.cos(r) * arc.span)
            data.append((c, r, arc.e1, arc.e2, arc.theta0, arc.theta1 - arc.theta0, arc))
            if len(arcs) == 1 and arc.is_full_circle:
                break
            nxt = arcs[(k + 1) % len(arcs)]
            p0 = self._arc_pole(arc, arc.theta1)
            p1 = self._arc_pole(nxt, nxt.theta0)
            omega = distance(p0, p1)
            kind.append(1)
            length.append(omega)
            data.append((p0, p1, omega, nxt.start))
        self.kind = np.array(kind)
        self.lengths = np.array(length)
        self.offsets = np.concatenate([[0.0], np.cumsum(self.lengths)])
        self.total = float(self.offsets[-1])
        self._data = data

    @staticmethod
    def _arc_pole(arc, theta):
        r = arc.radius
        e = math.cos(theta) * arc.e1 + math.sin(theta) * arc.e2
        return math.sin(r) * arc.center - math.cos(r) * e

    def _locate(self, s):
        s = np.mod(np.asarray(s, dtype=float), self.total)
        k = np.searchsorted(self.offsets, s, side="right") - 1
        k = np.clip(k, 0, len(self.lengths) - 1)
        return k, s - self.offsets[k]

    def evaluate(self, s):
        """Poles and touching boundary points at parameters ``s``."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        k, t = self._locate(s)
        poles = np.empty((len(s), 3))
        touch = np.empty((len(s), 3))
        for piece in np.unique(k):
            sel = k == piece
            tt = t[sel]
            if self.kind[piece] == 0:
                c, r, e1, e2, t0, span, arc = self._data[piece]
                cr = math.cos(r)
                theta = t0 + (tt / cr if cr > 0 else 0.0) * np.sign(span)
                e = np.cos(theta)[:, None] * e1 + np.sin(theta)[:, None] * e2
                poles[sel] = math.sin(r) * c - cr * e
                touch[sel] = cr * c + math.sin(r) * e
            else:
                p0, p1, omega, vertex = self._data[piece]
                if omega < 1e-15:
                    poles[sel] = p0
                else:
                    w0 = np.sin(omega - tt) / math.sin(omega)
                    w1 = np.sin(tt) / math.sin(omega)
                    poles[sel] = w0[:, None] * p0 + w1[:, None] * p1
                touch[sel] = vertex
        return normalize(poles), touch

    def sample_parameters(self, spacing):
        """Parameters covering every piece at spacing <= ``spacing``."""
        out = []
        for off, ln in zip(self.offsets[:-1], self.lengths):
            n = max(1, math.ceil(ln / spacing - 1e-9)) if ln > 0 else 1
            out.append(off + ln * np.arange(n) / n)
        return np.concatenate(out)


def _golden_max(f, a, b, iters=60):
    # vectorized golden-section search for a maximum of f on [a, b]
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    for _ in range(iters):
        c = b - _GOLDEN * (b - a)
        d = a + _GOLDEN * (b - a)
        left = f(c) >= f(d)
        b = np.where(left, d, b)
        a = np.where(left, a, c)
    x = 0.5 * (a + b)
    return x, f(x)


def _widths(curve, U, spacing):
    """Width and optimal opposite pole for each supporting pole in ``U``."""
    U = np.atleast_2d(U)
    S = curve.sample_parameters(spacing)
    P, _ = curve.evaluate(S)
    ang = np.arccos(np.clip(U @ P.T, -1.0, 1.0))
    k = np.argmax(ang, axis=1)
    best = ang[np.arange(len(U)), k]
    n = len(S)
    lo = np.where(k > 0, S[k - 1], S[-1] - curve.total)
    hi = np.where(k < n - 1, S[(k + 1) % n], S[0] + curve.total)

    def f(s):
        poles, _ = curve.evaluate(s)
        return np.arccos(np.clip(np.sum(poles * U, axis=1), -1.0, 1.0))

    s_opt, refined = _golden_max(f, lo, hi)
    better = refined > best
    s_opt = np.where(better, s_opt, S[k])
    best = np.maximum(best, refined)
    opposite, _ = curve.evaluate(s_opt)
    return math.pi - best, opposite


def width_at(body, u, spacing=None):
    """Width of the body determined by the supporting hemisphere with pole ``u``.

    The minimum lune thickness ``pi - angle(u, u')`` over poles ``u'`` of
    hemispheres containing the body is attained for a supporting ``u'``;
    the pole curve is sampled at ``spacing`` (default ``h``) and the best
    sample refined by golden-section search.

    Returns ``(width, opposite_pole)``.
    """
    tol = body.tolerances
    u = normalize(u)
    value = support_min(body, u)[0]
    if abs(value) > tol.eps_geo:
        raise NotSupporting(f"hemisphere does not support the body (support {value:.3g})")
    w, opp = _widths(PoleCurve(body), u, spacing or tol.h)
    return float(w[0]), opp[0]


@dataclass
class WidthProfile:
    """Widths at supporting poles, ordered by pole-curve parameter."""

    params: np.ndarray
    poles: np.ndarray
    touches: np.ndarray
    widths: np.ndarray
    opposite: np.ndarray

    def __len__(self):
        return len(self.widths)

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            self.write_csv(fh)

    def write_csv(self, fh):
        w = csv.writer(fh)
        w.writerow(["pole_x", "pole_y", "pole_z", "touch_x", "touch_y", "touch_z", "width"])
        for p, t, wd in zip(self.poles, self.touches, self.widths):
            w.writerow([f"{v:.17g}" for v in (*p, *t, wd)])


def width_profile(body, n_samples=None, spacing=None):
    """Width at supporting poles along the whole normal fan.

    With ``n_samples`` the poles are equally spaced in curve parameter;
    otherwise every piece is sampled at ``spacing`` (default ``h``).
    """
    curve = PoleCurve(body)
    h = body.tolerances.h
    if n_samples:
        S = curve.total * np.arange(n_samples) / n_samples
    else:
        S = curve.sample_parameters(spacing or h)
    poles, touches = curve.evaluate(S)
    widths, opposite = _widths(curve, poles, spacing or h)
    return WidthProfile(S, poles, touches, widths, opposite)


def min_width(body, spacing=None):
    """Minimal width of the body and a minimal lune containing it.

    The fan of supporting poles is sampled at ``spacing`` (default ``h``)
    and the smallest width refined by golden-section search.
    """
    curve = PoleCurve(body)
    h = spacing or body.tolerances.h
    S = curve.sample_parameters(h)
    P, _ = curve.evaluate(S)
    W, O = _widths(curve, P, h)
    k = int(np.argmin(W))
    n = len(S)
    lo = S[k - 1] if k > 0 else S[-1] - curve.total
    hi = S[k + 1] if k < n - 1 else S[0] + curve.total

    def neg_width(s):
        poles, _ = curve.evaluate(s)
        return -_widths(curve, poles, h)[0]

    s_opt, val = _golden_max(neg_width, [lo], [hi], iters=40)
    if -val[0] < W[k]:
        u, _ = curve.evaluate(s_opt)
        w, opp = _widths(curve, u, h)
        return float(w[0]), Lune(u[0], opp[0])
    return float(W[k]), Lune(P[k], O[k])


def is_constant_width(body, delta, tol=None):
    """Check that every supporting hemisphere determines width ``delta``.

    Margins are ``-|width - delta|`` per sampled pole; passes iff all are
    ``>= -tol`` (default ``3 h``).
    """
    from .completeness import VerificationReport, check_delta

    check_delta(delta)
    tol = 3.0 * body.tolerances.h if tol is None else tol
    prof = width_profile(body)
    margins = -np.abs(prof.widths - delta)
    return VerificationReport.build(
        "width", tol, prof.poles, margins,
        min_width=float(prof.widths.min()), max_width=float(prof.widths.max()))
