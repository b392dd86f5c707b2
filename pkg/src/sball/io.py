"""
Text formats.

``sball-1`` bodies are JSON records::

    {"format": "sball-1", "delta": 1.0, "witness_pole": [x, y, z],
     "balls": [{"center": [x, y, z], "radius": r}, ...]}

with every number written with 17 significant digits, so files are
byte-reproducible and round-trip exactly.  Readers rebuild the body and
re-check all invariants.
"""

import json
import os
import tempfile

import numpy as np

from .body import make_body
from .core import Ball
from .errors import GeometryError, InvalidBodyFile

BODY_FORMAT = "sball-1"
POINTS_FORMAT = "spoints-1"


def _num(x):
    return format(float(x), ".17g")


def _vec(v):
    return "[" + ", ".join(_num(x) for x in v) + "]"


def body_to_text(body):
    delta = "null" if body.delta is None else _num(body.delta)
    lines = [
        "{",
        f'  "format": "{BODY_FORMAT}",',
        f'  "delta": {delta},',
        f'  "witness_pole": {_vec(body.witness_pole)},',
        '  "balls": [',
    ]
    balls = [f'    {{"center": {_vec(b.center)}, "radius": {_num(b.radius)}}}' for b in body.balls]
    lines.append(",\n".join(balls))
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def body_from_text(text, tolerances=None):
    try:
        rec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidBodyFile(f"not JSON: {exc}") from None
    if not isinstance(rec, dict) or rec.get("format") != BODY_FORMAT:
        raise InvalidBodyFile(f"expected format {BODY_FORMAT!r}")
    try:
        balls = [Ball(np.array(b["center"], dtype=float), float(b["radius"]))
                 for b in rec["balls"]]
        pole = np.array(rec["witness_pole"], dtype=float)
        delta = rec.get("delta")
        body = make_body(balls, tolerances, delta=None if delta is None else float(delta),
                         witness_pole=pole)
    except (KeyError, TypeError, ValueError, GeometryError) as exc:
        raise InvalidBodyFile(f"invalid body: {exc}") from None
    if len(body.balls) != len(balls):
        raise InvalidBodyFile("body file lists redundant balls")
    return body


def atomic_write(path, text):
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = os.fspath(path)
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_body(body, path):
    atomic_write(path, body_to_text(body))


def load_body(path, tolerances=None):
    with open(path) as fh:
        return body_from_text(fh.read(), tolerances)


def points_to_text(points, **meta):
    rec = {"format": POINTS_FORMAT}
    rec.update(meta)
    head = json.dumps(rec)[:-1]
    body = ",\n".join("    " + _vec(p) for p in np.atleast_2d(points))
    return head + ',\n  "points": [\n' + body + "\n  ]\n}\n"


def save_points(points, path, **meta):
    atomic_write(path, points_to_text(points, **meta))


def load_points(path):
    with open(path) as fh:
        try:
            rec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidBodyFile(f"not JSON: {exc}") from None
    if rec.get("format") != POINTS_FORMAT:
        raise InvalidBodyFile(f"expected format {POINTS_FORMAT!r}")
    pts = np.array(rec["points"], dtype=float).reshape(-1, 3)
    return pts, {k: v for k, v in rec.items() if k not in ("format", "points")}


def save_reports(reports, path):
    atomic_write(path, json.dumps([r.to_record() for r in reports], indent=2) + "\n")


__all__ = ["body_to_text", "body_from_text", "save_body", "load_body", "save_points",
           "load_points", "save_reports", "atomic_write"]
