"""Orthographic SVG figures of ball polygons."""

from dataclasses import dataclass

import numpy as np

from .body import support_min
from .core import normalize, tangent_frame
from .errors import BackHemisphere


@dataclass
class RenderSpec:
    view_pole: np.ndarray = None
    image_size: int = 512
    stroke: str = "#1d3557"
    stroke_width: float = 1.5
    fill: str = "#a8dadc"
    fill_opacity: float = 0.5
    vertex_color: str = "#e63946"
    vertex_radius: float = 2.5
    horizon: str = "#999999"


def project_orthographic(x, view_pole):
    """Coordinates of ``x`` in the tangent plane frame at ``view_pole``."""
    x = np.asarray(x, dtype=float)
    v = normalize(view_pole)
    if np.any(x @ v < -1e-12):
        raise BackHemisphere("point lies on the far side of the view hemisphere")
    e1, e2 = tangent_frame(v)
    return np.stack([x @ e1, x @ e2], axis=-1)


def render_svg(bodies, spec=None):
    """SVG document drawing ``bodies`` (one body or a list) on the view disk."""
    if not isinstance(bodies, (list, tuple)):
        bodies = [bodies]
    spec = spec or RenderSpec()
    pole = spec.view_pole if spec.view_pole is not None else bodies[0].witness_pole
    pole = normalize(pole)
    for b in bodies:
        if support_min(b, pole)[0] <= 0.0:
            raise BackHemisphere("body is not entirely on the visible hemisphere")
    size = spec.image_size
    half = 0.5 * size
    scale = 0.48 * size

    def xy(p):
        q = project_orthographic(p, pole)
        return half + scale * q[..., 0], half - scale * q[..., 1]

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<circle cx="{half:.2f}" cy="{half:.2f}" r="{scale:.2f}" fill="none" '
           f'stroke="{spec.horizon}" stroke-width="1"/>']
    for b in bodies:
        step = 0.5 * b.tolerances.h
        pts = np.concatenate([a.sample(step) for a in b.arcs])
        X, Y = xy(pts)
        d = "M " + " L ".join(f"{x:.2f} {y:.2f}" for x, y in zip(X, Y)) + " Z"
        out.append(f'<path d="{d}" fill="{spec.fill}" fill-opacity="{spec.fill_opacity}" '
                   f'stroke="{spec.stroke}" stroke-width="{spec.stroke_width}"/>')
        if len(b.vertices):
            VX, VY = xy(b.vertices)
            out.extend(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{spec.vertex_radius}" '
                       f'fill="{spec.vertex_color}"/>' for x, y in zip(VX, VY))
    out.append("</svg>")
    return "\n".join(out) + "\n"
