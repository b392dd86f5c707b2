"""Convex bodies on the sphere S^2 as intersections of balls.

Diameter, width and lune computations for ball polygons, delta-hulls,
greedy completion to diameter delta, and sampled predicates for
completeness, constant width and constant diameter.
"""

from .core import (DEFAULT_TOL, Ball, Tolerances, antipode, circle_intersections, distance,
                   frame_point, geodesic_point, normalize)
from .body import (BallPolygon, CircleArc, contains, diameter, enclosing_hemisphere,
                   farthest_distance, make_body, sample_boundary, support_min)
from .width import (Lune, WidthProfile, is_constant_width, lune_thickness, min_width,
                    semicircle_centers, width_at, width_profile)
from .completeness import (CompletionConfig, VerificationReport, check_piece_containment,
                           complete, delta_hull, is_complete, is_constant_diameter,
                           piece_of_circle)
from .generators import (cap_body, geodesic_polygon, geodesic_triangle, lens,
                         random_cap_points, reuleaux_odd_gon)
from .render import RenderSpec, project_orthographic, render_svg

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL", "Ball", "Tolerances", "antipode", "circle_intersections", "distance",
    "frame_point", "geodesic_point", "normalize",
    "BallPolygon", "CircleArc", "contains", "diameter", "enclosing_hemisphere",
    "farthest_distance", "make_body", "sample_boundary", "support_min",
    "Lune", "WidthProfile", "is_constant_width", "lune_thickness", "min_width",
    "semicircle_centers", "width_at", "width_profile",
    "CompletionConfig", "VerificationReport", "check_piece_containment", "complete",
    "delta_hull", "is_complete", "is_constant_diameter", "piece_of_circle",
    "cap_body", "geodesic_polygon", "geodesic_triangle", "lens", "random_cap_points",
    "reuleaux_odd_gon", "RenderSpec", "project_orthographic", "render_svg",
]
