"""
Reuleaux polygons and the width of a body
=========================================

A spherical Reuleaux k-gon (k odd) is the intersection of the balls of
radius delta centered at the vertices of a regular k-gon whose long
diagonals have length delta.  Every supporting hemisphere of it determines
the same width.  A geodesic triangle of side delta does not.
"""

# %%
import math
from pathlib import Path

import numpy as np

from sball import (diameter, lens, min_width, reuleaux_odd_gon, semicircle_centers,
                   width_profile, contains)
from sball.generators import geodesic_triangle

OUT = Path(__file__).with_name("output")
OUT.mkdir(exist_ok=True)

# %% [markdown]
# Build a Reuleaux pentagon of width 1.2 around the north pole and look at
# its boundary: five arcs of radius 1.2 meeting at the five vertices.

# %%
body = reuleaux_odd_gon(5, 1.2)
print(body)
for arc in body.arcs:
    print(f"  arc radius {arc.radius:.3f}, length {arc.length:.4f}")
print("diameter", diameter(body)[0])

# %% [markdown]
# The width profile walks the closed curve of poles of supporting
# hemispheres.  For a body of constant width every entry is 1.2.

# %%
prof = width_profile(body)
print(f"{len(prof)} supporting hemispheres, width in "
      f"[{prof.widths.min():.9f}, {prof.widths.max():.9f}]")
prof.to_csv(OUT / "reuleaux5_width.csv")

# %% [markdown]
# Now two bodies that are not of constant width.  The lens is two balls of
# radius delta with centers delta apart; the triangle has geodesic edges.

# %%
for name, b in [("lens", lens(1.0)), ("triangle", geodesic_triangle(1.0))]:
    p = width_profile(b)
    w, lune = min_width(b)
    print(f"{name:9s} width range [{p.widths.min():.4f}, {p.widths.max():.4f}]  "
          f"min width {w:.4f}  diameter {diameter(b)[0]:.4f}")

# %% [markdown]
# The minimal lune of a constant-width body has both semicircle centers in
# the body.  The two values below are signed margins, so zero means the
# center sits on the boundary.

# %%
w, lune = min_width(body)
m = np.array(semicircle_centers(lune))
print("minimal width", w)
print("semicircle center margins", contains(body, m))
print("pole angle", math.degrees(math.acos(lune.pole_g @ lune.pole_h)), "degrees")
