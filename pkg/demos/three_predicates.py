"""
Complete, constant width, constant diameter
===========================================

For bodies of diameter delta < pi/2 on the sphere these three properties
coincide.  Here we run the three sampled predicates side by side on a small
gallery and check that they agree, including on two bodies that fail.
"""

# %%
from sball import (CompletionConfig, cap_body, complete, is_complete, is_constant_diameter,
                   is_constant_width, lens, random_cap_points, reuleaux_odd_gon)
from sball.completeness import piece_report, check_piece_containment
from sball.generators import NORTH, geodesic_triangle

TOL = 0.03

gallery = [
    ("Reuleaux 3-gon", reuleaux_odd_gon(3, 1.0), 1.0),
    ("Reuleaux 7-gon", reuleaux_odd_gon(7, 1.4), 1.4),
    ("cap of radius 0.25", cap_body(0.25), 0.5),
    ("completion", complete(random_cap_points(2, NORTH, 0.15, 0.5, 3),
                            CompletionConfig(0.5)), 0.5),
    ("lens", lens(1.0), 1.0),
    ("geodesic triangle", geodesic_triangle(1.4), 1.4),
]

# %%
print(f"{'body':20s} {'complete':>10s} {'width':>10s} {'diameter':>10s}")
for name, body, delta in gallery:
    reps = [f(body, delta, TOL) for f in (is_complete, is_constant_width, is_constant_diameter)]
    cells = [f"{r.worst_margin:+.4f}{'' if r.passed else '*'}" for r in reps]
    print(f"{name:20s} " + " ".join(f"{c:>10s}" for c in cells))
print("(* = fails at tol 0.03; the numbers are worst margins)")

# %% [markdown]
# Pieces of circles: for a, b in a complete body and c at distance delta
# from both, the arc about c from a to b stays inside.  For the triangle,
# the arc through two vertices about the third bulges out.

# %%
print(piece_report(reuleaux_odd_gon(3, 1.0), 1.0, n=50, tol=TOL).summary())
tri = geodesic_triangle(1.0)
u, v, w = tri.vertices
print(check_piece_containment(tri, u, v, w, 1.0, TOL).summary())
