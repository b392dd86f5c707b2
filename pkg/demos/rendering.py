"""
Drawing bodies
==============

Orthographic SVG views.  The view pole defaults to the witness pole of the
first body, whose open hemisphere contains everything drawn.
"""

# %%
from pathlib import Path

import numpy as np

from sball import RenderSpec, reuleaux_odd_gon, render_svg
from sball.generators import lens

OUT = Path(__file__).with_name("output")
OUT.mkdir(exist_ok=True)

# %%
bodies = [reuleaux_odd_gon(k, 1.2) for k in (3, 5, 7)]
(OUT / "reuleaux_family.svg").write_text(render_svg(bodies))

# %% [markdown]
# A tilted view of a lens.

# %%
view = np.array([0.4, 0.2, 1.0]) / np.linalg.norm([0.4, 0.2, 1.0])
svg = render_svg(lens(1.0), RenderSpec(view_pole=view, image_size=400, fill="#f4a261"))
(OUT / "lens.svg").write_text(svg)
print(sorted(p.name for p in OUT.glob("*.svg")))
