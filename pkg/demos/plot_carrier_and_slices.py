"""
Rendering the carrier
=====================

The graph of the self-affine function is drawn from its exact breakpoint
polyline; overlays mark a slice line and the points found on it.
"""

import pathlib
from fractions import Fraction

from qslice import AlgebraicNumber, RenderSpec, compute_slice, project_ternary, render_kq

q = AlgebraicNumber.from_rational(Fraction(5, 3))
y = Fraction(3, 8)

# locate the slice points first so we can mark them
res = compute_slice(q, y, 30)
markers = []
for w in res.cylinders:
    lo = project_ternary(w)
    markers.append((lo, y))
print("marking", len(markers), "slice points at height", y)

spec = RenderSpec(
    width=720,
    height=720,
    iterations=8,
    slice_height=y,
    markers=tuple(markers),
)
svg = render_kq(q, spec)

out = pathlib.Path("carrier.svg")
out.write_text(svg)
print("wrote", out, f"({len(svg)} bytes)")

# iterations=0 is the degenerate diagonal; useful as a sanity picture
flat = render_kq(q, RenderSpec(iterations=0, width=240, height=240))
pathlib.Path("carrier_diagonal.svg").write_text(flat)
print("wrote carrier_diagonal.svg")
