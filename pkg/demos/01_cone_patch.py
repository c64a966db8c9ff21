"""
Cone patches and the area-preserving shear
==========================================

The unit-area regular hexagonal tiling, cut to a 60 degree cone around one
hexagon edge, consists of a small triangle, whole hexagons, and half
hexagons lying along the two rays.  A diagonal unit-determinant map narrows
the cone to any smaller angle without changing a single tile area.
"""
import math

from hextiling import apply_map, base_cone_patch, shear_map
from hextiling.geometry import polygon_area

patch = base_cone_patch(rings=3)
print("apex triangle area:", polygon_area(patch.apex_triangle))
print("hexagons:", len(patch.hexagons), " half-hexagons per ray:", len(patch.trapezoids_l1))

# %%
# Narrow the cone to 30 degrees.  The shear scales x by 1/lambda and y by
# lambda, so areas are untouched.
m = shear_map(math.pi / 6)
print("shear matrix:\n", m)
narrow = apply_map(patch, m)
print("new apex angle (deg):", math.degrees(narrow.cone.alpha))
for kind, tile in narrow.tiles()[:4]:
    print(f"  {kind:14s} area {polygon_area(tile):.15f}")

# %%
# The first ray vertices sit at distance r from the apex; in the narrow cone
# this is the leg of an isosceles triangle of area 1/6.
r = math.hypot(*narrow.ray_vertices_l1[0])
print("r =", r, " 0.5 r^2 sin(alpha) =", 0.5 * r * r * math.sin(narrow.cone.alpha))
