"""
A hexagon tiling with exactly k irregular vertices
==================================================

Build G_4, check it with the independent verifier and draw it with the
four T-joints marked.
"""
from pathlib import Path

from hextiling import assemble_gk, full_report, modify_to_G, apply_map, base_cone_patch, shear_map
from hextiling.files import render_svg, write_tiling

k = 4

# %%
# The single-cone modification first: the apex triangle doubles its area and
# the second ray vertex slides to keep the neighbouring hexagon at area one.
import math

cone = apply_map(base_cone_patch(4), shear_map(2 * math.pi / (3 * k)))
g, data = modify_to_G(cone)
print("pentagon area (must exceed 4/3):", data.pentagon_area)
print("slide along the ray:", data.t, "of at most", data.t_max)

# %%
# Rotate 3k copies, glue the half hexagons across the rays and cut the
# central 3k-gon into k hexagons.
patch = assemble_gk(k, rings=4)
report = full_report(patch)
print("tiles:", report.tile_count, " core radius:", round(report.core_radius, 3))
print("irregular vertices:", report.irregular_count)
for inc in report.irregular_vertices:
    print("  at", tuple(round(c, 6) for c in inc.location), "inside edge", inc.edges_containing_interior)
print("prototiles:", report.prototile_count, " total index:", report.total_index)
print("Akopyan bound:", round(report.akopyan_bound, 3), "satisfied:", report.bound_satisfied)

# %%
# Save the tiling and an SVG with the T-joints highlighted.
out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)
write_tiling(patch, out / "g4.json")
(out / "g4.svg").write_text(render_svg(patch, [inc.location for inc in report.irregular_vertices]))
print("wrote", out / "g4.svg")
